#include "doctest.h"

#include <cmath>
#include <random>

#include "fockcalc/mixed_norm.hpp"
#include "fockcalc/random_fields.hpp"

using namespace fockcalc;

namespace {
const double kPi = std::acos(-1.0);

GridField unit_cube_indicator(int axes, double R, double h) {
  // Half-open cube: the lattice Riemann sum then counts each cell once.
  return GridField::sample(axes, axes, R, h, [](std::span<const double> x) {
    for (double v : x)
      if (v < 0.0 || v >= 1.0) return cplx{0.0, 0.0};
    return cplx{1.0, 0.0};
  });
}
}  // namespace

TEST_CASE("volume of the unit cube under the all-ones exponent") {
  const double h = 0.125;
  const GridField F = unit_cube_indicator(2, 2.0, h);
  const double v = mixed_norm(F, MixedNormSpec::uniform(2, 1.0));
  CHECK(std::abs(v - 1.0) < 2.0 * h);
}

TEST_CASE("mixed (1, inf) norm of the cube") {
  const double h = 0.125;
  const GridField F = unit_cube_indicator(2, 2.0, h);
  MixedNormSpec spec;
  spec.n = 2;
  spec.p = {1.0, kInf};
  const double v = mixed_norm(F, spec);
  CHECK(std::abs(v - 1.0) < 2.0 * h);
}

TEST_CASE("zero field has zero norm") {
  GridField F(1, 2, 2.0, 0.5);
  CHECK(mixed_norm(F, MixedNormSpec::uniform(2, 2.0)) == 0.0);
}

TEST_CASE("all-sup norm equals the grid max exactly") {
  GridField F(1, 2, 2.0, 0.5);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double expect = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    F[k] = cplx{u(rng), u(rng)};
    expect = std::max(expect, std::abs(F[k]));
  }
  CHECK(mixed_norm(F, MixedNormSpec::uniform(2, kInf)) == expect);
}

TEST_CASE("dual of the dual returns the exponents") {
  MixedNormSpec spec;
  spec.n = 4;
  spec.p = {1.0, 2.0, 4.0, kInf};
  const MixedNormSpec dd = spec.dual().dual();
  for (int k = 0; k < 4; ++k) {
    if (spec.p[k] == kInf)
      CHECK(dd.p[k] == kInf);
    else
      CHECK(dd.p[k] == doctest::Approx(spec.p[k]).epsilon(1e-12));
  }
}

TEST_CASE("norm spec parsing") {
  const MixedNormSpec a = norm_spec_from_string(4, "p=2,2,1,inf;E=I");
  CHECK(a.p[3] == kInf);
  CHECK(a.p[2] == 1.0);
  const MixedNormSpec b = norm_spec_from_string(2, "Lpq(2,1)");
  CHECK(b.p[0] == 2.0);
  CHECK(b.p[1] == 1.0);
  const MixedNormSpec c = norm_spec_from_string(2, "Lpq*(2,1)");
  CHECK(!c.identity_basis());
  CHECK_THROWS(norm_spec_from_string(4, "p=2,2;E=I"));
}

TEST_CASE("iterated orders against a hand-rolled oracle") {
  // Non-separable profile, so the two iteration orders genuinely differ.
  auto f = [](double x, double xi) {
    return std::exp(-0.5 * (x - xi) * (x - xi) - 0.25 * xi * xi);
  };
  const double R = 6.0, h = 0.125;
  const GridField F = GridField::sample(1, 2, R, h, [&](std::span<const double> p) {
    return cplx{f(p[0], p[1]), 0.0};
  });
  const int n = F.nodes_per_axis();
  const double p = 1.0, q = 2.0;

  // Oracle: inner x with p then outer xi with q, and the reversed order.
  double plain_expect = 0.0, star_expect = 0.0;
  for (int j = 0; j < n; ++j) {
    double inner = 0.0;
    for (int i = 0; i < n; ++i) inner += std::pow(f(F.coord(i), F.coord(j)), p) * h;
    plain_expect += std::pow(std::pow(inner, 1.0 / p), q) * h;
  }
  plain_expect = std::pow(plain_expect, 1.0 / q);
  for (int i = 0; i < n; ++i) {
    double inner = 0.0;
    for (int j = 0; j < n; ++j) inner += std::pow(f(F.coord(i), F.coord(j)), q) * h;
    star_expect += std::pow(std::pow(inner, 1.0 / q), p) * h;
  }
  star_expect = std::pow(star_expect, 1.0 / p);

  CHECK(mixed_norm(F, MixedNormSpec::lpq(1, p, q)) ==
        doctest::Approx(plain_expect).epsilon(1e-10));
  CHECK(mixed_norm(F, MixedNormSpec::lpq_star(1, p, q)) ==
        doctest::Approx(star_expect).epsilon(1e-10));
  CHECK(plain_expect != doctest::Approx(star_expect).epsilon(1e-3));
}

TEST_CASE("non-invertible basis matrix is rejected") {
  GridField F(1, 2, 2.0, 0.5);
  MixedNormSpec spec = MixedNormSpec::uniform(2, 2.0);
  spec.T = {1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS(mixed_norm(F, spec));
}

TEST_CASE("symplectic basis checks") {
  SUBCASE("standard basis is symplectic and phase split") {
    const std::vector<std::vector<double>> e = {{1.0, 0.0}};
    const std::vector<std::vector<double>> eps = {{0.0, 1.0}};
    const auto rep = symplectic_check(e, eps);
    CHECK(rep.symplectic);
    CHECK(rep.phase_split);
  }
  SUBCASE("swapped pair flips the sign") {
    const std::vector<std::vector<double>> e = {{0.0, 1.0}};
    const std::vector<std::vector<double>> eps = {{1.0, 0.0}};
    const auto rep = symplectic_check(e, eps);
    CHECK(!rep.symplectic);
  }
  SUBCASE("scaling breaks the pairing") {
    const std::vector<std::vector<double>> e = {{2.0, 0.0}};
    const std::vector<std::vector<double>> eps = {{0.0, 1.0}};
    CHECK(!symplectic_check(e, eps).symplectic);
  }
  SUBCASE("d=2 standard basis") {
    const std::vector<std::vector<double>> e = {{1, 0, 0, 0}, {0, 1, 0, 0}};
    const std::vector<std::vector<double>> eps = {{0, 0, 1, 0}, {0, 0, 0, 1}};
    const auto rep = symplectic_check(e, eps);
    CHECK(rep.symplectic);
    CHECK(rep.phase_split);
  }
}

TEST_CASE("windowed-norm of the ground state is its L2 norm") {
  const auto rule = QuadratureRule::gauss_hermite(32);
  const RealFn phi = [](std::span<const double> y) {
    return cplx{std::pow(kPi, -0.25) * std::exp(-0.5 * y[0] * y[0]), 0.0};
  };
  const double v = modulation_norm(phi, 1, MixedNormSpec::uniform(2, 2.0),
                                   WeightFn::one(2), 6.0, 0.25, rule);
  CHECK(std::abs(v - 1.0) < 1e-3);
}

TEST_CASE("windowed-norm scales linearly in the weight") {
  const auto rule = QuadratureRule::gauss_hermite(24);
  const RealFn phi = [](std::span<const double> y) {
    return cplx{std::exp(-0.7 * y[0] * y[0]), 0.0};
  };
  const WeightFn one = WeightFn::one(2);
  WeightFn two{2, [](std::span<const double>) { return 2.0; }, std::nullopt};
  const auto spec = MixedNormSpec::lpq(1, 2.0, 1.0);
  const double a = modulation_norm(phi, 1, spec, one, 5.0, 0.25, rule);
  const double b = modulation_norm(phi, 1, spec, two, 5.0, 0.25, rule);
  CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-12));
  const double z = modulation_norm([](std::span<const double>) { return cplx{0.0, 0.0}; },
                                   1, spec, one, 5.0, 0.25, rule);
  CHECK(z == 0.0);
}

TEST_CASE("entire-side norm of the constant equals one") {
  CoeffArray F(TruncationSpec(1, 2), BasisTag::fock);
  F.set(MultiIndex({0}), cplx{1.0, 0.0});
  const double v = fock_norm(F, MixedNormSpec::uniform(2, 2.0), WeightFn::one(2), 8.0, 0.25);
  CHECK(std::abs(v - 1.0) < 1e-3);
  CoeffArray Z(TruncationSpec(1, 2), BasisTag::fock);
  CHECK(fock_norm(Z, MixedNormSpec::uniform(2, 2.0), WeightFn::one(2), 8.0, 0.25) == 0.0);
}

TEST_CASE("windowed and entire-side norms agree on bandlimited input") {
  const auto rule = QuadratureRule::gauss_hermite(36);
  std::mt19937_64 rng(9);
  const CoeffArray c = random_coeff(TruncationSpec(1, 8), BasisTag::hermite, rng, 0.5);
  const RealFn f = [&](std::span<const double> y) { return hermite_synthesize(c, y); };
  for (const auto& spec :
       {MixedNormSpec::uniform(2, 2.0), MixedNormSpec::lpq(1, 4.0, 2.0),
        MixedNormSpec::lpq_star(1, 2.0, 1.0)}) {
    const double m = modulation_norm(f, 1, spec, WeightFn::one(2), 8.0, 0.25, rule);
    const double a = fock_norm(bargmann_coeff(c), spec, WeightFn::one(2), 8.0, 0.25);
    CHECK(m == doctest::Approx(a).epsilon(1e-3));
  }
}

TEST_CASE("closed-form p-norm route agrees with the pullback route") {
  std::mt19937_64 rng(31);
  const CoeffArray F = random_coeff(TruncationSpec(1, 6), BasisTag::fock, rng, 0.5);
  for (const double p : {1.0, 2.0, 4.0}) {
    const double via_pullback =
        fock_norm(F, MixedNormSpec::uniform(2, p), WeightFn::one(2), 8.0, 0.25);
    const double closed = b_norm_closed_form(F, p, WeightFn::one(2), 8.0, 0.25);
    CHECK(via_pullback == doctest::Approx(closed).epsilon(1e-4));
  }
}

TEST_CASE("norms contract as exponents grow on gaussian mixtures") {
  const auto rule = QuadratureRule::gauss_hermite(36);
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    CoeffArray c = random_coeff(TruncationSpec(1, 6), BasisTag::hermite, rng, 0.6);
    const RealFn f = [&](std::span<const double> y) { return hermite_synthesize(c, y); };
    const GridField V = stft_gaussian(f, 1, 8.0, 0.25, rule);
    double prev = kInf;
    for (const double p : {1.0, 2.0, 4.0}) {
      const double v = modulation_norm_field(V, MixedNormSpec::uniform(2, p), WeightFn::one(2));
      CHECK(v <= prev * (1.0 + 1e-3));
      prev = v;
    }
  }
}

TEST_CASE("exponents below one are rejected") {
  GridField F(1, 2, 2.0, 0.5);
  MixedNormSpec spec = MixedNormSpec::uniform(2, 0.5);
  CHECK_THROWS(mixed_norm(F, spec));
}
