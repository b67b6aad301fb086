#include "doctest.h"

#include <cmath>
#include <random>

#include "fockcalc/random_fields.hpp"
#include "fockcalc/realpdo.hpp"

using namespace fockcalc;

namespace {
const double kPi = std::acos(-1.0);

// Gaussian-damped test function with a closed-form derivative.
GridField damped_input(double R, double h, double width = 1.0, double shift = 0.3) {
  return GridField::sample(1, 1, R, h, [width, shift](std::span<const double> y) {
    const double t = (y[0] - shift) / width;
    return cplx{std::exp(-0.5 * t * t), 0.0};
  });
}

SymbolField unit_symbol(double R, double h) {
  return SymbolField::from_callable(1, R, h,
                                    [](std::span<const double>) { return cplx{1.0, 0.0}; });
}
}  // namespace

TEST_CASE("identity symbol reproduces the input") {
  const GridField f = damped_input(9.0, 0.25);
  const SymbolField one = unit_symbol(8.0, 0.25);
  const GridField out = op_a_apply(one, {}, f);
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k)
    worst = std::max(worst, std::abs(out[k] - f[k]));
  CHECK(worst < 1e-6);
}

TEST_CASE("frequency symbol differentiates") {
  const double width = 1.0, shift = 0.3;
  const GridField f = damped_input(9.0, 0.25, width, shift);
  const SymbolField xi = SymbolField::from_callable(
      1, 8.0, 0.25, [](std::span<const double> p) { return cplx{p[1], 0.0}; });
  const GridField out = op_a_apply(xi, {}, f);
  double worst = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    double y[1];
    f.node_point(k, y);
    const double t = (y[0] - shift) / width;
    const cplx expect = cplx{0.0, 1.0} * (t / width) * std::exp(-0.5 * t * t);  // -i f'
    worst = std::max(worst, std::abs(out[k] - expect));
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("zero input maps to zero") {
  GridField f(1, 1, 9.0, 0.25);
  const SymbolField one = unit_symbol(8.0, 0.25);
  const GridField out = op_a_apply(one, {}, f);
  for (std::size_t k = 0; k < out.size(); ++k) CHECK(out[k] == cplx{0.0, 0.0});
}

TEST_CASE("undamped frequency content is rejected") {
  const GridField f = damped_input(9.0, 0.25);
  // Symbol growth in xi beating the spectral decay of f keeps mass on the
  // hull edge.
  const SymbolField grow = SymbolField::from_callable(
      1, 8.0, 0.25, [](std::span<const double> p) {
        return cplx{std::exp(0.6 * p[1] * p[1]), 0.0};
      });
  CHECK_THROWS(op_a_apply(grow, {}, f));
}

TEST_CASE("kernel route matches the direct route") {
  const GridField f = damped_input(9.0, 0.25);
  const SymbolField a = SymbolField::gaussian(1, 8.0, 0.25, std::vector<double>{0.2, -0.1},
                                              std::vector<double>{1.2, 1.5});
  for (const QuantMatrix& A : {QuantMatrix{}, QuantMatrix{0.5}}) {
    const GridField direct = op_a_apply(a, A, f);
    // Riemann integral of K(x,y) f(y) dy on the same lattice.
    double worst = 0.0;
    for (int i = 0; i < f.nodes_per_axis(); i += 4) {
      const double x[1] = {f.coord(i)};
      cplx acc{0.0, 0.0};
      for (int j = 0; j < f.nodes_per_axis(); ++j) {
        const double y[1] = {f.coord(j)};
        const int idx[1] = {j};
        acc += kernel_of_symbol_point(a, A, x, y) * f.at(idx);
      }
      acc *= f.step();
      const int xi[1] = {i};
      worst = std::max(worst, std::abs(acc - direct.at(xi)));
    }
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("separable symbols factor the kernel") {
  // a(x, xi) = g(x) m(xi) gives K(x,y) = (2 pi)^{-1/2} g(x - A(x-y)) (F^{-1}m)(x-y).
  const double sg = 1.3;
  const SymbolField a = SymbolField::from_callable(
      1, 8.0, 0.25, [sg](std::span<const double> p) {
        return cplx{std::exp(-0.5 * p[0] * p[0]) * std::exp(-0.5 * sg * p[1] * p[1]), 0.0};
      });
  // F^{-1}[e^{-sg xi^2/2}](u) = sg^{-1/2} e^{-u^2/(2 sg)}.
  const double x[1] = {0.6}, y[1] = {-0.4};
  const cplx got = kernel_of_symbol_point(a, {}, x, y);
  const double u = x[0] - y[0];
  const double expect = std::pow(2.0 * kPi, -0.5) * std::exp(-0.5 * x[0] * x[0]) *
                        std::pow(sg, -0.5) * std::exp(-u * u / (2.0 * sg));
  CHECK(std::abs(got - cplx{expect, 0.0}) < 1e-10);

  SUBCASE("zero symbol gives the zero kernel") {
    const SymbolField z = SymbolField::from_callable(
        1, 6.0, 0.25, [](std::span<const double>) { return cplx{0.0, 0.0}; });
    const GridField K = kernel_of_symbol(z, {}, 3.0, 0.5);
    for (std::size_t k = 0; k < K.size(); ++k) CHECK(K[k] == cplx{0.0, 0.0});
  }
}

TEST_CASE("multiplier calculus") {
  const SymbolField a = SymbolField::gaussian(1, 8.0, 0.125, std::vector<double>{0.0, 0.0},
                                              std::vector<double>{1.0, 1.4});
  SUBCASE("equal matrices change nothing") {
    const SymbolField out = calculi_transform(a, QuantMatrix{0.5}, QuantMatrix{0.5});
    double worst = 0.0;
    for (std::size_t k = 0; k < out.grid.size(); ++k)
      worst = std::max(worst, std::abs(out.grid[k] - a.grid[k]));
    CHECK(worst < 1e-10);
  }
  SUBCASE("frequency-independent symbols are fixed points") {
    const SymbolField ax = SymbolField::from_callable(
        1, 8.0, 0.125, [](std::span<const double> p) {
          return cplx{std::exp(-0.5 * p[0] * p[0]), 0.0};
        });
    const SymbolField out = calculi_transform(ax, {}, QuantMatrix{0.5});
    double worst = 0.0;
    for (std::size_t k = 0; k < out.grid.size(); ++k)
      worst = std::max(worst, std::abs(out.grid[k] - ax.grid[k]));
    CHECK(worst < 1e-8);
  }
  SUBCASE("round trip is the identity") {
    const SymbolField there = calculi_transform(a, {}, QuantMatrix{0.5});
    const SymbolField back = calculi_transform(there, QuantMatrix{0.5}, {});
    double worst = 0.0;
    for (std::size_t k = 0; k < back.grid.size(); ++k)
      worst = std::max(worst, std::abs(back.grid[k] - a.grid[k]));
    CHECK(worst < 1e-8);
  }
  SUBCASE("aliasing content is rejected") {
    // A pure fast oscillation parks its spectrum at the lattice edge.
    const SymbolField osc = SymbolField::from_callable(
        1, 8.0, 0.125, [](std::span<const double> p) {
          const double nyq = kPi / 0.125;
          return std::polar(1.0, 0.98 * nyq * p[0]) * std::exp(-0.01 * p[0] * p[0]);
        });
    CHECK_THROWS(calculi_transform(osc, {}, QuantMatrix{0.5}));
  }
}

TEST_CASE("quantization covariance through the multiplier") {
  // f lives inside the symbol hull so the sheared reads stay on the
  // refined lattice.
  const GridField f = damped_input(8.0, 0.25);
  const SymbolField a1 = SymbolField::gaussian(1, 8.0, 0.125, std::vector<double>{0.3, 0.2},
                                               std::vector<double>{1.1, 1.3});
  const SymbolField a2 = calculi_transform(a1, {}, QuantMatrix{0.5});
  const GridField lhs = op_a_apply(a1, {}, f);
  const GridField rhs = op_a_apply(a2, QuantMatrix{0.5}, f);
  double worst = 0.0;
  for (std::size_t k = 0; k < lhs.size(); ++k)
    worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
  CHECK(worst < 1e-5);
}

TEST_CASE("transfer identity between kernel and symbol transforms") {
  std::vector<std::pair<cplx, cplx>> probes;
  for (double a = -1.0; a <= 1.0; a += 1.0)
    for (double b = -1.0; b <= 1.0; b += 1.0)
      probes.emplace_back(cplx{a, 0.5 * b}, cplx{b, -0.5 * a});

  SUBCASE("plain gaussian symbol") {
    const SymbolField a = SymbolField::gaussian(1, 8.0, 0.125, std::vector<double>{0.0, 0.0},
                                                std::vector<double>{1.0, 1.0});
    CHECK(stft_kernel_transfer_check(a, probes) < 1e-6);
  }
  SUBCASE("zero symbol") {
    const SymbolField z = SymbolField::from_callable(
        1, 6.0, 0.25, [](std::span<const double>) { return cplx{0.0, 0.0}; });
    CHECK(stft_kernel_transfer_check(z, probes) == 0.0);
  }
  SUBCASE("gaussian with phase") {
    const SymbolField a = SymbolField::gaussian(1, 8.0, 0.125, std::vector<double>{0.2, -0.3},
                                                std::vector<double>{1.2, 0.9}, 0.4);
    CHECK(stft_kernel_transfer_check(a, probes) < 1e-6);
  }
}

TEST_CASE("two routes to the operator norm agree") {
  const SymbolField a = SymbolField::gaussian(1, 8.0, 0.25, std::vector<double>{0.0, 0.0},
                                              std::vector<double>{1.0, 1.2});
  std::mt19937_64 rng(19);
  std::vector<CoeffArray> ensemble;
  PseudoModConfig cfg;
  cfg.p = kInf;
  cfg.q = 1.0;
  cfg.N = 14;
  for (int e = 0; e < 3; ++e)
    ensemble.push_back(random_coeff(TruncationSpec(1, cfg.N), BasisTag::hermite, rng, 0.6));

  const WeightFn one2 = WeightFn::one(2);
  const WeightFn one4 = WeightFn::one(4);
  const auto rep = pseudo_mod_harness(a, {}, one4, one2, one2, ensemble, cfg);
  CHECK(rep.max_two_path_dev < 1e-4);
  CHECK(std::isfinite(rep.max_ratio));
  CHECK(rep.max_ratio > 0.0);

  SUBCASE("zero symbol zeroes every norm") {
    const SymbolField z = SymbolField::from_callable(
        1, 8.0, 0.25, [](std::span<const double>) { return cplx{0.0, 0.0}; });
    const auto zrep = pseudo_mod_harness(z, {}, one4, one2, one2, ensemble, cfg);
    CHECK(zrep.norm_a == 0.0);
    CHECK(zrep.max_two_path_dev < 1e-12);
  }
  SUBCASE("exponent relation is enforced") {
    PseudoModConfig bad = cfg;
    bad.q = 2.0;
    CHECK_THROWS(pseudo_mod_harness(a, {}, one4, one2, one2, ensemble, bad));
  }
}

TEST_CASE("norms are comparable across quantizations with the shifted weight") {
  // || T_A a || in the shifted-weight norm stays within a constant of the
  // base norm.
  const double Aval = 0.5;
  const SymbolField a = SymbolField::gaussian(1, 8.0, 0.125, std::vector<double>{0.0, 0.0},
                                              std::vector<double>{1.0, 1.1});
  const SymbolField Ta = calculi_transform(a, QuantMatrix{Aval}, {});

  const auto rule = QuadratureRule::gauss_hermite(32);
  const WeightFn omega = WeightFn::polynomial(4, 1.0);
  WeightFn omega_A{4, [Aval, &omega](std::span<const double> p) {
                     const double arg[4] = {p[0] + Aval * p[3], p[1] + Aval * p[2], p[2],
                                            p[3]};
                     return omega(arg);
                   },
                   std::nullopt};

  auto mod_norm = [&](const SymbolField& s, const WeightFn& w) {
    RealFn f;
    const GridField& g = s.grid;
    if (s.eval)
      f = s.eval;
    else
      f = [&g](std::span<const double> pt) {
        return g.contains(pt) ? g.interpolate(pt) : cplx{0.0, 0.0};
      };
    return modulation_norm(f, 2, MixedNormSpec::lpq(2, 2.0, 2.0), w, 5.0, 0.5, rule);
  };
  const double base = mod_norm(a, omega);
  const double shifted = mod_norm(Ta, omega_A);
  CHECK(shifted / base > 0.5);
  CHECK(shifted / base < 2.0);
}

TEST_CASE("hermite product preset evaluates as the tensor factor") {
  const SymbolField a = SymbolField::hermite_symbol(1, 6.0, 0.5, MultiIndex({2}),
                                                    MultiIndex({1}));
  const double pt[2] = {0.7, -0.4};
  const double x[1] = {0.7}, xi[1] = {-0.4};
  CHECK(a.eval(pt).real() ==
        doctest::Approx(hermite_eval(MultiIndex({2}), x) *
                        hermite_eval(MultiIndex({1}), xi)));
  CHECK(a.grid.axes() == 2);
}
