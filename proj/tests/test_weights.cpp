#include "doctest.h"

#include <cmath>
#include <random>

#include "fockcalc/bargmann.hpp"
#include "fockcalc/weights.hpp"

using namespace fockcalc;

TEST_CASE("sequence weight values") {
  SUBCASE("power-exponential with s=1/2 gives e^{r|alpha|}") {
    const auto spec = SeqWeightSpec::power_exp(1.0, 0.5);
    CHECK(seq_weight_eval(spec, MultiIndex({3})) == doctest::Approx(std::exp(3.0)));
  }
  SUBCASE("flat scale r^{|alpha|} (alpha!)^{1/(2 sigma)}") {
    const auto spec = SeqWeightSpec::flat(2.0, 1.0);
    CHECK(seq_weight_eval(spec, MultiIndex({2})) ==
          doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-13));
  }
  SUBCASE("zero index gives 1") {
    CHECK(seq_weight_eval(SeqWeightSpec::power_exp(2.5, 0.8), MultiIndex({0, 0})) == 1.0);
    CHECK(seq_weight_eval(SeqWeightSpec::flat(3.0, 2.0), MultiIndex({0})) == 1.0);
  }
  SUBCASE("nonpositive rate rejected") {
    CHECK_THROWS(seq_weight_eval(SeqWeightSpec::power_exp(-1.0, 0.5), MultiIndex({1})));
  }
}

TEST_CASE("theta is monotone in r for the power-exponential kind") {
  const MultiIndex alpha({4});
  double prev = 0.0;
  for (double r = 0.5; r <= 3.0; r += 0.5) {
    const double v = seq_weight_eval(SeqWeightSpec::power_exp(r, 0.7), alpha);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("kappa envelope values") {
  SUBCASE("flat scale sigma=1 on the first kind") {
    const cplx z[1] = {cplx{1.0, 0.0}};
    CHECK(kappa_eval(KappaKind::k1, 2.0, ScaleIndex::flat_sigma(1.0), z) ==
          doctest::Approx(std::exp(2.0)));
  }
  SUBCASE("s >= 1/2 branch") {
    const cplx z[1] = {cplx{1.0, 1.0}};  // |z|^2 = 2
    const double expect = std::exp(0.5 * 2.0 - 1.5 * std::pow(std::sqrt(2.0), 2.0));
    CHECK(kappa_eval(KappaKind::k1, 1.5, ScaleIndex::real(0.5), z) ==
          doctest::Approx(expect).epsilon(1e-13));
  }
  SUBCASE("origin gives 1") {
    const cplx z[1] = {cplx{0.0, 0.0}};
    CHECK(kappa_eval(KappaKind::k1, 1.0, ScaleIndex::real(1.0), z) == doctest::Approx(1.0));
    CHECK(kappa_eval(KappaKind::k2, 1.0, ScaleIndex::real(1.0), z) == doctest::Approx(1.0));
  }
  SUBCASE("second kind constraints") {
    const cplx z[1] = {cplx{1.0, 0.0}};
    CHECK_THROWS(kappa_eval(KappaKind::k2, 1.0, ScaleIndex::flat_sigma(0.8), z));
    CHECK_THROWS(kappa_eval(KappaKind::k2, 1.0, ScaleIndex::real(0.3), z));
  }
}

TEST_CASE("moderate weights are accepted with a certificate") {
  const WeightFn omega = WeightFn::polynomial(1, 2.0);
  const auto res = moderate_check(omega, omega);
  CHECK(res.accepted);
  CHECK(res.C <= 2.0 + 1e-9);  // Peetre constant
  // Two-sided consequence on the probes: omega(x)/v(y) <= C omega(x+y).
  for (double x = -4.0; x <= 4.0; x += 1.0)
    for (double y = -4.0; y <= 4.0; y += 1.0) {
      const double px[1] = {x}, py[1] = {y}, pxy[1] = {x + y};
      CHECK(omega(px) / omega(py) <= res.C * omega(pxy) * (1.0 + 1e-12));
    }
}

TEST_CASE("quadratic growth against linear dominator is rejected") {
  const auto res = moderate_check(WeightFn::gauss_quadratic(1, 1.0),
                                  WeightFn::exponential(1, 1.0, 1.0));
  CHECK(!res.accepted);
  CHECK(res.per_radius_max.back() > res.per_radius_max.front());
}

TEST_CASE("trivial weight is 1-moderate with C = 1") {
  const auto res = moderate_check(WeightFn::one(1), WeightFn::one(1));
  CHECK(res.accepted);
  CHECK(res.C == doctest::Approx(1.0));
}

TEST_CASE("weight presets parse") {
  const WeightFn w = weight_from_preset(2, "poly:2*exp:0.5:1");
  const double x[2] = {1.0, 0.0};
  CHECK(w(x) == doctest::Approx(2.0 * std::exp(0.5)));
  CHECK_THROWS(weight_from_preset(1, "nope:1"));
}

TEST_CASE("growth classification recovers synthetic families") {
  const TruncationSpec trunc(1, 28);
  const auto idx = enumerate_indices(trunc);

  SUBCASE("exponential model of the power series of e^z") {
    CoeffArray c(trunc, BasisTag::fock);
    for (std::size_t k = 0; k < idx.size(); ++k)
      c[k] = std::exp(-0.5 * log_factorial(idx[k]));
    const auto g = classify_growth(c);
    CHECK(g.family == GrowthClass::Family::flat_decay);
    CHECK(g.parameter == doctest::Approx(1.0).epsilon(0.05));
    CHECK(g.rate == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("delta is a finite expansion") {
    CoeffArray c(trunc, BasisTag::fock);
    c.set(MultiIndex({0}), cplx{1.0, 0.0});
    CHECK(classify_growth(c).family == GrowthClass::Family::finite);
  }
  SUBCASE("plain exponential decay lands on s = 1/2") {
    CoeffArray c(trunc, BasisTag::fock);
    for (std::size_t k = 0; k < idx.size(); ++k)
      c[k] = std::exp(-static_cast<double>(idx[k].degree()));
    const auto g = classify_growth(c);
    CHECK(g.family == GrowthClass::Family::power_exp_decay);
    CHECK(g.parameter == doctest::Approx(0.5).epsilon(0.05));
    CHECK(g.rate == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("rate shift under a theta multiplier") {
  const TruncationSpec trunc(1, 28);
  const auto idx = enumerate_indices(trunc);
  CoeffArray c(trunc, BasisTag::fock);
  for (std::size_t k = 0; k < idx.size(); ++k)
    c[k] = std::exp(-2.0 * idx[k].degree());
  const auto base = classify_growth(c);

  const auto spec = SeqWeightSpec::power_exp(0.75, 0.5);
  CoeffArray lifted = coeff_map(c, [&](const MultiIndex& a, cplx v) {
    return v * seq_weight_eval(spec, a);
  });
  const auto shifted = classify_growth(lifted);
  CHECK(shifted.family == GrowthClass::Family::power_exp_decay);
  CHECK(shifted.rate == doctest::Approx(base.rate - 0.75).epsilon(0.05));
}

TEST_CASE("phase-space decay fit on transform magnitudes") {
  const auto rule = QuadratureRule::gauss_hermite(32);
  SUBCASE("gaussian window transform of the gaussian") {
    const GridField V = stft_gaussian(
        [](std::span<const double> y) {
          return cplx{std::pow(std::acos(-1.0), -0.25) * std::exp(-0.5 * y[0] * y[0]), 0.0};
        },
        1, 6.0, 0.5, rule);
    const auto fit = classify_gs_via_stft(V);
    CHECK(fit.s == doctest::Approx(0.5).epsilon(0.05));
    CHECK(fit.r == doctest::Approx(0.25).epsilon(0.05));
  }
  SUBCASE("hermite input stays in the gaussian family") {
    const GridField V = stft_gaussian(
        [](std::span<const double> y) { return cplx{hermite_eval(MultiIndex({5}), y), 0.0}; },
        1, 8.0, 0.5, rule);
    const auto fit = classify_gs_via_stft(V);
    CHECK(fit.s >= 0.2);
    CHECK(fit.s <= 0.62);
  }
  SUBCASE("zero field has no dynamic range") {
    GridField V(1, 2, 4.0, 0.5);
    CHECK_THROWS(classify_gs_via_stft(V));
  }
}

TEST_CASE("sequence-weight presets parse") {
  const SeqWeightSpec flat = seq_weight_from_preset("flatsig:2:1");
  CHECK(seq_weight_eval(flat, MultiIndex({2})) ==
        doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-13));
  const SeqWeightSpec pe = seq_weight_from_preset("exp:1:0.5");
  CHECK(seq_weight_eval(pe, MultiIndex({3})) == doctest::Approx(std::exp(3.0)));
  CHECK_THROWS(seq_weight_from_preset("flatsig:2"));
  CHECK_THROWS(seq_weight_from_preset("wat:1:2"));
}

TEST_CASE("flat-scale coefficients respect the pointwise envelope") {
  // Coefficients 1/sqrt(alpha!) synthesize to e^z, whose modulus e^{Re z}
  // sits below the sigma = 1 envelope e^{r |z|} with r = 1, touching it on
  // the positive real axis.
  const TruncationSpec trunc(1, 40);
  CoeffArray c(trunc, BasisTag::fock);
  const auto idx = enumerate_indices(trunc);
  for (std::size_t k = 0; k < idx.size(); ++k)
    c[k] = std::exp(-0.5 * log_factorial(idx[k]));

  double worst = 0.0, on_axis = 0.0;
  for (double re = -3.0; re <= 3.0; re += 0.5)
    for (double im = -3.0; im <= 3.0; im += 0.5) {
      const cplx z[1] = {cplx{re, im}};
      const double env = kappa_eval(KappaKind::k1, 1.0, ScaleIndex::flat_sigma(1.0), z);
      const double ratio = std::abs(fock_eval(c, z)) / env;
      worst = std::max(worst, ratio);
      if (im == 0.0 && re > 0.0) on_axis = std::max(on_axis, ratio);
    }
  CHECK(worst <= 1.0 + 1e-9);
  CHECK(on_axis == doctest::Approx(1.0).epsilon(1e-9));
}
