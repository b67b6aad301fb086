#include "doctest.h"

#include <cmath>
#include <random>

#include "fockcalc/apdo.hpp"
#include "fockcalc/bargmann.hpp"
#include "fockcalc/random_fields.hpp"

using namespace fockcalc;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("lower-index transform of the delta gives the diagonal powers") {
  // Closed form: the expansion of e^{t z conj(w)} has t^n on the diagonal.
  const cplx t{0.7, 0.4};
  KernelCoeff c(1, 8, KernelInterp::symbol);
  c.set(MultiIndex({0}), MultiIndex({0}), cplx{1.0, 0.0});
  const KernelCoeff out = t0t_transform(c, t);
  cplx tn{1.0, 0.0};
  for (int n = 0; n <= 8; ++n) {
    CHECK(std::abs(out.at(MultiIndex({n}), MultiIndex({n})) - tn) < 1e-14);
    tn *= t;
  }
  for (int n = 1; n <= 8; ++n)
    CHECK(out.at(MultiIndex({n}), MultiIndex({n - 1})) == cplx{0.0, 0.0});
}

TEST_CASE("t = 0 is the identity") {
  std::mt19937_64 rng(3);
  const KernelCoeff c = random_kernel(1, 10, KernelInterp::symbol, rng, 0.2);
  const KernelCoeff out = t0t_transform(c, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(out.values()[k] == c.values()[k]);
}

TEST_CASE("transform with -t inverts the transform with t") {
  // Error is measured against the roundtrip's own scale: the forward tensor
  // grows like (1+|t|)^{2N}, and that intermediate is what rounding acts on.
  std::mt19937_64 rng(5);
  for (const cplx t : {cplx{1.0, 0.0}, cplx{0.0, 1.0}, cplx{1.0, 0.5}, cplx{-2.0, 0.0}}) {
    const KernelCoeff c = random_kernel(1, 16, KernelInterp::symbol, rng, 0.8);
    const KernelCoeff fwd = t0t_transform(c, t);
    const KernelCoeff back = t0t_transform(fwd, -t);
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      num = std::max(num, std::abs(back.values()[k] - c.values()[k]));
      den = std::max(den, std::max(std::abs(c.values()[k]), std::abs(fwd.values()[k])));
    }
    CHECK(num / den < 1e-12);
  }
}

TEST_CASE("output cells read only dominated input cells") {
  // A single far-corner coefficient cannot reach lower indices.
  KernelCoeff c(1, 6, KernelInterp::symbol);
  c.set(MultiIndex({4}), MultiIndex({3}), cplx{1.0, 0.0});
  const KernelCoeff out = t0t_transform(c, cplx{0.3, 0.3});
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b) {
      if (a - 4 != b - 3) CHECK(out.at(MultiIndex({a}), MultiIndex({b})) == cplx{0.0, 0.0});
      if (a < 4) CHECK(out.at(MultiIndex({a}), MultiIndex({b})) == cplx{0.0, 0.0});
    }
}

TEST_CASE("pointwise check against the exponential multiplier") {
  std::vector<std::pair<cplx, cplx>> probes;
  for (double a = -1.0; a <= 1.0; a += 0.5)
    for (double b = -1.0; b <= 1.0; b += 0.5)
      probes.emplace_back(cplx{a, 0.3 * b}, cplx{b, -0.2 * a});

  SUBCASE("constant symbol") {
    KernelCoeff one(1, 24, KernelInterp::symbol);
    one.set(MultiIndex({0}), MultiIndex({0}), cplx{1.0, 0.0});
    CHECK(tt_pointwise_check(one, cplx{1.0, 0.0}, probes) < 1e-10);
  }
  SUBCASE("t = 0 has no deviation") {
    KernelCoeff one(1, 12, KernelInterp::symbol);
    one.set(MultiIndex({0}), MultiIndex({0}), cplx{1.0, 0.0});
    CHECK(tt_pointwise_check(one, cplx{0.0, 0.0}, probes) == 0.0);
  }
  SUBCASE("monomial factor") {
    KernelCoeff a(1, 24, KernelInterp::symbol);
    a.set(MultiIndex({1}), MultiIndex({0}), cplx{1.0, 0.0});
    CHECK(tt_pointwise_check(a, cplx{1.0, 0.0}, probes) < 1e-10);
  }
  SUBCASE("probes outside the certified window are rejected") {
    KernelCoeff a(1, 8, KernelInterp::symbol);
    a.set(MultiIndex({0}), MultiIndex({0}), cplx{1.0, 0.0});
    const std::pair<cplx, cplx> far[] = {{cplx{5.0, 0.0}, cplx{5.0, 0.0}}};
    CHECK_THROWS(tt_pointwise_check(a, cplx{1.0, 0.0}, far));
  }
}

TEST_CASE("certified radius grows with the truncation") {
  const double r16 = certified_radius(16, 1.0);
  const double r24 = certified_radius(24, 1.0);
  CHECK(r24 > r16);
  CHECK(certified_radius(24, 1.0) > 1.0);  // covers the unit-box probes
  CHECK(certified_radius(24, 2.0) < r24);
}

TEST_CASE("symbol and kernel conversions invert each other") {
  std::mt19937_64 rng(7);
  const KernelCoeff a = random_kernel(1, 12, KernelInterp::symbol, rng, 0.5);
  const KernelCoeff K = symbol_to_kernel(a);
  CHECK(K.interp() == KernelInterp::kernel);
  const KernelCoeff back = kernel_to_symbol(K);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num = std::max(num, std::abs(back.values()[k] - a.values()[k]));
    den = std::max(den, std::max(std::abs(a.values()[k]), std::abs(K.values()[k])));
  }
  CHECK(num / den < 1e-12);

  SUBCASE("constant symbol maps to the diagonal kernel") {
    KernelCoeff one(1, 6, KernelInterp::symbol);
    one.set(MultiIndex({0}), MultiIndex({0}), cplx{1.0, 0.0});
    const KernelCoeff P = symbol_to_kernel(one);
    for (int n = 0; n <= 6; ++n)
      CHECK(std::abs(P.at(MultiIndex({n}), MultiIndex({n})) - cplx{1.0, 0.0}) < 1e-14);
  }
  SUBCASE("zero maps to zero") {
    KernelCoeff z(1, 6, KernelInterp::symbol);
    const KernelCoeff K0 = symbol_to_kernel(z);
    for (std::size_t k = 0; k < K0.size(); ++k) CHECK(K0.values()[k] == cplx{0.0, 0.0});
  }
}

TEST_CASE("diagonal kernel acts as the identity") {
  KernelCoeff P(1, 8, KernelInterp::kernel);
  for (int n = 0; n <= 8; ++n) P.set(MultiIndex({n}), MultiIndex({n}), cplx{1.0, 0.0});
  std::mt19937_64 rng(9);
  const CoeffArray F = random_coeff(TruncationSpec(1, 8), BasisTag::fock, rng, 0.3);
  const CoeffArray out = kernel_apply(P, F);
  for (std::size_t k = 0; k < F.size(); ++k) CHECK(std::abs(out[k] - F[k]) < 1e-15);
}

TEST_CASE("rank-one kernel routes a single coefficient") {
  KernelCoeff K(1, 6, KernelInterp::kernel);
  K.set(MultiIndex({2}), MultiIndex({5}), cplx{1.0, 0.0});
  CoeffArray F(TruncationSpec(1, 6), BasisTag::fock);
  F.set(MultiIndex({5}), cplx{3.0, -1.0});
  const CoeffArray out = kernel_apply(K, F);
  CHECK(out.at(MultiIndex({2})) == cplx{3.0, -1.0});
  double rest = 0.0;
  for (std::size_t k = 0; k < out.size(); ++k)
    if (k != 2) rest += std::abs(out[k]);
  CHECK(rest == 0.0);

  CoeffArray wrong(TruncationSpec(1, 5), BasisTag::fock);
  CHECK_THROWS(kernel_apply(K, wrong));
}

TEST_CASE("contraction matches the integral against the gaussian measure") {
  // Oracle: 2-real-dimensional quadrature of \int K(z,w) F(w) dmu(w).
  const auto rule = QuadratureRule::gauss_hermite(32);
  std::mt19937_64 rng(13);
  const int N = 8;
  for (int trial = 0; trial < 3; ++trial) {
    const KernelCoeff K = random_kernel(1, N, KernelInterp::kernel, rng, 0.5);
    const CoeffArray F = random_coeff(TruncationSpec(1, N), BasisTag::fock, rng, 0.5);
    const CoeffArray out = kernel_apply(K, F);
    for (const cplx z : {cplx{0.5, 0.2}, cplx{-1.0, 0.7}}) {
      const cplx zz[1] = {z};
      const cplx direct = fock_eval(out, zz);
      const cplx quad = reproducing_project(
          [&](std::span<const cplx> w) {
            // K(z,w) = sum c e_a(z) e_b(conj w); the projection already
            // carries e^{(z,w)}, so integrate K against F by splitting off
            // the reproducing factor: \int K(z,w)F(w) dmu =
            // \int [K(z,w) e^{-(z,w)} F(w)] e^{(z,w)} dmu.
            const cplx kv = kernel_coeff_eval(K, zz, w);
            const cplx pairing = z * std::conj(w[0]);
            return kv * std::exp(-pairing) * fock_eval(F, w);
          },
          zz, rule);
      CHECK(std::abs(direct - quad) < 1e-8);
    }
  }
}

TEST_CASE("creation and annihilation act as exact shifts") {
  const int N = 16;
  std::mt19937_64 rng(15);
  const CoeffArray F = random_coeff(TruncationSpec(1, N), BasisTag::fock, rng, 0.2);

  SUBCASE("multiplication by z") {
    KernelCoeff a(1, N, KernelInterp::symbol);
    a.set(MultiIndex({1}), MultiIndex({0}), cplx{1.0, 0.0});
    const CoeffArray out = apdo_apply(a, F);
    for (int n = 0; n <= N - 1; ++n) {
      const cplx expect = std::sqrt(static_cast<double>(n + 1)) * F.at(MultiIndex({n}));
      CHECK(std::abs(out.at(MultiIndex({n + 1})) - expect) < 1e-13);
    }
    CHECK(std::abs(out.at(MultiIndex({0}))) < 1e-15);
  }
  SUBCASE("differentiation") {
    KernelCoeff a(1, N, KernelInterp::symbol);
    a.set(MultiIndex({0}), MultiIndex({1}), cplx{1.0, 0.0});
    const CoeffArray out = apdo_apply(a, F);
    for (int n = 0; n <= N - 1; ++n) {
      const cplx expect = std::sqrt(static_cast<double>(n + 1)) * F.at(MultiIndex({n + 1}));
      CHECK(std::abs(out.at(MultiIndex({n})) - expect) < 1e-13);
    }
  }
  SUBCASE("constant symbol is the identity") {
    KernelCoeff a(1, N, KernelInterp::symbol);
    a.set(MultiIndex({0}), MultiIndex({0}), cplx{1.0, 0.0});
    const CoeffArray out = apdo_apply(a, F);
    for (std::size_t k = 0; k < F.size(); ++k) CHECK(std::abs(out[k] - F[k]) < 1e-13);
  }
}

TEST_CASE("growth envelope checks on probe pairs") {
  std::vector<std::pair<cplx, cplx>> probes;
  for (double a = -1.5; a <= 1.5; a += 0.75)
    for (double b = -1.5; b <= 1.5; b += 0.75)
      probes.emplace_back(cplx{a, b}, cplx{b, a});

  SUBCASE("constant symbol stays below the envelope") {
    KernelCoeff one(1, 20, KernelInterp::symbol);
    one.set(MultiIndex({0}), MultiIndex({0}), cplx{1.0, 0.0});
    const auto rep = gaussian_bound_check(one, 0.5, 0.5, BoundSide::plus, probes);
    CHECK(rep.holds);
    CHECK(rep.worst_ratio <= 1.0 + 1e-12);
  }
  SUBCASE("zero symbol holds vacuously") {
    KernelCoeff z(1, 8, KernelInterp::symbol);
    const auto rep = gaussian_bound_check(z, 0.5, 1.0, BoundSide::minus, probes);
    CHECK(rep.holds);
    CHECK(rep.worst_ratio == 0.0);
  }
  SUBCASE("reproducing factor reports its worst ratio") {
    KernelCoeff one(1, 20, KernelInterp::symbol);
    one.set(MultiIndex({0}), MultiIndex({0}), cplx{1.0, 0.0});
    const KernelCoeff expzw = symbol_to_kernel(one).retagged(KernelInterp::symbol);
    const auto rep = gaussian_bound_check(expzw, 0.5, 0.25, BoundSide::minus, probes);
    CHECK(rep.worst_ratio > 0.0);
    // |e^{(z,w)}| = e^{Re<z,conj w>} <= e^{(|z|^2+|w|^2)/2}; compare to the
    // envelope on the worst probe by hand.
    double worst = 0.0;
    for (const auto& [z, w] : probes) {
      const double num = std::exp((z * std::conj(w)).real());
      const double den = std::exp(0.5 * std::norm(z - w) -
                                  0.25 * (std::abs(z) * std::abs(z) + std::abs(w) * std::abs(w)));
      worst = std::max(worst, num / den);
    }
    CHECK(rep.worst_ratio == doctest::Approx(worst).epsilon(1e-6));
  }
}

TEST_CASE("block matrix conditions") {
  const BlockMatrixC shift = BlockMatrixC::kernel_shift(1);
  CHECK(shift.cond1());
  CHECK(!shift.cond2());
  const BlockMatrixC sym = BlockMatrixC::symbol_shift(1);
  CHECK(!sym.cond1());
  CHECK(sym.cond2());
  const BlockMatrixC split = BlockMatrixC::split_shift(1);
  CHECK(split.cond1());
  CHECK(split.invertible());

  double in[4] = {1.0, 2.0, 3.0, 4.0};
  double out[4];
  shift.apply(in, out);  // (z, z+w)
  CHECK(out[0] == 1.0);
  CHECK(out[1] == 2.0);
  CHECK(out[2] == 4.0);
  CHECK(out[3] == 6.0);
}

TEST_CASE("weighted pullback field wiring") {
  // Direct oracle: apply the block map by hand and rebuild the damped,
  // weighted magnitude at every node.
  std::mt19937_64 rng(21);
  const KernelCoeff K = random_kernel(1, 8, KernelInterp::kernel, rng, 0.6);
  const WeightFn omega = WeightFn::polynomial(4, 1.0);
  const BlockMatrixC C = BlockMatrixC::kernel_shift(1);
  const GridField G = g_kco_build(K, C, omega, 2.0, 0.5);

  double worst = 0.0;
  std::vector<double> pt(4);
  for (std::size_t k = 0; k < G.size(); ++k) {
    G.node_point(k, pt);
    const cplx z{pt[0], pt[1]}, w{pt[2], pt[3]};
    const cplx zp = z;          // C11 z + C12 w
    const cplx wp = z + w;      // C21 z + C22 w
    const cplx z1[1] = {zp};
    const cplx w1[1] = {wp};
    const double warg[4] = {std::sqrt(2.0) * zp.real(), -std::sqrt(2.0) * zp.imag(),
                            std::sqrt(2.0) * wp.real(), std::sqrt(2.0) * wp.imag()};
    const double expect = std::exp(-0.5 * (std::norm(zp) + std::norm(wp))) *
                          std::abs(kernel_coeff_eval(K, z1, w1)) * omega(warg);
    worst = std::max(worst, std::abs(G[k].real() - expect));
  }
  CHECK(worst < 1e-12);

  SUBCASE("zero kernel gives the zero field") {
    KernelCoeff z(1, 4, KernelInterp::kernel);
    const GridField Gz = g_kco_build(z, C, omega, 2.0, 0.5);
    for (std::size_t k = 0; k < Gz.size(); ++k) CHECK(Gz[k] == cplx{0.0, 0.0});
  }
}

TEST_CASE("pullback of a symbol kernel reduces to the damped symbol") {
  // On a window inside the certified radius the kernel of a symbol carries
  // the reproducing factor exactly, so with the (z+w, w) block layout the
  // field collapses to e^{-|z|^2/2} |a(z+w, w)|.
  std::mt19937_64 rng(21);
  const KernelCoeff a = random_kernel(1, 28, KernelInterp::symbol, rng, 1.2);
  const KernelCoeff K = symbol_to_kernel(a);
  const WeightFn omega = WeightFn::one(4);
  const GridField G = g_kco_build(K, BlockMatrixC::symbol_shift(1), omega, 1.0, 0.25);

  double worst = 0.0;
  std::vector<double> pt(4);
  for (std::size_t k = 0; k < G.size(); ++k) {
    G.node_point(k, pt);
    const cplx z{pt[0], pt[1]}, w{pt[2], pt[3]};
    const cplx zw[1] = {z + w};
    const cplx ww[1] = {w};
    const double expect = std::exp(-0.5 * std::norm(z)) *
                          std::abs(kernel_coeff_eval(a, zw, ww));
    worst = std::max(worst, std::abs(G[k].real() - expect));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("continuity harness sanity") {
  std::mt19937_64 rng(33);
  const KernelCoeff K = random_kernel(1, 10, KernelInterp::kernel, rng, 0.9);
  const WeightFn one2 = WeightFn::one(2);
  const WeightFn one4 = WeightFn::one(4);

  ContinuityConfig cfg;
  cfg.p = kInf;
  cfg.q = 1.0;
  cfg.p1 = {2.0, 2.0};
  cfg.p2 = {2.0, 2.0};
  cfg.ensemble = 8;
  cfg.seed = 4;
  cfg.grid_R = 4.0;
  cfg.grid_h = 0.5;
  cfg.norm_R = 6.0;
  cfg.norm_h = 0.25;

  SUBCASE("finite, scale-invariant ratio") {
    const auto rep = continuity_harness(K, BlockMatrixC::kernel_shift(1), one4, one2, one2,
                                        ContinuityVariant::leb_op_cont_1, cfg);
    CHECK(rep.max_ratio > 0.0);
    CHECK(std::isfinite(rep.max_ratio));

    // Scaling the kernel scales both sides; the ratio is unchanged.
    KernelCoeff K2 = K;
    for (auto& v : K2.values()) v *= 3.0;
    const auto rep2 = continuity_harness(K2, BlockMatrixC::kernel_shift(1), one4, one2,
                                         one2, ContinuityVariant::leb_op_cont_1, cfg);
    CHECK(rep2.max_ratio == doctest::Approx(rep.max_ratio).epsilon(1e-10));
  }
  SUBCASE("exponent relation is enforced") {
    ContinuityConfig bad = cfg;
    bad.q = 2.0;  // 1/p1 - 1/p2 = 0 but 1 - 1/p - 1/q = 1/2
    CHECK_THROWS(continuity_harness(K, BlockMatrixC::kernel_shift(1), one4, one2, one2,
                                    ContinuityVariant::leb_op_cont_1, bad));
  }
  SUBCASE("matrix condition is enforced") {
    CHECK_THROWS(continuity_harness(K, BlockMatrixC::symbol_shift(1), one4, one2, one2,
                                    ContinuityVariant::leb_op_cont_1, cfg));
  }
  SUBCASE("zero members contribute zero ratio") {
    const KernelCoeff Z(1, 10, KernelInterp::kernel);
    const auto rep = continuity_harness(Z, BlockMatrixC::kernel_shift(1), one4, one2, one2,
                                        ContinuityVariant::leb_op_cont_1, cfg);
    CHECK(rep.max_ratio == 0.0);
  }
  SUBCASE("split variant runs") {
    ContinuityConfig c3 = cfg;
    c3.p = 2.0;
    c3.q = 2.0;
    const auto rep = continuity_harness(K, BlockMatrixC::split_shift(1), one4, one2, one2,
                                        ContinuityVariant::leb_op_cont_3, c3);
    CHECK(std::isfinite(rep.max_ratio));
    CHECK(rep.max_ratio > 0.0);
  }
}

TEST_CASE("kernel json round trip") {
  std::mt19937_64 rng(2);
  const KernelCoeff k = random_kernel(1, 5, KernelInterp::symbol, rng, 0.3);
  const KernelCoeff back = kernel_from_json(kernel_to_json(k));
  CHECK(back.interp() == k.interp());
  REQUIRE(back.size() == k.size());
  for (std::size_t i = 0; i < k.size(); ++i) CHECK(back.values()[i] == k.values()[i]);
}

TEST_CASE("harness reports serialize with the expected fields") {
  std::mt19937_64 rng(33);
  const KernelCoeff K = random_kernel(1, 8, KernelInterp::kernel, rng, 0.9);
  ContinuityConfig cfg;
  cfg.p = kInf;
  cfg.q = 1.0;
  cfg.p1 = {2.0, 2.0};
  cfg.p2 = {2.0, 2.0};
  cfg.ensemble = 3;
  cfg.grid_h = 0.5;
  cfg.norm_R = 6.0;
  const auto rep =
      continuity_harness(K, BlockMatrixC::kernel_shift(1), WeightFn::one(4),
                         WeightFn::one(2), WeightFn::one(2),
                         ContinuityVariant::leb_op_cont_1, cfg);
  const std::string text = continuity_report_json(rep, cfg);
  CHECK(text.find("\"variant\"") != std::string::npos);
  CHECK(text.find("\"exponents\"") != std::string::npos);
  CHECK(text.find("\"ratio\"") != std::string::npos);
  CHECK(text.find("\"ensemble\"") != std::string::npos);
  CHECK(text.find("\"seed\"") != std::string::npos);
  CHECK(text.find("\"norms\"") != std::string::npos);
}

TEST_CASE("incompatible weights are rejected on probes") {
  std::mt19937_64 rng(35);
  const KernelCoeff K = random_kernel(1, 8, KernelInterp::kernel, rng, 0.9);
  ContinuityConfig cfg;
  cfg.p = kInf;
  cfg.q = 1.0;
  cfg.p1 = {2.0, 2.0};
  cfg.p2 = {2.0, 2.0};
  cfg.ensemble = 2;
  // omega2 grows quadratically while omega1 and omega stay flat, so the
  // ratio escalates across the probe radii.
  CHECK_THROWS(continuity_harness(K, BlockMatrixC::kernel_shift(1), WeightFn::one(4),
                                  WeightFn::one(2), WeightFn::gauss_quadratic(2, 1.0),
                                  ContinuityVariant::leb_op_cont_1, cfg));
}

TEST_CASE("conversion helpers check the interpretation tag") {
  KernelCoeff K(1, 4, KernelInterp::kernel);
  CHECK_THROWS(symbol_to_kernel(K));
  KernelCoeff a(1, 4, KernelInterp::symbol);
  CHECK_THROWS(kernel_to_symbol(a));
}
