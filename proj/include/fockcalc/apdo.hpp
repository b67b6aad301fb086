#pragma once

#include <span>
#include <vector>

#include "fockcalc/coeff_array.hpp"
#include "fockcalc/grid_field.hpp"
#include "fockcalc/kernel_coeff.hpp"
#include "fockcalc/mixed_norm.hpp"
#include "fockcalc/weights.hpp"

namespace fockcalc {

/// Exact coefficient-space realization of multiplication by e^{t(z,w)}:
///   out(alpha,beta) = sum_{gamma<=alpha,beta} c(alpha-gamma, beta-gamma)
///                     t^{|gamma|} sqrt(binom(alpha,gamma) binom(beta,gamma)).
/// Reads only lower-or-equal indices, so truncation introduces no error and
/// the inverse is the same map with -t.
KernelCoeff t0t_transform(const KernelCoeff& c, cplx t);

/// t = +1 / t = -1 specializations with the interpretation tag switched.
KernelCoeff symbol_to_kernel(const KernelCoeff& a);
KernelCoeff kernel_to_symbol(const KernelCoeff& K);

/// Evaluate sum c(alpha,beta) e_alpha(z) e_beta(conj w) at a point.
cplx kernel_coeff_eval(const KernelCoeff& k, std::span<const cplx> z,
                       std::span<const cplx> w);

/// Largest rho such that the tail sum_{n>N} (tmax rho^2)^n / n! stays below
/// tol; pointwise exponential-factor checks are certified only inside it.
double certified_radius(int N, double tmax, double tol = 1e-12);

/// Max over probes of |eval(T_{0,t} a)(z,w) - e^{t(z,w)} eval(a)(z,w)|.
/// Probes outside the certified radius are rejected.
double tt_pointwise_check(const KernelCoeff& a, cplx t,
                          std::span<const std::pair<cplx, cplx>> probes);

/// Coefficient contraction (T_K F)_alpha = sum_beta c_K(alpha,beta) c_F(beta),
/// the exact integral of K(z,.) F against the Gaussian measure.
CoeffArray kernel_apply(const KernelCoeff& K, const CoeffArray& F);

/// kernel_apply(symbol_to_kernel(a), F).
CoeffArray apdo_apply(const KernelCoeff& a, const CoeffArray& F);

struct GaussianBoundReport {
  bool holds = false;
  double worst_ratio = 0.0;
};

enum class BoundSide { minus, plus };

/// Checks |a(z,w)| <= threshold * e^{|z-w|^2/2 -/+ r(|z|^{1/s}+|w|^{1/s})}
/// over the probe set.
GaussianBoundReport gaussian_bound_check(const KernelCoeff& a, double s, double r,
                                         BoundSide side,
                                         std::span<const std::pair<cplx, cplx>> probes,
                                         double threshold = 1.0);

/// Real 4d x 4d block matrix acting on the (Re z, Im z, Re w, Im w)
/// coordinates of the kernel plane.
class BlockMatrixC {
 public:
  BlockMatrixC() = default;
  /// blocks are row-major 2d x 2d, in order C11, C12, C21, C22.
  BlockMatrixC(int d, std::vector<double> c11, std::vector<double> c12,
               std::vector<double> c21, std::vector<double> c22);

  int d() const { return d_; }
  /// det(C) det(C11 C21) above threshold.
  bool cond1(double tol = 1e-10) const;
  /// det(C) det(C12 C22) above threshold.
  bool cond2(double tol = 1e-10) const;
  bool invertible(double tol = 1e-10) const;

  void apply(std::span<const double> in, std::span<double> out) const;

  /// C11 = C21 = C22 = I, C12 = 0 (kernel argument pattern (z, z+w)).
  static BlockMatrixC kernel_shift(int d);
  /// C11 = C12 = C22 = I, C21 = 0 (symbol argument pattern (z+w, w)).
  static BlockMatrixC symbol_shift(int d);
  /// C11 = C21 = I with the complementary rank-d corners in C12/C22.
  static BlockMatrixC split_shift(int d);

 private:
  int d_ = 0;
  std::vector<double> blocks_[4];  // row-major 2d x 2d each
  double det_block(int which) const;
  double det_full() const;
};

/// Weighted, Gaussian-damped pullback of a kernel through the block matrix:
///   K_w(z,w) = e^{-(|z|^2+|w|^2)/2} |K(z,w)| omega(sqrt2 conj z, sqrt2 w)
///   G(z,w)   = K_w evaluated after the C pullback of (z,w),
/// sampled on [-R,R]^4 (one complex dimension per side). The conjugation on
/// the omega slots follows the printed convention (z side conjugated, w side
/// not); symmetric_conjugation applies the conjugation to both.
GridField g_kco_build(const KernelCoeff& K, const BlockMatrixC& C, const WeightFn& omega,
                      double R, double h, bool symmetric_conjugation = false);

enum class ContinuityVariant { leb_op_cont_1, leb_op_cont_2, leb_op_cont_3 };

struct ContinuityReport {
  ContinuityVariant variant;
  double norm_G = 0.0;
  double max_ratio = 0.0;
  double max_lhs = 0.0;
  std::vector<double> ratios;
  std::uint64_t seed = 0;
};

struct ContinuityConfig {
  double p = 2.0, q = 2.0;
  std::vector<double> p1, p2;  // 2d entries each; ignored for variant 3
  double grid_R = 4.0, grid_h = 0.25;          // kernel-plane grid for G
  double norm_R = 8.0, norm_h = 0.25;          // z-plane grid for the A-norms
  std::uint64_t seed = 1;
  int ensemble = 50;
  double damping = 0.8;  // coefficient damping rate for the random F draw
};

/// Runs one continuity estimate: lhs = ||T_K F|| in the target norm, rhs =
/// ||G_{K,C,omega}|| times ||F|| in the source norm, maximized over a random
/// coefficient ensemble. Exponent and matrix preconditions are enforced.
ContinuityReport continuity_harness(const KernelCoeff& K, const BlockMatrixC& C,
                                    const WeightFn& omega, const WeightFn& omega1,
                                    const WeightFn& omega2, ContinuityVariant variant,
                                    const ContinuityConfig& cfg);

/// {variant, exponents, norms, ratio, ensemble, seed} as JSON.
std::string continuity_report_json(const ContinuityReport& rep,
                                   const ContinuityConfig& cfg);

}  // namespace fockcalc
