#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fockcalc/apdo.hpp"
#include "fockcalc/bargmann.hpp"
#include "fockcalc/grid_field.hpp"
#include "fockcalc/mixed_norm.hpp"

namespace fockcalc {

/// A phase-space symbol a(x, xi) on R^{2d}: always sampled on a grid, and
/// optionally backed by an exact evaluator (presets) or by spectral data
/// (after multiplier calculus), either of which avoids interpolation.
struct SymbolField {
  int d = 1;
  GridField grid;                 // axes = 2d, (x..., xi...)
  RealFn eval;                    // exact pointwise evaluator, may be empty
  std::optional<GridField> spectral;  // full dft of the samples

  static SymbolField from_callable(int d, double R, double h, RealFn f);
  static SymbolField from_grid(GridField g);

  /// Presets: a Gaussian bump with optional linear phase, a product of two
  /// Hermite functions h_alpha(x) h_beta(xi), and a random Hermite-bandlimited
  /// draw on R^{2d}.
  static SymbolField gaussian(int d, double R, double h, std::span<const double> center,
                              std::span<const double> widths, double phase = 0.0);
  static SymbolField hermite_symbol(int d, double R, double h, const MultiIndex& ax,
                                    const MultiIndex& axi);
  static SymbolField random_bandlimited(int d, double R, double h, std::uint64_t seed,
                                        int N);
};

/// Quantization by a d x d matrix A (row-major); empty means A = 0.
using QuantMatrix = std::vector<double>;

/// (Op_A(a) f)(x) = (2 pi)^{-d} \iint a(x - A(x-y), xi) f(y) e^{i<x-y,xi>} dy dxi
/// realized by Riemann sums over f's lattice (y) and the symbol grid's xi
/// lattice. Output lives on f's grid. Integrand mass touching the hull
/// boundary voids the quadrature certificate and is rejected.
GridField op_a_apply(const SymbolField& a, const QuantMatrix& A, const GridField& f);

/// Kernel of Op_A(a): the inverse partial Fourier transform of a in its
/// second slot, sheared to (x - A(x-y), x - y), evaluated per output node by
/// direct xi quadrature. Output axes: (x, y).
GridField kernel_of_symbol(const SymbolField& a, const QuantMatrix& A, double R,
                           double h);

/// Pointwise kernel evaluation (same integral, one point).
cplx kernel_of_symbol_point(const SymbolField& a, const QuantMatrix& A,
                            std::span<const double> x, std::span<const double> y);

/// Change of quantization: a2 = exp(i <(A1 - A2) D_xi, D_x>) a1 via the full
/// phase-space Fourier multiplier. Rejects symbols with spectral mass near
/// the lattice boundary (aliasing).
SymbolField calculi_transform(const SymbolField& a, const QuantMatrix& A1,
                              const QuantMatrix& A2, double alias_tol = 1e-8);

struct TransferCheckConfig {
  int quad_Q = 40;        // Gauss-Hermite order for both transforms
  double kernel_R = 8.0;  // xi hull for the kernel integral comes from a.grid
};

/// Both routes of the kernel/short-time-transform identity at one probe:
/// the damped split-Bargmann transform of the Op(a) kernel on the left, the
/// twisted phase-space transform of the symbol on the right.
struct TransferPair {
  cplx lhs;
  cplx rhs;
};
TransferPair stft_kernel_transfer_eval(const SymbolField& a, cplx z, cplx w,
                                       const TransferCheckConfig& cfg = {});

/// Max |lhs - rhs| over the probe list; d = 1 only.
double stft_kernel_transfer_check(const SymbolField& a,
                                  std::span<const std::pair<cplx, cplx>> probes,
                                  const TransferCheckConfig& cfg = {});

/// Least-squares constant relating the damped kernel transform to the
/// twisted symbol transform over the probes. The identity closes with
/// (2 pi)^{d/2}; reported so deviations from other printed normalizations
/// are visible rather than silently absorbed.
double transfer_constant_fit(const SymbolField& a,
                             std::span<const std::pair<cplx, cplx>> probes,
                             const TransferCheckConfig& cfg = {});

struct PseudoModConfig {
  double p = kInf, q = 1.0;
  std::vector<double> p1{2.0, 2.0}, p2{2.0, 2.0};
  int N = 16;        // coefficient truncation for the conjugated kernel
  int quad_Q = 44;   // analysis quadrature
  int stft_Q = 40;   // window quadrature for the symbol transform
  double stft_R = 6.0, stft_h = 0.25;
  double symbol_stft_R = 5.0, symbol_stft_h = 0.5;
  double norm_R = 9.0, norm_h = 0.25;  // spatial grid for f and Op(a) f
  double agree_tol = 1e-4;
  /// Callers sweeping exponent tuples over one fixed symbol can precompute
  /// ||a|| once and skip the doubled-phase-space transform here.
  double norm_a_override = -1.0;
  /// Skip the coefficient route when only the ratio is wanted.
  bool two_path = true;
};

struct PseudoModReport {
  double norm_a = 0.0;        // symbol modulation norm
  double max_ratio = 0.0;     // operator norm ratio over the ensemble
  double max_two_path_dev = 0.0;  // worst disagreement of the two norm routes
  std::vector<double> ratios;
};

/// For each f in the ensemble, computes ||Op_A(a) f|| in the target
/// modulation norm twice (direct quadrature, and through the conjugated
/// kernel contraction) and reports the agreement plus the ratio against
/// ||a|| ||f||. Weight compatibility is probed before any work.
PseudoModReport pseudo_mod_harness(const SymbolField& a, const QuantMatrix& A,
                                   const WeightFn& omega0, const WeightFn& omega1,
                                   const WeightFn& omega2,
                                   std::span<const CoeffArray> ensemble,
                                   const PseudoModConfig& cfg);

/// Hermite analysis of the operator kernel followed by the split reindexing:
/// the coefficient-side image of Op_A(a) as an integral kernel.
KernelCoeff conjugated_kernel_coeff(const SymbolField& a, const QuantMatrix& A, int N,
                                    int quad_Q);

}  // namespace fockcalc
