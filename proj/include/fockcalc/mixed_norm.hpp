#pragma once

#include <limits>
#include <span>
#include <vector>

#include "fockcalc/bargmann.hpp"
#include "fockcalc/grid_field.hpp"
#include "fockcalc/weights.hpp"

namespace fockcalc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Iterated Lebesgue norm taken axis by axis in the coordinates of an
/// ordered basis E: the first basis coordinate is reduced first with p_1,
/// the last with p_n. T empty means the standard basis.
struct MixedNormSpec {
  int n = 0;
  std::vector<double> p;  // exponents in [1, inf], kInf for sup
  std::vector<double> T;  // n*n row-major basis matrix; empty = identity

  static MixedNormSpec uniform(int n, double p);
  /// L^{p,q}: first d axes get p (inner), last d get q (outer).
  static MixedNormSpec lpq(int d, double p, double q);
  /// L^{p,q}_*: basis reordered so the xi axes come first with exponent q,
  /// then the x axes with exponent p.
  static MixedNormSpec lpq_star(int d, double p, double q);

  /// Conjugate exponents, same basis.
  MixedNormSpec dual() const;

  bool identity_basis() const;
};

/// Parse "p=2,2,1,inf;E=I", "Lpq(p,q)" or "Lpq*(p,q)".
MixedNormSpec norm_spec_from_string(int n, const std::string& text);

/// Riemann-sum mixed norm of a sampled field. Fields are pulled back through
/// T_E (multilinear interpolation, exact for signed permutations); p = inf
/// axes reduce by the exact grid max.
double mixed_norm(const GridField& F, const MixedNormSpec& spec);

struct SymplecticReport {
  bool symplectic = false;
  bool phase_split = false;
  double max_violation = 0.0;
};

/// Evaluates the symplectic form sigma(X,Y) = <y,xi> - <x,eta> on all pairs
/// of the candidate basis and checks the span conditions for a phase split.
SymplecticReport symplectic_check(std::span<const std::vector<double>> e,
                                  std::span<const std::vector<double>> eps,
                                  double tol = 1e-12);

/// || (V f) * omega ||_{L^p_E} with the Gaussian window, STFT sampled on
/// [-R,R]^{2d} with step h.
double modulation_norm(const RealFn& f, int d, const MixedNormSpec& spec,
                       const WeightFn& omega, double R, double h,
                       const QuadratureRule& rule);

/// Same, for an already computed STFT field.
double modulation_norm_field(const GridField& stft, const MixedNormSpec& spec,
                             const WeightFn& omega);

/// || (U^{-1} F) * omega ||_{L^p_E} for a coefficient-backed entire function
/// (exact pointwise evaluation of F).
double fock_norm(const CoeffArray& F_fock, const MixedNormSpec& spec,
                 const WeightFn& omega, double R, double h);

/// Sampled-field variant; F is read by interpolation at (u - i v)/sqrt2,
/// so the norm grid extent must stay within sqrt2 times F's hull.
double fock_norm(const GridField& F, const MixedNormSpec& spec, const WeightFn& omega,
                 double R, double h);

/// Unweighted-basis closed form of the p-norm on the z-plane,
///   2^{d/p} (2 pi)^{-d/2} || e^{-|z|^2/2} F(z) omega(sqrt2 conj z) ||_{L^p(dlambda)},
/// used as the cross-check route against fock_norm for p = const.
double b_norm_closed_form(const CoeffArray& F_fock, double p, const WeightFn& omega,
                          double R, double h);

}  // namespace fockcalc
