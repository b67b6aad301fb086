#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fockcalc/coeff_array.hpp"
#include "fockcalc/multi_index.hpp"

namespace fockcalc {

/// Gauss quadrature on R for the weight e^{-y^2}: exact on polynomials of
/// degree <= 2Q-1. Nodes are symmetric about 0, weights positive.
/// total_weights are w_i e^{x_i^2}, for integrands carrying their own decay.
struct QuadratureRule {
  int Q = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> total_weights;

  static QuadratureRule gauss_hermite(int Q);
};

/// Callable on R^d used by the quadrature-facing transforms.
using RealFn = std::function<cplx(std::span<const double>)>;

inline constexpr int kHermiteDegreeCap = 60;  // three-term recurrence stays benign

/// Hermite function h_alpha(x), the L^2-orthonormal eigenfunctions of
/// |x|^2 - Delta, evaluated by the stable three-term recurrence
///   h_0 = pi^{-1/4} e^{-x^2/2},  h_n = x sqrt(2/n) h_{n-1} - sqrt((n-1)/n) h_{n-2}
/// per axis. Degrees above kHermiteDegreeCap are rejected.
double hermite_eval(const MultiIndex& alpha, std::span<const double> x);

/// All 1-D values h_0(x)..h_N(x) in one recurrence sweep.
void hermite_eval_axis(int N, double x, std::span<double> out);

/// Coefficients c_alpha = \int f h_alpha dx over the truncation, computed by
/// tensor Gauss-Hermite quadrature. Requires Q >= N+1 so every product of
/// basis elements appearing here is integrated exactly.
CoeffArray hermite_analyze(const RealFn& f, const TruncationSpec& trunc,
                           const QuadratureRule& rule);

/// Sum of the Hermite series at x.
cplx hermite_synthesize(const CoeffArray& c, std::span<const double> x);

/// Spectral action of the harmonic oscillator: c_alpha -> (2|alpha|+d)^n c_alpha.
CoeffArray harmonic_oscillator_apply(const CoeffArray& c, int n);

}  // namespace fockcalc
