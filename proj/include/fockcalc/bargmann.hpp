#pragma once

#include <functional>
#include <span>

#include "fockcalc/coeff_array.hpp"
#include "fockcalc/grid_field.hpp"
#include "fockcalc/hermite.hpp"
#include "fockcalc/kernel_coeff.hpp"

namespace fockcalc {

using ComplexFn = std::function<cplx(std::span<const cplx>)>;

/// Coefficient-exact transform: h_alpha maps to e_alpha, so the values are
/// untouched and only the basis tag flips.
CoeffArray bargmann_coeff(const CoeffArray& c);
CoeffArray inverse_bargmann_coeff(const CoeffArray& c);

/// Integral transform against the kernel
///   pi^{-d/4} exp(-(<z,z>+|y|^2)/2 + sqrt2 <z,y>)
/// by tensor Gauss-Hermite quadrature. The rule certifies |z| <= sqrt(Q)/2;
/// pass allow_large_z to override (the quadrature converges far beyond the
/// heuristic for entire integrands, at the caller's risk).
cplx bargmann_quad(const RealFn& f, std::span<const cplx> z, const QuadratureRule& rule,
                   bool allow_large_z = false);

/// sum_alpha c_alpha z^alpha / sqrt(alpha!).
cplx fock_eval(const CoeffArray& c, std::span<const cplx> z);

/// Projection integral \int F(w) e^{(z,w)} dmu(w) over C^d, realized as a
/// 2d-fold Gauss-Hermite sum in (Re w, Im w) with the pi^{-d} normalization
/// absorbed into the weights.
cplx reproducing_project(const ComplexFn& F, std::span<const cplx> z,
                         const QuadratureRule& rule, bool allow_large_z = false);

/// Gaussian-window short-time Fourier transform
///   V f(x, xi) = (2 pi)^{-d/2} \int f(y) phi(y-x) e^{-i<y,xi>} dy,
///   phi(y) = pi^{-d/4} e^{-|y|^2/2},
/// at one phase-space point (quadrature recentered at x).
cplx stft_gaussian_point(const RealFn& f, std::span<const double> x,
                         std::span<const double> xi, const QuadratureRule& rule);

/// Full phase-space sweep onto [-R,R]^{2d}; parallel over output nodes.
GridField stft_gaussian(const RealFn& f, int d, double R, double h,
                        const QuadratureRule& rule);

/// Sampled-input variant: the y-integral becomes a Riemann sum over the
/// source lattice, so no interpolation of f is involved.
GridField stft_gaussian(const GridField& f, double R, double h);

/// (U G)(x + i xi) = (2 pi)^{d/2} e^{(|x|^2+|xi|^2)/2} e^{-i<x,xi>}
///                   G(sqrt2 x, -sqrt2 xi),
/// with multilinear interpolation for off-node reads of G. Reads land on
/// nodes exactly when G lives on the sqrt2-matched source grid (see
/// matched_stft_extent/step).
GridField uv_apply(const GridField& G, double R, double h);

/// Source-grid geometry whose sqrt2 pullback hits the target nodes exactly.
inline double matched_stft_extent(double R) { return R * 1.4142135623730951; }
inline double matched_stft_step(double h) { return h * 1.4142135623730951; }

/// Inverse of uv_apply as a pointwise rule:
///   (U^{-1} F)(u, v) = (2 pi)^{-d/2} e^{-(|u|^2+|v|^2)/4} e^{-i<u,v>/2}
///                      F((u - i v)/sqrt2).
cplx uv_inverse_point(const ComplexFn& F, std::span<const double> u,
                      std::span<const double> v);

/// Split reindexing of a Hermite tensor on R^{d2+d1}: the leading d2 axes
/// become the z-side, the trailing d1 axes the (conjugated) w-side. Values
/// are untouched; entries with |alpha|+|beta| > N stay zero.
KernelCoeff scb_transform(const CoeffArray& c2d, int d2, int d1, KernelInterp tag);
CoeffArray scb_inverse(const KernelCoeff& k);

/// Quadrature A^2 norm of a function on C^d.
double a2_norm_quad(const ComplexFn& F, int d, const QuadratureRule& rule);

}  // namespace fockcalc
