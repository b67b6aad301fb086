#pragma once

#include "fockcalc/coeff_array.hpp"
#include "fockcalc/grid_field.hpp"
#include "fockcalc/hermite.hpp"
#include "fockcalc/kernel_coeff.hpp"

namespace fockcalc {
/// Plain serial implementations of the hot kernels, written definition-first
/// (scatter order for the lower-index sum, direct double loops elsewhere).
/// They exist to pin down the parallel kernels in tests and benchmarks.
namespace ref {

KernelCoeff t0t_transform(const KernelCoeff& c, cplx t);

CoeffArray kernel_apply(const KernelCoeff& K, const CoeffArray& F);

GridField dft_full(const GridField& g, bool inverse);

GridField stft_gaussian(const RealFn& f, int d, double R, double h,
                        const QuadratureRule& rule);

}  // namespace ref
}  // namespace fockcalc
