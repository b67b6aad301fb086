#pragma once

#include "fockcalc/grid_field.hpp"

namespace fockcalc {

/// Semi-discrete Fourier transform of a sampled field, matching the
/// continuous convention hat f(zeta) = (2 pi)^{-1/2} \int f(x) e^{-i x zeta} dx
/// per axis. The frequency lattice has step 2 pi / (n h) and the same node
/// count, so forward followed by inverse is the identity to rounding.
double dft_freq_step(const GridField& g);

/// Transform the axes in [from_axis, to_axis); inverse flips the kernel sign
/// and swaps the h / freq-step prefactors.
GridField dft_axes(const GridField& g, int from_axis, int to_axis, bool inverse);

/// All axes at once.
GridField dft_full(const GridField& g, bool inverse);

/// Largest |value| on the outermost index shell of the field, relative to the
/// global max; the aliasing guard for multiplier calculus.
double boundary_shell_ratio(const GridField& g, int shell_width = 2);

}  // namespace fockcalc
