#pragma once

#include <random>

#include "fockcalc/coeff_array.hpp"
#include "fockcalc/kernel_coeff.hpp"

namespace fockcalc {

/// Coefficients drawn i.i.d. complex Gaussian and damped by e^{-rate |alpha|}.
CoeffArray random_coeff(TruncationSpec trunc, BasisTag tag, std::mt19937_64& rng,
                        double damping_rate = 0.7, bool normalize = true);

/// Kernel tensor with c(alpha,beta) ~ CN(0,1) e^{-rate(|alpha|+|beta|)}.
KernelCoeff random_kernel(int d, int N, KernelInterp tag, std::mt19937_64& rng,
                          double damping_rate = 0.8);

}  // namespace fockcalc
