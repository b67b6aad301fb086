#include "fockcalc/random_fields.hpp"

#include <cmath>

namespace fockcalc {

CoeffArray random_coeff(TruncationSpec trunc, BasisTag tag, std::mt19937_64& rng,
                        double damping_rate, bool normalize) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CoeffArray c(trunc, tag);
  const auto indices = enumerate_indices(trunc);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double damp = std::exp(-damping_rate * indices[k].degree());
    c[k] = cplx{gauss(rng), gauss(rng)} * damp;
  }
  if (normalize) {
    const double n = c.l2_norm();
    if (n > 0.0)
      for (std::size_t k = 0; k < c.size(); ++k) c[k] /= n;
  }
  return c;
}

KernelCoeff random_kernel(int d, int N, KernelInterp tag, std::mt19937_64& rng,
                          double damping_rate) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  KernelCoeff k(d, N, tag);
  const auto rows = enumerate_indices(k.side_z());
  const auto cols = enumerate_indices(k.side_w());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      k(i, j) = cplx{gauss(rng), gauss(rng)} *
                std::exp(-damping_rate * (rows[i].degree() + cols[j].degree()));
  return k;
}

}  // namespace fockcalc
