#include "fockcalc/reference.hpp"

#include <cmath>
#include <numbers>

#include "fockcalc/bargmann.hpp"
#include "fockcalc/fourier.hpp"

namespace fockcalc {
namespace ref {

namespace {
constexpr double kPi = std::numbers::pi;
}

KernelCoeff t0t_transform(const KernelCoeff& c, cplx t) {
  // Scatter form: every source cell pushes its gamma-shifted contributions
  // upward. Same recursion, opposite traversal to the production kernel.
  const auto rows = enumerate_indices(c.side_z());
  const auto cols = enumerate_indices(c.side_w());
  const int d = c.side_z().d;
  KernelCoeff out(c.side_z(), c.side_w(), c.interp());

  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const cplx src = c(i, j);
      if (src == cplx{0.0, 0.0}) continue;
      const MultiIndex& a = rows[i];
      const MultiIndex& b = cols[j];
      MultiIndex gamma = MultiIndex::zero(d);
      for (;;) {
        MultiIndex at = a, bt = b;
        bool inside = true;
        for (int k = 0; k < d; ++k) {
          at[k] += gamma[k];
          bt[k] += gamma[k];
        }
        if (at.degree() > c.side_z().N || bt.degree() > c.side_w().N) inside = false;
        if (inside) {
          const double w = std::sqrt(binomial(at, gamma) * binomial(bt, gamma));
          out.set(at, bt,
                  out.at(at, bt) + src * std::pow(t, gamma.degree()) * w);
        }
        int k = d - 1;
        while (k >= 0) {
          if (gamma[k] < c.side_z().N) {
            ++gamma[k];
            break;
          }
          gamma[k] = 0;
          --k;
        }
        if (k < 0) break;
      }
    }
  }
  return out;
}

CoeffArray kernel_apply(const KernelCoeff& K, const CoeffArray& F) {
  CoeffArray out(K.side_z(), BasisTag::fock);
  for (std::size_t i = 0; i < K.rows(); ++i)
    for (std::size_t j = 0; j < K.cols(); ++j) out[i] += K(i, j) * F[j];
  return out;
}

GridField dft_full(const GridField& g, bool inverse) {
  // One flat double loop over all (node, frequency) pairs.
  const int n = g.nodes_per_axis();
  const int M = (n - 1) / 2;
  const int axes = g.axes();
  const double dz = dft_freq_step(g);
  const double pref =
      std::pow((inverse ? dz : g.step()) / std::sqrt(2.0 * kPi), axes);
  const double sign = inverse ? 1.0 : -1.0;

  GridField out = g;
  std::vector<int> si(static_cast<std::size_t>(axes)), di(static_cast<std::size_t>(axes));
  for (std::size_t dst = 0; dst < out.size(); ++dst) {
    out.unflatten(dst, di);
    cplx acc{0.0, 0.0};
    for (std::size_t src = 0; src < g.size(); ++src) {
      g.unflatten(src, si);
      double phase = 0.0;
      for (int k = 0; k < axes; ++k) {
        const double xs = inverse ? dz * (si[static_cast<std::size_t>(k)] - M)
                                  : g.coord(si[static_cast<std::size_t>(k)]);
        const double xd = inverse ? g.coord(di[static_cast<std::size_t>(k)])
                                  : dz * (di[static_cast<std::size_t>(k)] - M);
        phase += xs * xd;
      }
      acc += g[src] * std::polar(1.0, sign * phase);
    }
    out[dst] = acc * pref;
  }
  return out;
}

GridField stft_gaussian(const RealFn& f, int d, double R, double h,
                        const QuadratureRule& rule) {
  GridField out(d, 2 * d, R, h);
  std::vector<double> pt(static_cast<std::size_t>(2 * d));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out.node_point(k, pt);
    out[k] = stft_gaussian_point(
        f, std::span<const double>(pt.data(), static_cast<std::size_t>(d)),
        std::span<const double>(pt.data() + d, static_cast<std::size_t>(d)), rule);
  }
  return out;
}

}  // namespace ref
}  // namespace fockcalc
