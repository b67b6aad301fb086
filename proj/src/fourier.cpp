#include "fockcalc/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fockcalc/parallel.hpp"

namespace fockcalc {

namespace {
constexpr double kPi = std::numbers::pi;
}

double dft_freq_step(const GridField& g) {
  return 2.0 * kPi / (g.nodes_per_axis() * g.step());
}

GridField dft_axes(const GridField& g, int from_axis, int to_axis, bool inverse) {
  if (from_axis < 0 || to_axis > g.axes() || from_axis >= to_axis)
    throw std::invalid_argument("dft_axes: bad axis range");
  const int n = g.nodes_per_axis();
  const int M = (n - 1) / 2;
  const double dz = dft_freq_step(g);
  // Transformed values live on the frequency lattice zeta_m = dz (m - M);
  // the (R, h) metadata stays that of the spatial grid so a later inverse
  // pass can reconstruct both lattices.
  const double in_step = g.step();

  GridField cur = g;
  for (int axis = from_axis; axis < to_axis; ++axis) {
    GridField next = cur;  // same geometry per axis pass; fixed after the loop
    // Stride pattern of this axis.
    std::size_t stride = 1;
    for (int k = axis + 1; k < cur.axes(); ++k) stride *= static_cast<std::size_t>(n);
    const std::size_t outer = cur.size() / (static_cast<std::size_t>(n) * stride);

    const double sign = inverse ? 1.0 : -1.0;
    const double pref = (inverse ? dft_freq_step(g) : in_step) / std::sqrt(2.0 * kPi);
    // Twiddle table: e^{sign i x_k zeta_m} for source node k, target node m.
    std::vector<cplx> tw(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double src = inverse ? dz * (k - M) : g.coord(k);
      for (int m = 0; m < n; ++m) {
        const double dst = inverse ? g.coord(m) : dz * (m - M);
        tw[static_cast<std::size_t>(k * n + m)] = std::polar(1.0, sign * src * dst);
      }
    }

    exec::OpenMp par;
    par(static_cast<std::int64_t>(outer * stride), [&](std::int64_t cell) {
      const std::size_t o = static_cast<std::size_t>(cell) / stride;
      const std::size_t s = static_cast<std::size_t>(cell) % stride;
      const std::size_t base = o * static_cast<std::size_t>(n) * stride + s;
      for (int m = 0; m < n; ++m) {
        cplx acc{0.0, 0.0};
        for (int k = 0; k < n; ++k)
          acc += cur[base + static_cast<std::size_t>(k) * stride] *
                 tw[static_cast<std::size_t>(k * n + m)];
        next[base + static_cast<std::size_t>(m) * stride] = acc * pref;
      }
    });
    cur = std::move(next);
  }
  return cur;
}

GridField dft_full(const GridField& g, bool inverse) {
  return dft_axes(g, 0, g.axes(), inverse);
}

double boundary_shell_ratio(const GridField& g, int shell_width) {
  const int n = g.nodes_per_axis();
  double global = 0.0, shell = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(g.axes()));
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    g.unflatten(flat, idx);
    const double a = std::abs(g[flat]);
    global = std::max(global, a);
    for (int k = 0; k < g.axes(); ++k)
      if (idx[static_cast<std::size_t>(k)] < shell_width ||
          idx[static_cast<std::size_t>(k)] >= n - shell_width) {
        shell = std::max(shell, a);
        break;
      }
  }
  return global > 0.0 ? shell / global : 0.0;
}

}  // namespace fockcalc
