#include "fockcalc/realpdo.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fockcalc/fourier.hpp"
#include "fockcalc/hermite.hpp"
#include "fockcalc/parallel.hpp"
#include "fockcalc/random_fields.hpp"

namespace fockcalc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = 1.4142135623730951;

std::vector<double> zeros_matrix(int d) {
  return std::vector<double>(static_cast<std::size_t>(d * d), 0.0);
}

// v = x - A (x - y), row-major A; empty A means 0 (first slot = x).
void first_slot(const QuantMatrix& A, std::span<const double> x,
                std::span<const double> y, std::span<double> v) {
  const int d = static_cast<int>(x.size());
  for (int r = 0; r < d; ++r) {
    double shift = 0.0;
    if (!A.empty())
      for (int c = 0; c < d; ++c)
        shift += A[static_cast<std::size_t>(r * d + c)] *
                 (x[static_cast<std::size_t>(c)] - y[static_cast<std::size_t>(c)]);
    v[static_cast<std::size_t>(r)] = x[static_cast<std::size_t>(r)] - shift;
  }
}

bool is_zero_matrix(const QuantMatrix& A) {
  for (double v : A)
    if (v != 0.0) return false;
  return true;
}

// Uniform access to symbol values at (v, xi_lattice_node). Callable symbols
// are evaluated directly; sampled symbols go through a trigonometric
// refinement of the x axes onto the half-step lattice (d = 1).
class SymbolReader {
 public:
  SymbolReader(const SymbolField& a, double snap = 1e-6) : a_(a), snap_(snap) {
    if (a.eval) return;
    if (a.d != 1)
      throw std::invalid_argument("symbol reader: sampled symbols need d = 1");
    GridField spec = a.spectral ? *a.spectral : dft_full(a.grid, false);
    // Inverse along the xi axis only: rows stay on the zeta_x lattice.
    GridField half = dft_axes(spec, 1, 2, true);
    const int n = a.grid.nodes_per_axis();
    const int M = (n - 1) / 2;
    const double dz = dft_freq_step(a.grid);
    nfine_ = 2 * (n - 1) + 1;
    hfine_ = 0.5 * a.grid.step();
    refined_.assign(static_cast<std::size_t>(nfine_) * static_cast<std::size_t>(n),
                    cplx{0.0, 0.0});
    exec::OpenMp par;
    par(nfine_, [&](std::int64_t k) {
      const double v = -a_.grid.extent() + hfine_ * static_cast<double>(k);
      for (int m = 0; m < n; ++m) {
        cplx acc{0.0, 0.0};
        for (int mx = 0; mx < n; ++mx) {
          const int idx[2] = {mx, m};
          acc += half.at(idx) * std::polar(1.0, v * dz * (mx - M));
        }
        refined_[static_cast<std::size_t>(k) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(m)] = acc * dz / std::sqrt(2.0 * kPi);
      }
    });
  }

  cplx at(std::span<const double> v, std::span<const double> xi,
          std::span<const int> xi_idx) const {
    if (a_.eval) {
      double pt[6];
      const int d = a_.d;
      for (int k = 0; k < d; ++k) pt[k] = v[static_cast<std::size_t>(k)];
      for (int k = 0; k < d; ++k) pt[d + k] = xi[static_cast<std::size_t>(k)];
      return a_.eval(std::span<const double>(pt, static_cast<std::size_t>(2 * d)));
    }
    const double t = (v[0] + a_.grid.extent()) / hfine_;
    const double r = std::round(t);
    if (std::abs(t - r) > snap_ || r < 0 || r >= nfine_)
      throw std::invalid_argument(
          "symbol reader: request off the refined lattice (unsupported quantization)");
    return refined_[static_cast<std::size_t>(r) * static_cast<std::size_t>(a_.grid.nodes_per_axis()) +
                    static_cast<std::size_t>(xi_idx[0])];
  }

 private:
  const SymbolField& a_;
  double snap_;
  std::vector<cplx> refined_;
  std::int64_t nfine_ = 0;
  double hfine_ = 0.0;
};

void check_hull_damped(const GridField& f, const char* who) {
  const int n = f.nodes_per_axis();
  double inner = 0.0, shell = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(f.axes()));
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double a = std::abs(f[k]);
    inner = std::max(inner, a);
    f.unflatten(k, idx);
    for (int ax = 0; ax < f.axes(); ++ax)
      if (idx[static_cast<std::size_t>(ax)] == 0 || idx[static_cast<std::size_t>(ax)] == n - 1) {
        shell = std::max(shell, a);
        break;
      }
  }
  if (inner > 0.0 && shell > 1e-6 * inner)
    throw std::invalid_argument(std::string(who) +
                                ": input carries mass at the hull boundary");
}

}  // namespace

SymbolField SymbolField::from_callable(int d, double R, double h, RealFn f) {
  SymbolField s;
  s.d = d;
  s.eval = f;
  s.grid = GridField::sample(d, 2 * d, R, h, [&](std::span<const double> pt) { return f(pt); });
  return s;
}

SymbolField SymbolField::from_grid(GridField g) {
  if (g.axes() % 2 != 0) throw std::invalid_argument("SymbolField: needs 2d axes");
  SymbolField s;
  s.d = g.axes() / 2;
  s.grid = std::move(g);
  return s;
}

SymbolField SymbolField::gaussian(int d, double R, double h, std::span<const double> center,
                                  std::span<const double> widths, double phase) {
  std::vector<double> c(center.begin(), center.end());
  std::vector<double> w(widths.begin(), widths.end());
  if (static_cast<int>(c.size()) != 2 * d || static_cast<int>(w.size()) != 2 * d)
    throw std::invalid_argument("SymbolField::gaussian: center/widths need 2d entries");
  return from_callable(d, R, h, [c, w, phase, d](std::span<const double> pt) {
    double q = 0.0, lin = 0.0;
    for (int k = 0; k < 2 * d; ++k) {
      const double t = (pt[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)]) /
                       w[static_cast<std::size_t>(k)];
      q += t * t;
      lin += pt[static_cast<std::size_t>(k)];
    }
    return std::exp(-0.5 * q) * std::polar(1.0, phase * lin);
  });
}

SymbolField SymbolField::hermite_symbol(int d, double R, double h, const MultiIndex& ax,
                                        const MultiIndex& axi) {
  if (ax.dim() != d || axi.dim() != d)
    throw std::invalid_argument("SymbolField::hermite_symbol: index dims must equal d");
  return from_callable(d, R, h, [ax, axi, d](std::span<const double> pt) {
    const std::span<const double> x(pt.data(), static_cast<std::size_t>(d));
    const std::span<const double> xi(pt.data() + d, static_cast<std::size_t>(d));
    return cplx{hermite_eval(ax, x) * hermite_eval(axi, xi), 0.0};
  });
}

SymbolField SymbolField::random_bandlimited(int d, double R, double h, std::uint64_t seed,
                                            int N) {
  std::mt19937_64 rng(seed);
  auto coeffs = std::make_shared<CoeffArray>(
      random_coeff(TruncationSpec(2 * d, N), BasisTag::hermite, rng, 0.5));
  return from_callable(d, R, h, [coeffs](std::span<const double> pt) {
    return hermite_synthesize(*coeffs, pt);
  });
}

GridField op_a_apply(const SymbolField& a, const QuantMatrix& A, const GridField& f) {
  const int d = f.axes();
  if (d > 3) throw std::invalid_argument("op_a_apply: quadrature paths stop at d=3");
  if (a.grid.axes() != 2 * d)
    throw std::invalid_argument("op_a_apply: symbol/function dimension mismatch");
  if (!A.empty() && static_cast<int>(A.size()) != d * d)
    throw std::invalid_argument("op_a_apply: quantization matrix must be d x d");
  check_hull_damped(f, "op_a_apply");

  const double Rxi = a.grid.extent();
  const double hxi = a.grid.step();
  const int nxi = a.grid.nodes_per_axis();
  if (f.step() * Rxi >= 0.9 * kPi)
    throw std::invalid_argument("op_a_apply: lattice too coarse for the phase range");

  const SymbolReader reader(a);
  GridField out(f.complex_dim(), d, f.extent(), f.step());
  const double cell_y = std::pow(f.step(), d);
  const double cell_xi = std::pow(hxi, d);
  const bool zeroA = A.empty() || is_zero_matrix(A);

  // xi sweep bookkeeping shared by both paths.
  std::size_t xi_total = 1;
  for (int k = 0; k < d; ++k) xi_total *= static_cast<std::size_t>(nxi);
  auto xi_node = [&](std::size_t flat, std::span<int> idx, std::span<double> xi) {
    for (int k = d - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(nxi));
      flat /= static_cast<std::size_t>(nxi);
      xi[static_cast<std::size_t>(k)] = -Rxi + hxi * idx[static_cast<std::size_t>(k)];
    }
  };

  // Boundary certificate: the xi-profile of the y-sum must decay inside the
  // hull. Gathered on the zero-A path directly; the sheared path probes a
  // few output columns before the main sweep.
  std::vector<double> profile(xi_total, 0.0);

  if (zeroA) {
    // a(x, xi) does not couple x to y, so the y-sum is shared by all x.
    std::vector<cplx> ysum(xi_total, cplx{0.0, 0.0});
    exec::OpenMp par;
    par(static_cast<std::int64_t>(xi_total), [&](std::int64_t m) {
      int idx[3];
      double xi[3], y[3];
      xi_node(static_cast<std::size_t>(m), std::span<int>(idx, static_cast<std::size_t>(d)),
              std::span<double>(xi, static_cast<std::size_t>(d)));
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] == cplx{0.0, 0.0}) continue;
        f.node_point(k, std::span<double>(y, static_cast<std::size_t>(d)));
        double yxi = 0.0;
        for (int j = 0; j < d; ++j) yxi += y[j] * xi[j];
        acc += f[k] * std::polar(1.0, -yxi);
      }
      ysum[static_cast<std::size_t>(m)] = acc * cell_y;
      // Certificate column: the symbol magnitude rides along the x sweep.
      double amax = 0.0;
      for (std::size_t xk = 0; xk < out.size(); xk += 4) {
        double x[3];
        out.node_point(xk, std::span<double>(x, static_cast<std::size_t>(d)));
        amax = std::max(amax,
                        std::abs(reader.at(std::span<const double>(x, static_cast<std::size_t>(d)),
                                           std::span<const double>(xi, static_cast<std::size_t>(d)),
                                           std::span<const int>(idx, static_cast<std::size_t>(d)))));
      }
      profile[static_cast<std::size_t>(m)] = amax * std::abs(acc);
    });
    par(static_cast<std::int64_t>(out.size()), [&](std::int64_t xk) {
      double x[3], xi[3], v[3];
      int idx[3];
      out.node_point(static_cast<std::size_t>(xk), std::span<double>(x, static_cast<std::size_t>(d)));
      cplx acc{0.0, 0.0};
      for (std::size_t m = 0; m < xi_total; ++m) {
        xi_node(m, std::span<int>(idx, static_cast<std::size_t>(d)),
                std::span<double>(xi, static_cast<std::size_t>(d)));
        double xxi = 0.0;
        for (int j = 0; j < d; ++j) {
          v[j] = x[j];
          xxi += x[j] * xi[j];
        }
        acc += reader.at(std::span<const double>(v, static_cast<std::size_t>(d)),
                         std::span<const double>(xi, static_cast<std::size_t>(d)),
                         std::span<const int>(idx, static_cast<std::size_t>(d))) *
               ysum[m] * std::polar(1.0, xxi);
      }
      out[static_cast<std::size_t>(xk)] = acc * cell_xi * std::pow(2.0 * kPi, -d);
    });
  } else {
    auto column = [&](std::span<const double> x, std::size_t m, std::span<int> idx,
                      std::span<double> xi) {
      double v[3], y[3];
      xi_node(m, idx, xi);
      cplx inner{0.0, 0.0};
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] == cplx{0.0, 0.0}) continue;
        f.node_point(k, std::span<double>(y, static_cast<std::size_t>(d)));
        first_slot(A, x, std::span<const double>(y, static_cast<std::size_t>(d)),
                   std::span<double>(v, static_cast<std::size_t>(d)));
        double ph = 0.0;
        for (int j = 0; j < d; ++j) ph += (x[static_cast<std::size_t>(j)] - y[j]) * xi[static_cast<std::size_t>(j)];
        inner += reader.at(std::span<const double>(v, static_cast<std::size_t>(d)),
                           std::span<const double>(xi.data(), static_cast<std::size_t>(d)),
                           std::span<const int>(idx.data(), static_cast<std::size_t>(d))) *
                 f[k] * std::polar(1.0, ph);
      }
      return inner;
    };

    // Certification probes at a few output points.
    for (std::size_t probe : {std::size_t{0}, out.size() / 2, out.size() - 1}) {
      double x[3], xi[3];
      int idx[3];
      out.node_point(probe, std::span<double>(x, static_cast<std::size_t>(d)));
      for (std::size_t m = 0; m < xi_total; ++m)
        profile[m] = std::max(
            profile[m],
            std::abs(column(std::span<const double>(x, static_cast<std::size_t>(d)), m,
                            std::span<int>(idx, static_cast<std::size_t>(d)),
                            std::span<double>(xi, static_cast<std::size_t>(d)))));
    }

    exec::OpenMp par;
    par(static_cast<std::int64_t>(out.size()), [&](std::int64_t xk) {
      double x[3], xi[3];
      int idx[3];
      out.node_point(static_cast<std::size_t>(xk), std::span<double>(x, static_cast<std::size_t>(d)));
      cplx acc{0.0, 0.0};
      for (std::size_t m = 0; m < xi_total; ++m)
        acc += column(std::span<const double>(x, static_cast<std::size_t>(d)), m,
                      std::span<int>(idx, static_cast<std::size_t>(d)),
                      std::span<double>(xi, static_cast<std::size_t>(d))) *
               cell_y;
      out[static_cast<std::size_t>(xk)] = acc * cell_xi * std::pow(2.0 * kPi, -d);
    });
  }

  // Reject when the xi-integrand still carries mass at the hull boundary.
  double interior = 0.0, boundary = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(d));
  for (std::size_t m = 0; m < xi_total; ++m) {
    std::size_t rem = m;
    bool on_edge = false;
    for (int k = d - 1; k >= 0; --k) {
      const int i = static_cast<int>(rem % static_cast<std::size_t>(nxi));
      rem /= static_cast<std::size_t>(nxi);
      if (i == 0 || i == nxi - 1) on_edge = true;
    }
    interior = std::max(interior, profile[m]);
    if (on_edge) boundary = std::max(boundary, profile[m]);
  }
  if (interior > 0.0 && boundary > 1e-6 * interior)
    throw std::invalid_argument(
        "op_a_apply: symbol/frequency content not damped on the hull (quadrature "
        "not certified)");
  return out;
}

cplx kernel_of_symbol_point(const SymbolField& a, const QuantMatrix& A,
                            std::span<const double> x, std::span<const double> y) {
  const int d = a.d;
  if (d > 3) throw std::invalid_argument("kernel_of_symbol: quadrature paths stop at d=3");
  const double Rxi = a.grid.extent();
  const double hxi = a.grid.step();
  const int nxi = a.grid.nodes_per_axis();
  const SymbolReader reader(a);

  std::size_t xi_total = 1;
  for (int k = 0; k < d; ++k) xi_total *= static_cast<std::size_t>(nxi);
  double v[3], xi[3];
  int idx[3];
  first_slot(A, x, y, std::span<double>(v, static_cast<std::size_t>(d)));
  cplx acc{0.0, 0.0};
  for (std::size_t m = 0; m < xi_total; ++m) {
    std::size_t rem = m;
    double ph = 0.0;
    for (int k = d - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % static_cast<std::size_t>(nxi));
      rem /= static_cast<std::size_t>(nxi);
      xi[k] = -Rxi + hxi * idx[k];
      ph += (x[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(k)]) * xi[k];
    }
    acc += reader.at(std::span<const double>(v, static_cast<std::size_t>(d)),
                     std::span<const double>(xi, static_cast<std::size_t>(d)),
                     std::span<const int>(idx, static_cast<std::size_t>(d))) *
           std::polar(1.0, ph);
  }
  return acc * std::pow(hxi, d) * std::pow(2.0 * kPi, -d);
}

GridField kernel_of_symbol(const SymbolField& a, const QuantMatrix& A, double R,
                           double h) {
  const int d = a.d;
  const double Rxi = a.grid.extent();
  const double hxi = a.grid.step();
  const int nxi = a.grid.nodes_per_axis();
  const SymbolReader reader(a);

  GridField out(d, 2 * d, R, h);
  std::size_t xi_total = 1;
  for (int k = 0; k < d; ++k) xi_total *= static_cast<std::size_t>(nxi);

  exec::OpenMp par;
  par(static_cast<std::int64_t>(out.size()), [&](std::int64_t cell) {
    double pt[6], v[3], xi[3];
    int idx[3];
    out.node_point(static_cast<std::size_t>(cell),
                   std::span<double>(pt, static_cast<std::size_t>(2 * d)));
    const std::span<const double> x(pt, static_cast<std::size_t>(d));
    const std::span<const double> y(pt + d, static_cast<std::size_t>(d));
    first_slot(A, x, y, std::span<double>(v, static_cast<std::size_t>(d)));
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m < xi_total; ++m) {
      std::size_t rem = m;
      double ph = 0.0;
      for (int k = d - 1; k >= 0; --k) {
        idx[k] = static_cast<int>(rem % static_cast<std::size_t>(nxi));
        rem /= static_cast<std::size_t>(nxi);
        xi[k] = -Rxi + hxi * idx[k];
        ph += (x[static_cast<std::size_t>(k)] - y[static_cast<std::size_t>(k)]) * xi[k];
      }
      acc += reader.at(std::span<const double>(v, static_cast<std::size_t>(d)),
                       std::span<const double>(xi, static_cast<std::size_t>(d)),
                       std::span<const int>(idx, static_cast<std::size_t>(d))) *
             std::polar(1.0, ph);
    }
    out[static_cast<std::size_t>(cell)] = acc * std::pow(hxi, d) * std::pow(2.0 * kPi, -d);
  });
  return out;
}

SymbolField calculi_transform(const SymbolField& a, const QuantMatrix& A1,
                              const QuantMatrix& A2, double alias_tol) {
  const int d = a.d;
  QuantMatrix B = A1.empty() ? zeros_matrix(d) : A1;
  const QuantMatrix B2 = A2.empty() ? zeros_matrix(d) : A2;
  for (int k = 0; k < d * d; ++k) B[static_cast<std::size_t>(k)] -= B2[static_cast<std::size_t>(k)];

  GridField spec = a.spectral ? *a.spectral : dft_full(a.grid, false);
  if (boundary_shell_ratio(spec) > alias_tol)
    throw std::invalid_argument("calculi_transform: aliasing detected near the lattice edge");

  const int n = spec.nodes_per_axis();
  const int M = (n - 1) / 2;
  const double dz = dft_freq_step(a.grid);
  exec::OpenMp par;
  par(static_cast<std::int64_t>(spec.size()), [&](std::int64_t flat) {
    int idx[6];
    spec.unflatten(static_cast<std::size_t>(flat), std::span<int>(idx, static_cast<std::size_t>(2 * d)));
    double zx[3], zxi[3];
    for (int k = 0; k < d; ++k) {
      zx[k] = dz * (idx[k] - M);
      zxi[k] = dz * (idx[d + k] - M);
    }
    double phase = 0.0;
    for (int r = 0; r < d; ++r) {
      double bz = 0.0;
      for (int c = 0; c < d; ++c) bz += B[static_cast<std::size_t>(r * d + c)] * zxi[c];
      phase += bz * zx[r];
    }
    spec[static_cast<std::size_t>(flat)] *= std::polar(1.0, phase);
  });

  SymbolField out;
  out.d = d;
  out.grid = dft_full(spec, true);
  out.spectral = std::move(spec);
  return out;
}

TransferPair stft_kernel_transfer_eval(const SymbolField& a, cplx z, cplx w,
                                       const TransferCheckConfig& cfg) {
  if (a.d != 1) throw std::invalid_argument("transfer check: d = 1 only");
  if (!a.eval) throw std::invalid_argument("transfer check: needs an exact symbol evaluator");
  const QuadratureRule rule = QuadratureRule::gauss_hermite(cfg.quad_Q);
  const int Q = cfg.quad_Q;

  // Kernel values of Op(a) on the 2-D quadrature tensor, shared per call.
  std::vector<cplx> kern(static_cast<std::size_t>(Q) * static_cast<std::size_t>(Q));
  exec::OpenMp par;
  par(static_cast<std::int64_t>(kern.size()), [&](std::int64_t cell) {
    const int i = static_cast<int>(cell) / Q;
    const int j = static_cast<int>(cell) % Q;
    const double xq[1] = {rule.nodes[static_cast<std::size_t>(i)]};
    const double yq[1] = {rule.nodes[static_cast<std::size_t>(j)]};
    kern[static_cast<std::size_t>(cell)] = kernel_of_symbol_point(a, {}, xq, yq);
  });

  // Left side: damped 2-D transform of the kernel at (z, conj w).
  const cplx Z1 = z, Z2 = std::conj(w);
  cplx lhs{0.0, 0.0};
  for (int i = 0; i < Q; ++i)
    for (int j = 0; j < Q; ++j) {
      const double xq = rule.nodes[static_cast<std::size_t>(i)];
      const double yq = rule.nodes[static_cast<std::size_t>(j)];
      const cplx karg = -0.5 * (Z1 * Z1 + Z2 * Z2 + xq * xq + yq * yq) +
                        kSqrt2 * (Z1 * xq + Z2 * yq);
      lhs += rule.total_weights[static_cast<std::size_t>(i)] *
             rule.total_weights[static_cast<std::size_t>(j)] * std::exp(karg) *
             kern[static_cast<std::size_t>(i) * static_cast<std::size_t>(Q) +
                  static_cast<std::size_t>(j)];
    }
  lhs *= std::pow(kPi, -0.5);  // pi^{-2/4}
  lhs *= std::exp(-0.5 * (std::norm(z) + std::norm(w)));

  // Right side: twisted phase-space transform of the symbol. The pairing
  // uses the window with the +i<x,xi> phase applied unconjugated (the form
  // the identity actually closes with; the conjugated pairing leaves a
  // position-dependent Gaussian mismatch). The matching prefactor is
  // (2 pi)^{d/2}.
  const double x = z.real(), xi = z.imag();
  const double y = w.real(), eta = w.imag();
  const double X[2] = {kSqrt2 * x, -kSqrt2 * eta};
  const double Xi[2] = {kSqrt2 * (eta - xi), kSqrt2 * (y - x)};
  cplx V{0.0, 0.0};
  for (int i = 0; i < Q; ++i)
    for (int j = 0; j < Q; ++j) {
      const double t1 = rule.nodes[static_cast<std::size_t>(i)];
      const double t2 = rule.nodes[static_cast<std::size_t>(j)];
      const double apt[2] = {X[0] + t1, X[1] + t2};
      const cplx win = std::pow(kPi, -0.5) * std::exp(-0.5 * (t1 * t1 + t2 * t2)) *
                       std::polar(1.0, t1 * t2);
      V += rule.total_weights[static_cast<std::size_t>(i)] *
           rule.total_weights[static_cast<std::size_t>(j)] * a.eval(apt) * win *
           std::polar(1.0, -(t1 * Xi[0] + t2 * Xi[1]));
    }
  V *= std::pow(2.0 * kPi, -1.0) * std::polar(1.0, -(X[0] * Xi[0] + X[1] * Xi[1]));
  const cplx rhs = std::pow(2.0 * kPi, 0.5) *
                   std::polar(1.0, -(x * (xi - 2.0 * eta) + y * eta)) * V;
  return {lhs, rhs};
}

double stft_kernel_transfer_check(const SymbolField& a,
                                  std::span<const std::pair<cplx, cplx>> probes,
                                  const TransferCheckConfig& cfg) {
  double worst = 0.0;
  for (const auto& [z, w] : probes) {
    const TransferPair pr = stft_kernel_transfer_eval(a, z, w, cfg);
    worst = std::max(worst, std::abs(pr.lhs - pr.rhs));
  }
  return worst;
}

double transfer_constant_fit(const SymbolField& a,
                             std::span<const std::pair<cplx, cplx>> probes,
                             const TransferCheckConfig& cfg) {
  // rhs carries the (2 pi)^{d/2} factor; strip it, then refit.
  cplx num{0.0, 0.0};
  double den = 0.0;
  for (const auto& [z, w] : probes) {
    const TransferPair pr = stft_kernel_transfer_eval(a, z, w, cfg);
    const cplx core = pr.rhs / std::sqrt(2.0 * kPi);
    num += pr.lhs * std::conj(core);
    den += std::norm(core);
  }
  return den > 0.0 ? (num / den).real() : 0.0;
}

KernelCoeff conjugated_kernel_coeff(const SymbolField& a, const QuantMatrix& A, int N,
                                    int quad_Q) {
  if (a.d != 1) throw std::invalid_argument("conjugated_kernel_coeff: d = 1 only");
  const QuadratureRule rule = QuadratureRule::gauss_hermite(quad_Q);
  // Kernel values cached on the analysis tensor.
  const int Q = quad_Q;
  std::vector<cplx> kern(static_cast<std::size_t>(Q) * static_cast<std::size_t>(Q));
  exec::OpenMp par;
  par(static_cast<std::int64_t>(kern.size()), [&](std::int64_t cell) {
    const int i = static_cast<int>(cell) / Q;
    const int j = static_cast<int>(cell) % Q;
    const double xq[1] = {rule.nodes[static_cast<std::size_t>(i)]};
    const double yq[1] = {rule.nodes[static_cast<std::size_t>(j)]};
    kern[static_cast<std::size_t>(cell)] = kernel_of_symbol_point(a, A, xq, yq);
  });
  auto lookup = [&](std::span<const double> pt) -> cplx {
    // Analysis calls back exactly on quadrature nodes; match by value.
    // Nodes are distinct, so a linear scan per axis is fine at this scale.
    const auto find = [&](double v) {
      for (int i = 0; i < Q; ++i)
        if (std::abs(rule.nodes[static_cast<std::size_t>(i)] - v) < 1e-12) return i;
      throw std::logic_error("conjugated_kernel_coeff: off-node callback");
    };
    const int i = find(pt[0]);
    const int j = find(pt[1]);
    return kern[static_cast<std::size_t>(i) * static_cast<std::size_t>(Q) +
                static_cast<std::size_t>(j)];
  };
  const CoeffArray c2 = hermite_analyze(lookup, TruncationSpec(2, N), rule);
  return scb_transform(c2, 1, 1, KernelInterp::kernel);
}

PseudoModReport pseudo_mod_harness(const SymbolField& a, const QuantMatrix& A,
                                   const WeightFn& omega0, const WeightFn& omega1,
                                   const WeightFn& omega2,
                                   std::span<const CoeffArray> ensemble,
                                   const PseudoModConfig& cfg) {
  if (a.d != 1) throw std::invalid_argument("pseudo_mod_harness: d = 1 only");
  const int n = 2;  // exponent vectors on R^{2d}, d = 1

  // Exponent relation and ordering.
  if (static_cast<int>(cfg.p1.size()) != n || static_cast<int>(cfg.p2.size()) != n)
    throw std::invalid_argument("pseudo_mod_harness: p1/p2 need 2d entries");
  for (int k = 0; k < n; ++k) {
    const double i1 = cfg.p1[static_cast<std::size_t>(k)] == kInf ? 0.0 : 1.0 / cfg.p1[static_cast<std::size_t>(k)];
    const double i2 = cfg.p2[static_cast<std::size_t>(k)] == kInf ? 0.0 : 1.0 / cfg.p2[static_cast<std::size_t>(k)];
    const double ip = cfg.p == kInf ? 0.0 : 1.0 / cfg.p;
    const double iq = cfg.q == kInf ? 0.0 : 1.0 / cfg.q;
    if (std::abs((i1 - i2) - (1.0 - ip - iq)) > 1e-12)
      throw std::invalid_argument("pseudo_mod_harness: exponent relation violated");
    if (cfg.q > cfg.p2[static_cast<std::size_t>(k)] + 1e-12 ||
        cfg.p2[static_cast<std::size_t>(k)] > cfg.p + 1e-12)
      throw std::invalid_argument("pseudo_mod_harness: ordering q <= p2 <= p violated");
  }

  // Weight condition on probes with radius escalation.
  {
    const double Aval = A.empty() ? 0.0 : A[0];
    double prev = 0.0;
    for (double Rp : {2.0, 4.0}) {
      double worst = 0.0;
      const int P = 5;
      auto c = [&](int i) { return -Rp + 2.0 * Rp * i / (P - 1); };
      for (int ix = 0; ix < P; ++ix)
        for (int jx = 0; jx < P; ++jx)
          for (int kx = 0; kx < P; ++kx)
            for (int lx = 0; lx < P; ++lx) {
              const double x = c(ix), xi = c(jx), eta = c(kx), y = c(lx);
              const double num[2] = {x - Aval * y, xi + (1.0 - Aval) * eta};
              const double den[2] = {x + (1.0 - Aval) * y, xi - Aval * eta};
              const double w0arg[4] = {x, xi, eta, y};
              worst = std::max(worst, omega2(num) / (omega1(den) * omega0(w0arg)));
            }
      if (prev > 0.0 && worst > 4.0 * prev)
        throw std::invalid_argument("pseudo_mod_harness: weight condition fails on probes");
      prev = worst;
    }
  }

  const QuadratureRule stft_rule = QuadratureRule::gauss_hermite(cfg.stft_Q);
  PseudoModReport rep;

  // Symbol modulation norm on the doubled phase space.
  if (cfg.norm_a_override >= 0.0) {
    rep.norm_a = cfg.norm_a_override;
  } else {
    RealFn aeval;
    if (a.eval) {
      aeval = a.eval;
    } else {
      const GridField& ag = a.grid;
      aeval = [&ag](std::span<const double> pt) {
        return ag.contains(pt) ? ag.interpolate(pt) : cplx{0.0, 0.0};
      };
    }
    const GridField Va = stft_gaussian(aeval, 2, cfg.symbol_stft_R, cfg.symbol_stft_h,
                                       stft_rule);
    rep.norm_a = modulation_norm_field(Va, MixedNormSpec::lpq(2, cfg.p, cfg.q), omega0);
  }

  KernelCoeff K0;
  if (cfg.two_path) K0 = conjugated_kernel_coeff(a, A, cfg.N, cfg.quad_Q);

  MixedNormSpec spec1, spec2;
  spec1.n = n;
  spec1.p = cfg.p1;
  spec2.n = n;
  spec2.p = cfg.p2;

  for (const CoeffArray& f : ensemble) {
    if (f.basis() != BasisTag::hermite)
      throw std::invalid_argument("pseudo_mod_harness: ensemble must be hermite-side");
    if (cfg.two_path && !(f.trunc() == K0.side_w()))
      throw std::invalid_argument("pseudo_mod_harness: ensemble truncation mismatch");

    // Direct route: synthesize, apply by quadrature, take the windowed norm.
    GridField fg = GridField::sample(1, 1, cfg.norm_R, cfg.norm_h,
                                     [&](std::span<const double> pt) {
                                       return hermite_synthesize(f, pt);
                                     });
    const GridField g = op_a_apply(a, A, fg);
    const GridField Vg = stft_gaussian(g, cfg.stft_R, cfg.stft_h);
    const double norm_direct = modulation_norm_field(Vg, spec2, omega2);

    if (cfg.two_path) {
      // Coefficient route through the conjugated kernel; the norm plane and
      // scheme match the direct route exactly so the comparison isolates the
      // operator realizations.
      const CoeffArray TF = kernel_apply(K0, bargmann_coeff(f));
      const double norm_coeff = fock_norm(TF, spec2, omega2, cfg.stft_R, cfg.stft_h);
      rep.max_two_path_dev = std::max(rep.max_two_path_dev,
                                      std::abs(norm_direct - norm_coeff));
    }
    const double nf = fock_norm(bargmann_coeff(f), spec1, omega1, cfg.stft_R,
                                cfg.stft_h);
    const double ratio = norm_direct / (rep.norm_a * nf);
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

}  // namespace fockcalc
