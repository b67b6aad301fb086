#include "fockcalc/bargmann.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fockcalc/parallel.hpp"

namespace fockcalc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = 1.4142135623730951;

double abs_z(std::span<const cplx> z) {
  double s = 0.0;
  for (const cplx& v : z) s += std::norm(v);
  return std::sqrt(s);
}

void check_rule_radius(std::span<const cplx> z, const QuadratureRule& rule,
                       bool allow_large_z, const char* who) {
  if (allow_large_z) return;
  if (abs_z(z) > 0.5 * std::sqrt(static_cast<double>(rule.Q)))
    throw std::invalid_argument(std::string(who) +
                                ": |z| above the certified rule radius sqrt(Q)/2");
}

}  // namespace

CoeffArray bargmann_coeff(const CoeffArray& c) {
  if (c.basis() != BasisTag::hermite)
    throw std::invalid_argument("bargmann_coeff: expects hermite coefficients");
  CoeffArray out(c.trunc(), BasisTag::fock);
  out.values() = c.values();
  return out;
}

CoeffArray inverse_bargmann_coeff(const CoeffArray& c) {
  if (c.basis() != BasisTag::fock)
    throw std::invalid_argument("inverse_bargmann_coeff: expects fock coefficients");
  CoeffArray out(c.trunc(), BasisTag::hermite);
  out.values() = c.values();
  return out;
}

cplx bargmann_quad(const RealFn& f, std::span<const cplx> z, const QuadratureRule& rule,
                   bool allow_large_z) {
  const int d = static_cast<int>(z.size());
  check_rule_radius(z, rule, allow_large_z, "bargmann_quad");
  const int Q = rule.Q;
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(Q);

  cplx zz{0.0, 0.0};
  for (const cplx& v : z) zz += v * v;

  cplx acc{0.0, 0.0};
  std::vector<double> y(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double wt = 1.0, y2 = 0.0;
    cplx zy{0.0, 0.0};
    for (int k = d - 1; k >= 0; --k) {
      const int i = static_cast<int>(rem % static_cast<std::size_t>(Q));
      rem /= static_cast<std::size_t>(Q);
      const double yk = rule.nodes[static_cast<std::size_t>(i)];
      y[static_cast<std::size_t>(k)] = yk;
      wt *= rule.total_weights[static_cast<std::size_t>(i)];
      y2 += yk * yk;
      zy += z[static_cast<std::size_t>(k)] * yk;
    }
    const cplx kernel = std::pow(kPi, -0.25 * d) *
                        std::exp(-0.5 * (zz + y2) + kSqrt2 * zy);
    acc += wt * kernel * f(y);
  }
  return acc;
}

cplx fock_eval(const CoeffArray& c, std::span<const cplx> z) {
  if (c.basis() != BasisTag::fock)
    throw std::invalid_argument("fock_eval: expects fock coefficients");
  const TruncationSpec& trunc = c.trunc();
  if (static_cast<int>(z.size()) != trunc.d)
    throw std::invalid_argument("fock_eval: dimension mismatch");
  // Per-axis ladder e_n(z) = z e_{n-1}(z)/sqrt(n).
  std::vector<cplx> ladder(static_cast<std::size_t>(trunc.d) * (trunc.N + 1));
  for (int k = 0; k < trunc.d; ++k) {
    ladder[static_cast<std::size_t>(k) * (trunc.N + 1)] = cplx{1.0, 0.0};
    for (int n = 1; n <= trunc.N; ++n)
      ladder[static_cast<std::size_t>(k) * (trunc.N + 1) + static_cast<std::size_t>(n)] =
          z[static_cast<std::size_t>(k)] *
          ladder[static_cast<std::size_t>(k) * (trunc.N + 1) + static_cast<std::size_t>(n) - 1] /
          std::sqrt(static_cast<double>(n));
  }
  const auto indices = enumerate_indices(trunc);
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (c[j] == cplx{0.0, 0.0}) continue;
    cplx e{1.0, 0.0};
    for (int k = 0; k < trunc.d; ++k)
      e *= ladder[static_cast<std::size_t>(k) * (trunc.N + 1) +
                  static_cast<std::size_t>(indices[j][k])];
    acc += c[j] * e;
  }
  return acc;
}

cplx reproducing_project(const ComplexFn& F, std::span<const cplx> z,
                         const QuadratureRule& rule, bool allow_large_z) {
  const int d = static_cast<int>(z.size());
  if (d > 3) throw std::invalid_argument("reproducing_project: quadrature paths stop at d=3");
  check_rule_radius(z, rule, allow_large_z, "reproducing_project");
  const int Q = rule.Q;
  std::size_t total = 1;
  for (int k = 0; k < 2 * d; ++k) total *= static_cast<std::size_t>(Q);

  cplx acc{0.0, 0.0};
  std::vector<cplx> w(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double wt = 1.0;
    // First d node slots carry Re w, the last d carry Im w.
    double re[4], im[4];
    for (int k = 2 * d - 1; k >= 0; --k) {
      const int i = static_cast<int>(rem % static_cast<std::size_t>(Q));
      rem /= static_cast<std::size_t>(Q);
      wt *= rule.weights[static_cast<std::size_t>(i)];
      if (k >= d)
        im[k - d] = rule.nodes[static_cast<std::size_t>(i)];
      else
        re[k] = rule.nodes[static_cast<std::size_t>(i)];
    }
    cplx zwbar{0.0, 0.0};
    for (int k = 0; k < d; ++k) {
      w[static_cast<std::size_t>(k)] = cplx{re[k], im[k]};
      zwbar += z[static_cast<std::size_t>(k)] * cplx{re[k], -im[k]};
    }
    acc += wt * F(w) * std::exp(zwbar);
  }
  return acc * std::pow(kPi, -static_cast<double>(d));
}

cplx stft_gaussian_point(const RealFn& f, std::span<const double> x,
                         std::span<const double> xi, const QuadratureRule& rule) {
  const int d = static_cast<int>(x.size());
  const int Q = rule.Q;
  std::size_t total = 1;
  for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(Q);

  cplx acc{0.0, 0.0};
  std::vector<double> y(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double wt = 1.0, t2 = 0.0, txi = 0.0;
    for (int k = d - 1; k >= 0; --k) {
      const int i = static_cast<int>(rem % static_cast<std::size_t>(Q));
      rem /= static_cast<std::size_t>(Q);
      const double t = rule.nodes[static_cast<std::size_t>(i)];
      wt *= rule.total_weights[static_cast<std::size_t>(i)];
      y[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + t;
      t2 += t * t;
      txi += t * xi[static_cast<std::size_t>(k)];
    }
    const double window = std::pow(kPi, -0.25 * d) * std::exp(-0.5 * t2);
    acc += wt * f(y) * window * std::polar(1.0, -txi);
  }
  double xxi = 0.0;
  for (int k = 0; k < d; ++k) xxi += x[static_cast<std::size_t>(k)] * xi[static_cast<std::size_t>(k)];
  return acc * std::pow(2.0 * kPi, -0.5 * d) * std::polar(1.0, -xxi);
}

GridField stft_gaussian(const RealFn& f, int d, double R, double h,
                        const QuadratureRule& rule) {
  GridField out(d, 2 * d, R, h);
  exec::OpenMp par;
  par(static_cast<std::int64_t>(out.size()), [&](std::int64_t flat) {
    double pt[6];
    out.node_point(static_cast<std::size_t>(flat),
                   std::span<double>(pt, static_cast<std::size_t>(2 * d)));
    out[static_cast<std::size_t>(flat)] = stft_gaussian_point(
        f, std::span<const double>(pt, static_cast<std::size_t>(d)),
        std::span<const double>(pt + d, static_cast<std::size_t>(d)), rule);
  });
  return out;
}

GridField stft_gaussian(const GridField& f, double R, double h) {
  const int d = f.axes();
  if (d > 3) throw std::invalid_argument("stft_gaussian: sampled inputs stop at d=3");
  GridField out(d, 2 * d, R, h);
  const double cell = std::pow(f.step(), d);
  exec::OpenMp par;
  par(static_cast<std::int64_t>(out.size()), [&](std::int64_t flat) {
    double pt[6];
    out.node_point(static_cast<std::size_t>(flat),
                   std::span<double>(pt, static_cast<std::size_t>(2 * d)));
    const std::span<const double> x(pt, static_cast<std::size_t>(d));
    const std::span<const double> xi(pt + d, static_cast<std::size_t>(d));
    cplx acc{0.0, 0.0};
    double y[3];
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (f[k] == cplx{0.0, 0.0}) continue;
      f.node_point(k, std::span<double>(y, static_cast<std::size_t>(d)));
      double t2 = 0.0, yxi = 0.0;
      for (int j = 0; j < d; ++j) {
        const double t = y[j] - x[static_cast<std::size_t>(j)];
        t2 += t * t;
        yxi += y[j] * xi[static_cast<std::size_t>(j)];
      }
      acc += f[k] * std::pow(kPi, -0.25 * d) * std::exp(-0.5 * t2) * std::polar(1.0, -yxi);
    }
    out[static_cast<std::size_t>(flat)] = acc * cell * std::pow(2.0 * kPi, -0.5 * d);
  });
  return out;
}

GridField uv_apply(const GridField& G, double R, double h) {
  if (G.axes() % 2 != 0) throw std::invalid_argument("uv_apply: source needs 2d axes");
  const int d = G.axes() / 2;
  GridField out(d, 2 * d, R, h);
  exec::OpenMp par;
  par(static_cast<std::int64_t>(out.size()), [&](std::int64_t flat) {
    double pt[6], src[6];
    out.node_point(static_cast<std::size_t>(flat),
                   std::span<double>(pt, static_cast<std::size_t>(2 * d)));
    double q = 0.0, xxi = 0.0;
    for (int k = 0; k < d; ++k) {
      src[k] = kSqrt2 * pt[k];
      src[k + d] = -kSqrt2 * pt[k + d];
      q += pt[k] * pt[k] + pt[k + d] * pt[k + d];
      xxi += pt[k] * pt[k + d];
    }
    const cplx g = G.interpolate(std::span<const double>(src, static_cast<std::size_t>(2 * d)));
    out[static_cast<std::size_t>(flat)] =
        std::pow(2.0 * kPi, 0.5 * d) * std::exp(0.5 * q) * std::polar(1.0, -xxi) * g;
  });
  return out;
}

cplx uv_inverse_point(const ComplexFn& F, std::span<const double> u,
                      std::span<const double> v) {
  const int d = static_cast<int>(u.size());
  std::vector<cplx> z(static_cast<std::size_t>(d));
  double q = 0.0, uv = 0.0;
  for (int k = 0; k < d; ++k) {
    z[static_cast<std::size_t>(k)] =
        cplx{u[static_cast<std::size_t>(k)], -v[static_cast<std::size_t>(k)]} / kSqrt2;
    q += u[static_cast<std::size_t>(k)] * u[static_cast<std::size_t>(k)] +
         v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
    uv += u[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
  }
  return std::pow(2.0 * kPi, -0.5 * d) * std::exp(-0.25 * q) * std::polar(1.0, -0.5 * uv) *
         F(z);
}

KernelCoeff scb_transform(const CoeffArray& c2d, int d2, int d1, KernelInterp tag) {
  const TruncationSpec& trunc = c2d.trunc();
  if (d2 + d1 != trunc.d)
    throw std::invalid_argument("scb_transform: split inconsistent with dimension");
  if (d2 < 1 || d1 < 1) throw std::invalid_argument("scb_transform: bad split");
  KernelCoeff out(TruncationSpec(d2, trunc.N), TruncationSpec(d1, trunc.N), tag);
  const auto indices = enumerate_indices(trunc);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (c2d[k] == cplx{0.0, 0.0}) continue;
    MultiIndex a = MultiIndex::zero(d2);
    MultiIndex b = MultiIndex::zero(d1);
    for (int j = 0; j < d2; ++j) a[j] = indices[k][j];
    for (int j = 0; j < d1; ++j) b[j] = indices[k][d2 + j];
    out.set(a, b, c2d[k]);
  }
  return out;
}

CoeffArray scb_inverse(const KernelCoeff& k) {
  const int d2 = k.side_z().d;
  const int d1 = k.side_w().d;
  if (k.side_z().N != k.side_w().N)
    throw std::invalid_argument("scb_inverse: mismatched per-side degrees");
  const int N = k.side_z().N;
  CoeffArray out(TruncationSpec(d2 + d1, N), BasisTag::hermite);
  const auto rows = enumerate_indices(k.side_z());
  const auto cols = enumerate_indices(k.side_w());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i].degree() + cols[j].degree() > N) continue;
      std::vector<int> joint;
      joint.reserve(static_cast<std::size_t>(d2 + d1));
      for (int a = 0; a < d2; ++a) joint.push_back(rows[i][a]);
      for (int a = 0; a < d1; ++a) joint.push_back(cols[j][a]);
      out.set(MultiIndex(joint), k(i, j));
    }
  return out;
}

double a2_norm_quad(const ComplexFn& F, int d, const QuadratureRule& rule) {
  if (d > 3) throw std::invalid_argument("a2_norm_quad: quadrature paths stop at d=3");
  const int Q = rule.Q;
  std::size_t total = 1;
  for (int k = 0; k < 2 * d; ++k) total *= static_cast<std::size_t>(Q);
  double acc = 0.0;
  std::vector<cplx> w(static_cast<std::size_t>(d));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double wt = 1.0;
    double re[4], im[4];
    for (int k = 2 * d - 1; k >= 0; --k) {
      const int i = static_cast<int>(rem % static_cast<std::size_t>(Q));
      rem /= static_cast<std::size_t>(Q);
      wt *= rule.weights[static_cast<std::size_t>(i)];
      if (k >= d)
        im[k - d] = rule.nodes[static_cast<std::size_t>(i)];
      else
        re[k] = rule.nodes[static_cast<std::size_t>(i)];
    }
    for (int k = 0; k < d; ++k) w[static_cast<std::size_t>(k)] = cplx{re[k], im[k]};
    acc += wt * std::norm(F(w));
  }
  return std::sqrt(acc * std::pow(kPi, -static_cast<double>(d)));
}

}  // namespace fockcalc
