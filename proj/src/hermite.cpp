#include "fockcalc/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace fockcalc {

namespace {

constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}

// Newton iteration on the orthonormal Hermite polynomial recurrence.
// Roots are found for the positive half and mirrored.
void gauss_hermite_newton(int Q, std::vector<double>& x, std::vector<double>& w) {
  const double eps = 1.0e-14;
  const int max_iter = 64;
  x.assign(static_cast<std::size_t>(Q), 0.0);
  w.assign(static_cast<std::size_t>(Q), 0.0);
  const int m = (Q + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * Q + 1.0) - 1.85575 * std::pow(2.0 * Q + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(Q), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[static_cast<std::size_t>(i) - 2];
    }
    double pp = 0.0;
    for (int it = 0; it < max_iter; ++it) {
      double p1 = kPiQuarterInv;
      double p2 = 0.0;
      for (int j = 0; j < Q; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * Q) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= eps) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    x[static_cast<std::size_t>(Q - 1 - i)] = -z;
    w[static_cast<std::size_t>(i)] = 2.0 / (pp * pp);
    w[static_cast<std::size_t>(Q - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
}

}  // namespace

QuadratureRule QuadratureRule::gauss_hermite(int Q) {
  if (Q < 1) throw std::invalid_argument("gauss_hermite: Q must be >= 1");
  QuadratureRule r;
  r.Q = Q;
  gauss_hermite_newton(Q, r.nodes, r.weights);
  r.total_weights.resize(static_cast<std::size_t>(Q));
  for (int i = 0; i < Q; ++i)
    r.total_weights[static_cast<std::size_t>(i)] =
        r.weights[static_cast<std::size_t>(i)] *
        std::exp(r.nodes[static_cast<std::size_t>(i)] * r.nodes[static_cast<std::size_t>(i)]);
  return r;
}

void hermite_eval_axis(int N, double x, std::span<double> out) {
  out[0] = kPiQuarterInv * std::exp(-0.5 * x * x);
  if (N >= 1) out[1] = x * std::sqrt(2.0) * out[0];
  for (int n = 2; n <= N; ++n)
    out[static_cast<std::size_t>(n)] =
        x * std::sqrt(2.0 / n) * out[static_cast<std::size_t>(n) - 1] -
        std::sqrt((n - 1.0) / n) * out[static_cast<std::size_t>(n) - 2];
}

double hermite_eval(const MultiIndex& alpha, std::span<const double> x) {
  if (alpha.dim() != static_cast<int>(x.size()))
    throw std::invalid_argument("hermite_eval: dimension mismatch");
  double prod = 1.0;
  std::vector<double> axis;
  for (int k = 0; k < alpha.dim(); ++k) {
    const int n = alpha[k];
    if (n > kHermiteDegreeCap)
      throw std::invalid_argument("hermite_eval: degree above stability bound");
    axis.assign(static_cast<std::size_t>(n) + 1, 0.0);
    hermite_eval_axis(n, x[static_cast<std::size_t>(k)], axis);
    prod *= axis[static_cast<std::size_t>(n)];
  }
  return prod;
}

CoeffArray hermite_analyze(const RealFn& f, const TruncationSpec& trunc,
                           const QuadratureRule& rule) {
  if (rule.Q < trunc.N + 1)
    throw std::invalid_argument("hermite_analyze: rule too coarse (Q < N+1)");
  if (trunc.N > kHermiteDegreeCap)
    throw std::invalid_argument("hermite_analyze: degree above stability bound");

  const int d = trunc.d;
  const int Q = rule.Q;
  const auto indices = enumerate_indices(trunc);
  CoeffArray out(trunc, BasisTag::hermite);

  // Per-axis table of h_n at the quadrature nodes.
  std::vector<double> table(static_cast<std::size_t>(Q) * (trunc.N + 1));
  for (int i = 0; i < Q; ++i)
    hermite_eval_axis(trunc.N, rule.nodes[static_cast<std::size_t>(i)],
                      std::span<double>(table.data() + static_cast<std::size_t>(i) * (trunc.N + 1),
                                        static_cast<std::size_t>(trunc.N) + 1));
  const auto h_at = [&](int node, int n) {
    return table[static_cast<std::size_t>(node) * (trunc.N + 1) + static_cast<std::size_t>(n)];
  };

  // Tensor sweep over the node grid; d <= 3 in practice.
  std::vector<int> node(static_cast<std::size_t>(d), 0);
  std::vector<double> point(static_cast<std::size_t>(d), 0.0);
  const std::size_t total = [&] {
    std::size_t t = 1;
    for (int k = 0; k < d; ++k) t *= static_cast<std::size_t>(Q);
    return t;
  }();
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    double wt = 1.0;
    for (int k = d - 1; k >= 0; --k) {
      node[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(Q));
      rem /= static_cast<std::size_t>(Q);
      wt *= rule.total_weights[static_cast<std::size_t>(node[static_cast<std::size_t>(k)])];
      point[static_cast<std::size_t>(k)] = rule.nodes[static_cast<std::size_t>(node[static_cast<std::size_t>(k)])];
    }
    const cplx fv = f(point);
    if (fv == cplx{0.0, 0.0}) continue;
    for (std::size_t j = 0; j < indices.size(); ++j) {
      double h = 1.0;
      for (int k = 0; k < d; ++k) h *= h_at(node[static_cast<std::size_t>(k)], indices[j][k]);
      out[j] += wt * fv * h;
    }
  }
  return out;
}

cplx hermite_synthesize(const CoeffArray& c, std::span<const double> x) {
  if (c.basis() != BasisTag::hermite)
    throw std::invalid_argument("hermite_synthesize: expects hermite coefficients");
  const TruncationSpec& trunc = c.trunc();
  if (static_cast<int>(x.size()) != trunc.d)
    throw std::invalid_argument("hermite_synthesize: dimension mismatch");
  const auto indices = enumerate_indices(trunc);

  std::vector<double> table(static_cast<std::size_t>(trunc.d) * (trunc.N + 1));
  for (int k = 0; k < trunc.d; ++k)
    hermite_eval_axis(trunc.N, x[static_cast<std::size_t>(k)],
                      std::span<double>(table.data() + static_cast<std::size_t>(k) * (trunc.N + 1),
                                        static_cast<std::size_t>(trunc.N) + 1));
  cplx acc{0.0, 0.0};
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (c[j] == cplx{0.0, 0.0}) continue;
    double h = 1.0;
    for (int k = 0; k < trunc.d; ++k)
      h *= table[static_cast<std::size_t>(k) * (trunc.N + 1) + static_cast<std::size_t>(indices[j][k])];
    acc += c[j] * h;
  }
  return acc;
}

CoeffArray harmonic_oscillator_apply(const CoeffArray& c, int n) {
  if (c.basis() != BasisTag::hermite)
    throw std::invalid_argument("harmonic_oscillator_apply: expects hermite coefficients");
  if (n < 0) throw std::invalid_argument("harmonic_oscillator_apply: negative power");
  CoeffArray out(c.trunc(), BasisTag::hermite);
  const auto indices = enumerate_indices(c.trunc());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const double ev = 2.0 * indices[j].degree() + c.trunc().d;
    out[j] = c[j] * std::pow(ev, n);
  }
  return out;
}

}  // namespace fockcalc
