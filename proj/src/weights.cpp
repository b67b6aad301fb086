#include "fockcalc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace fockcalc {

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Dense normal-equation solve for tiny least-squares systems.
// basis: rows of phi_j(t_i); returns coefficients minimizing ||A c - y||.
std::vector<double> least_squares(const std::vector<std::vector<double>>& A,
                                  const std::vector<double>& y) {
  const std::size_t n = A.size();
  const std::size_t p = A.front().size();
  std::vector<std::vector<double>> M(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      for (std::size_t k = 0; k < p; ++k) M[j][k] += A[i][j] * A[i][k];
      M[j][p] += A[i][j] * y[i];
    }
  // Gauss elimination with partial pivoting.
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < p; ++r)
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    std::swap(M[col], M[piv]);
    if (std::abs(M[col][col]) < 1e-30) return {};
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = M[r][col] / M[col][col];
      for (std::size_t k = col; k <= p; ++k) M[r][k] -= f * M[col][k];
    }
  }
  std::vector<double> c(p);
  for (std::size_t j = 0; j < p; ++j) c[j] = M[j][p] / M[j][j];
  return c;
}

double residual_of(const std::vector<std::vector<double>>& A,
                   const std::vector<double>& y, const std::vector<double>& c) {
  double s = 0.0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    double pred = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) pred += A[i][j] * c[j];
    s += (pred - y[i]) * (pred - y[i]);
  }
  return std::sqrt(s / static_cast<double>(A.size()));
}

}  // namespace

WeightFn WeightFn::one(int n) {
  return {n, [](std::span<const double>) { return 1.0; }, std::nullopt};
}

WeightFn WeightFn::polynomial(int n, double t) {
  WeightFn w{n, [t](std::span<const double> x) {
               const double r = norm2(x);
               return std::pow(1.0 + r * r, 0.5 * t);
             },
             std::nullopt};
  return w;
}

WeightFn WeightFn::exponential(int n, double r, double s) {
  return {n, [r, s](std::span<const double> x) {
            const double a = norm2(x);
            return std::exp(r * std::pow(a, 1.0 / s));
          },
          std::nullopt};
}

WeightFn WeightFn::gauss_quadratic(int n, double c) {
  return {n, [c](std::span<const double> x) {
            const double a = norm2(x);
            return std::exp(c * a * a);
          },
          std::nullopt};
}

WeightFn WeightFn::product(const WeightFn& a, const WeightFn& b) {
  if (a.dim != b.dim) throw std::invalid_argument("WeightFn::product: dimension mismatch");
  auto ea = a.eval;
  auto eb = b.eval;
  return {a.dim, [ea, eb](std::span<const double> x) { return ea(x) * eb(x); },
          std::nullopt};
}

WeightFn weight_from_preset(int n, const std::string& preset) {
  // Split on '*' for products.
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : preset) {
    if (ch == '*') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);

  auto single = [n](const std::string& p) -> WeightFn {
    std::vector<std::string> tok;
    std::string t;
    for (char ch : p) {
      if (ch == ':') {
        tok.push_back(t);
        t.clear();
      } else {
        t.push_back(ch);
      }
    }
    tok.push_back(t);
    const std::string& kind = tok[0];
    auto num = [&](std::size_t i) {
      if (i >= tok.size()) throw std::invalid_argument("weight preset: missing parameter in " + p);
      return std::stod(tok[i]);
    };
    if (kind == "one" || kind == "1") return WeightFn::one(n);
    if (kind == "poly") return WeightFn::polynomial(n, num(1));
    if (kind == "exp") return WeightFn::exponential(n, num(1), num(2));
    if (kind == "gaussq") return WeightFn::gauss_quadratic(n, num(1));
    throw std::invalid_argument("unknown weight preset: " + p);
  };

  WeightFn w = single(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) w = WeightFn::product(w, single(parts[i]));
  return w;
}

SeqWeightSpec seq_weight_from_preset(const std::string& preset) {
  std::vector<std::string> tok;
  std::string t;
  for (char ch : preset) {
    if (ch == ':') {
      tok.push_back(t);
      t.clear();
    } else {
      t.push_back(ch);
    }
  }
  tok.push_back(t);
  if (tok.size() != 3)
    throw std::invalid_argument("sequence weight preset: expected kind:r:scale");
  const double r = std::stod(tok[1]);
  const double scale = std::stod(tok[2]);
  if (tok[0] == "exp") return SeqWeightSpec::power_exp(r, scale);
  if (tok[0] == "flatsig") return SeqWeightSpec::flat(r, scale);
  throw std::invalid_argument("unknown sequence weight preset: " + tok[0]);
}

double seq_weight_log(const SeqWeightSpec& spec, const MultiIndex& alpha) {
  if (spec.r <= 0.0) throw std::invalid_argument("seq_weight: r must be positive");
  if (spec.s_or_sigma <= 0.0)
    throw std::invalid_argument("seq_weight: scale parameter must be positive");
  const double m = alpha.degree();
  if (spec.kind == SeqWeightSpec::Kind::power_exponential)
    return spec.r * std::pow(m, 1.0 / (2.0 * spec.s_or_sigma));
  return m * std::log(spec.r) + log_factorial(alpha) / (2.0 * spec.s_or_sigma);
}

double seq_weight_eval(const SeqWeightSpec& spec, const MultiIndex& alpha) {
  return std::exp(seq_weight_log(spec, alpha));
}

double kappa_eval(KappaKind which, double r, const ScaleIndex& s,
                  std::span<const cplx> z) {
  if (r <= 0.0) throw std::invalid_argument("kappa_eval: r must be positive");
  double a2 = 0.0;
  for (const cplx& v : z) a2 += std::norm(v);
  const double a = std::sqrt(a2);
  if (which == KappaKind::k1) {
    if (s.flat) {
      const double sigma = s.value;
      if (sigma <= 0.0) throw std::invalid_argument("kappa_eval: sigma must be positive");
      return std::exp(r * std::pow(a, 2.0 * sigma / (sigma + 1.0)));
    }
    if (s.value < 0.5) {
      const double lz = std::log(std::sqrt(1.0 + a2));
      return std::exp(r * std::pow(lz, 1.0 / (1.0 - 2.0 * s.value)));
    }
    return std::exp(0.5 * a2 - r * std::pow(a, 1.0 / s.value));
  }
  // k2
  if (s.flat) {
    const double sigma = s.value;
    if (sigma <= 1.0)
      throw std::invalid_argument("kappa_eval: k2 flat scale requires sigma > 1");
    return std::exp(r * std::pow(a, 2.0 * sigma / (sigma - 1.0)));
  }
  if (s.value < 0.5)
    throw std::invalid_argument("kappa_eval: k2 requires s >= 1/2 or a flat scale");
  return std::exp(0.5 * a2 + r * std::pow(a, 1.0 / s.value));
}

ModerateResult moderate_check(const WeightFn& omega, const WeightFn& v,
                              std::span<const double> radii, int points_per_axis) {
  const std::vector<double> default_radii{4.0, 8.0, 16.0};
  std::span<const double> Rs = radii.empty() ? std::span<const double>(default_radii) : radii;
  const int n = omega.dim;
  if (v.dim != n) throw std::invalid_argument("moderate_check: dimension mismatch");

  ModerateResult res;
  res.worst_x.assign(static_cast<std::size_t>(n), 0.0);
  res.worst_y.assign(static_cast<std::size_t>(n), 0.0);
  double global_max = 0.0;

  for (double R : Rs) {
    // Lattice of points per radius; pairs (x, y) probed exhaustively.
    std::vector<std::vector<double>> pts;
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    const int P = points_per_axis;
    std::size_t total = 1;
    for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(P);
    pts.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      std::vector<double> p(static_cast<std::size_t>(n));
      for (int k = n - 1; k >= 0; --k) {
        const int i = static_cast<int>(rem % static_cast<std::size_t>(P));
        rem /= static_cast<std::size_t>(P);
        p[static_cast<std::size_t>(k)] = -R + 2.0 * R * i / (P - 1);
      }
      pts.push_back(std::move(p));
    }
    double radius_max = 0.0;
    std::vector<double> xy(static_cast<std::size_t>(n));
    for (const auto& x : pts)
      for (const auto& y : pts) {
        for (int k = 0; k < n; ++k) xy[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + y[static_cast<std::size_t>(k)];
        const double ratio = omega(xy) / (omega(x) * v(y));
        if (ratio > radius_max) radius_max = ratio;
        if (ratio > global_max) {
          global_max = ratio;
          res.worst_x = x;
          res.worst_y = y;
        }
      }
    res.per_radius_max.push_back(radius_max);
  }

  // Escalation of the max ratio across scales signals an unbounded pair.
  const std::size_t m = res.per_radius_max.size();
  bool escalating = false;
  if (m >= 2) {
    const double last = res.per_radius_max[m - 1];
    const double prev = res.per_radius_max[m - 2];
    escalating = last > 1.5 * prev && last > 1.5 * res.per_radius_max[0];
  }
  res.accepted = !escalating;
  res.C = global_max;
  return res;
}

std::string GrowthClass::label() const {
  std::ostringstream os;
  switch (family) {
    case Family::finite:
      return "finite";
    case Family::power_exp_decay:
      os << "power-exp decay (s=" << parameter << ", r=" << rate << ")";
      break;
    case Family::power_exp_growth:
      os << "power-exp growth (s=" << parameter << ", r=" << rate << ")";
      break;
    case Family::flat_decay:
      os << "flat decay (sigma=" << parameter << ", r=" << rate << ")";
      break;
    case Family::flat_growth:
      os << "flat growth (sigma=" << parameter << ", r=" << rate << ")";
      break;
  }
  if (side_undetermined) os << " [side undetermined]";
  return os.str();
}

GrowthClass classify_growth(const CoeffArray& c) {
  const TruncationSpec& trunc = c.trunc();
  const auto indices = enumerate_indices(trunc);

  // Per-shell maxima and the factorial of the attaining index.
  std::vector<double> shell_max(static_cast<std::size_t>(trunc.N) + 1, 0.0);
  std::vector<double> shell_logfact(static_cast<std::size_t>(trunc.N) + 1, 0.0);
  double global_max = 0.0;
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const double a = std::abs(c[k]);
    const int m = indices[k].degree();
    if (a > shell_max[static_cast<std::size_t>(m)]) {
      shell_max[static_cast<std::size_t>(m)] = a;
      shell_logfact[static_cast<std::size_t>(m)] = log_factorial(indices[k]);
    }
    global_max = std::max(global_max, a);
  }

  GrowthClass out;
  if (global_max <= 0.0) return out;  // identically zero: finite

  const double floor = 1e-15 * global_max;
  std::vector<double> ms, ys, lf;
  for (int m = 0; m <= trunc.N; ++m)
    if (shell_max[static_cast<std::size_t>(m)] > floor) {
      ms.push_back(static_cast<double>(m));
      ys.push_back(std::log(shell_max[static_cast<std::size_t>(m)]));
      lf.push_back(shell_logfact[static_cast<std::size_t>(m)]);
    }

  if (ms.size() < 8) return out;  // finite expansion (or too short to diagnose)

  struct Fit {
    GrowthClass::Family family;
    double parameter, rate, residual;
  };
  std::vector<Fit> fits;

  // Power-exponential models: log M = a -/+ r m^u, scanned over u = 1/(2s).
  auto fit_power = [&](bool decay) {
    double best_res = 1e300, best_u = 0.0, best_r = 0.0;
    for (double u = 0.15; u <= 3.0 + 1e-9; u += 0.0125) {
      std::vector<std::vector<double>> A;
      for (double m : ms) A.push_back({1.0, std::pow(m, u)});
      const auto coef = least_squares(A, ys);
      if (coef.empty()) continue;
      const double r = decay ? -coef[1] : coef[1];
      if (r <= 1e-6) continue;
      const double res = residual_of(A, ys, coef);
      if (res < best_res) {
        best_res = res;
        best_u = u;
        best_r = r;
      }
    }
    if (best_u > 0.0)
      fits.push_back({decay ? GrowthClass::Family::power_exp_decay
                            : GrowthClass::Family::power_exp_growth,
                      1.0 / (2.0 * best_u), best_r, best_res});
  };
  fit_power(true);
  fit_power(false);

  // Flat models: log M = a + m log r +/- L_m / (2 sigma).
  {
    std::vector<std::vector<double>> A;
    for (std::size_t i = 0; i < ms.size(); ++i) A.push_back({1.0, ms[i], lf[i]});
    const auto coef = least_squares(A, ys);
    if (!coef.empty() && std::abs(coef[2]) > 0.02) {
      const double res = residual_of(A, ys, coef);
      if (coef[2] < 0.0)
        fits.push_back({GrowthClass::Family::flat_decay, -1.0 / (2.0 * coef[2]),
                        std::exp(coef[1]), res});
      else
        fits.push_back({GrowthClass::Family::flat_growth, 1.0 / (2.0 * coef[2]),
                        std::exp(coef[1]), res});
    }
  }

  if (fits.empty()) return out;
  const Fit& best =
      *std::min_element(fits.begin(), fits.end(),
                        [](const Fit& a, const Fit& b) { return a.residual < b.residual; });
  out.family = best.family;
  out.parameter = best.parameter;
  out.rate = best.rate;
  out.residual = best.residual;
  return out;
}

StftDecayFit classify_gs_via_stft(const GridField& stft_magnitude) {
  const GridField& g = stft_magnitude;
  const int axes = g.axes();
  if (axes % 2 != 0) throw std::invalid_argument("classify_gs_via_stft: needs an even axis count");
  const int d = axes / 2;

  double vmax = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) vmax = std::max(vmax, std::abs(g[k]));
  if (vmax <= 0.0) throw std::invalid_argument("classify_gs_via_stft: no dynamic range");
  const double floor = std::max(1e-13, 1e-13 * vmax);

  std::vector<double> xs, fs, ys;  // |x|, |xi|, log|V|
  std::vector<double> pt(static_cast<std::size_t>(axes));
  double vmin_used = vmax;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double a = std::abs(g[k]);
    if (a <= floor) continue;
    g.node_point(k, pt);
    double x2 = 0.0, f2 = 0.0;
    for (int j = 0; j < d; ++j) x2 += pt[static_cast<std::size_t>(j)] * pt[static_cast<std::size_t>(j)];
    for (int j = d; j < axes; ++j) f2 += pt[static_cast<std::size_t>(j)] * pt[static_cast<std::size_t>(j)];
    xs.push_back(std::sqrt(x2));
    fs.push_back(std::sqrt(f2));
    ys.push_back(std::log(a));
    vmin_used = std::min(vmin_used, a);
  }
  if (xs.size() < 16 || vmax / vmin_used < 1e3)
    throw std::invalid_argument("classify_gs_via_stft: insufficient dynamic range");

  StftDecayFit best;
  best.residual = 1e300;
  for (double s = 0.2; s <= 2.0 + 1e-9; s += 0.01) {
    const double u = 1.0 / s;
    std::vector<std::vector<double>> A;
    A.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      A.push_back({1.0, -(std::pow(xs[i], u) + std::pow(fs[i], u))});
    const auto coef = least_squares(A, ys);
    if (coef.empty() || coef[1] <= 0.0) continue;
    const double res = residual_of(A, ys, coef);
    if (res < best.residual) {
      best.residual = res;
      best.s = s;
      best.r = coef[1];
    }
  }
  if (best.residual >= 1e300)
    throw std::runtime_error("classify_gs_via_stft: no admissible decay fit");
  return best;
}

}  // namespace fockcalc
