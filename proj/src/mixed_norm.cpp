#include "fockcalc/mixed_norm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fockcalc/parallel.hpp"

namespace fockcalc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = 1.4142135623730951;

double det_nxn(std::vector<double> M, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(M[static_cast<std::size_t>(r * n + col)]) >
          std::abs(M[static_cast<std::size_t>(piv * n + col)]))
        piv = r;
    if (piv != col) {
      for (int k = 0; k < n; ++k)
        std::swap(M[static_cast<std::size_t>(col * n + k)], M[static_cast<std::size_t>(piv * n + k)]);
      det = -det;
    }
    const double pv = M[static_cast<std::size_t>(col * n + col)];
    if (std::abs(pv) < 1e-14) return 0.0;
    det *= pv;
    for (int r = col + 1; r < n; ++r) {
      const double f = M[static_cast<std::size_t>(r * n + col)] / pv;
      for (int k = col; k < n; ++k)
        M[static_cast<std::size_t>(r * n + k)] -= f * M[static_cast<std::size_t>(col * n + k)];
    }
  }
  return det;
}

// Signed permutation detection: returns per-row (axis, sign) of the single
// nonzero entry, or empty if T is not a signed permutation.
std::vector<std::pair<int, int>> signed_permutation(const std::vector<double>& T, int n) {
  std::vector<std::pair<int, int>> map;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int r = 0; r < n; ++r) {
    int hit = -1, sign = 0;
    for (int c = 0; c < n; ++c) {
      const double v = T[static_cast<std::size_t>(r * n + c)];
      if (v == 0.0) continue;
      if (v == 1.0 || v == -1.0) {
        if (hit >= 0) return {};
        hit = c;
        sign = v > 0 ? 1 : -1;
      } else {
        return {};
      }
    }
    if (hit < 0 || used[static_cast<std::size_t>(hit)]) return {};
    used[static_cast<std::size_t>(hit)] = true;
    map.emplace_back(hit, sign);
  }
  return map;
}

}  // namespace

MixedNormSpec MixedNormSpec::uniform(int n, double p) {
  MixedNormSpec s;
  s.n = n;
  s.p.assign(static_cast<std::size_t>(n), p);
  return s;
}

MixedNormSpec MixedNormSpec::lpq(int d, double p, double q) {
  MixedNormSpec s;
  s.n = 2 * d;
  s.p.assign(static_cast<std::size_t>(2 * d), p);
  for (int k = d; k < 2 * d; ++k) s.p[static_cast<std::size_t>(k)] = q;
  return s;
}

MixedNormSpec MixedNormSpec::lpq_star(int d, double p, double q) {
  MixedNormSpec s;
  s.n = 2 * d;
  s.p.assign(static_cast<std::size_t>(2 * d), q);
  for (int k = d; k < 2 * d; ++k) s.p[static_cast<std::size_t>(k)] = p;
  // Basis columns: xi axes first, then x axes.
  s.T.assign(static_cast<std::size_t>(4 * d * d), 0.0);
  const int n = 2 * d;
  for (int j = 0; j < d; ++j) {
    s.T[static_cast<std::size_t>((d + j) * n + j)] = 1.0;  // column j = e_{d+j}
    s.T[static_cast<std::size_t>(j * n + (d + j))] = 1.0;  // column d+j = e_j
  }
  return s;
}

bool MixedNormSpec::identity_basis() const {
  if (T.empty()) return true;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (T[static_cast<std::size_t>(r * n + c)] != (r == c ? 1.0 : 0.0)) return false;
  return true;
}

MixedNormSpec MixedNormSpec::dual() const {
  MixedNormSpec s = *this;
  for (double& pk : s.p) {
    if (pk == kInf)
      pk = 1.0;
    else if (pk == 1.0)
      pk = kInf;
    else
      pk = pk / (pk - 1.0);
  }
  return s;
}

MixedNormSpec norm_spec_from_string(int n, const std::string& text) {
  auto parse_exponent = [](const std::string& t) -> double {
    if (t == "inf" || t == "Inf" || t == "INF") return kInf;
    return std::stod(t);
  };
  if (text.rfind("Lpq*(", 0) == 0 || text.rfind("Lpq(", 0) == 0) {
    const bool star = text[3] == '*';
    const std::size_t open = text.find('(');
    const std::size_t close = text.find(')');
    if (close == std::string::npos) throw std::invalid_argument("norm spec: missing )");
    const std::string body = text.substr(open + 1, close - open - 1);
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("norm spec: need p,q");
    const double p = parse_exponent(body.substr(0, comma));
    const double q = parse_exponent(body.substr(comma + 1));
    if (n % 2 != 0) throw std::invalid_argument("norm spec: Lpq needs an even axis count");
    return star ? MixedNormSpec::lpq_star(n / 2, p, q) : MixedNormSpec::lpq(n / 2, p, q);
  }
  // "p=...;E=I" form
  MixedNormSpec s;
  s.n = n;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.rfind("p=", 0) == 0) {
      std::stringstream ps(part.substr(2));
      std::string tok;
      while (std::getline(ps, tok, ',')) s.p.push_back(parse_exponent(tok));
    } else if (part.rfind("E=", 0) == 0) {
      if (part.substr(2) != "I")
        throw std::invalid_argument("norm spec: only E=I or Lpq presets are parsed");
    } else if (!part.empty()) {
      throw std::invalid_argument("norm spec: unknown clause " + part);
    }
  }
  if (static_cast<int>(s.p.size()) != n)
    throw std::invalid_argument("norm spec: exponent count does not match axes");
  return s;
}

double mixed_norm(const GridField& F, const MixedNormSpec& spec) {
  if (spec.n != F.axes()) throw std::invalid_argument("mixed_norm: axis count mismatch");
  for (double pk : spec.p)
    if (!(pk >= 1.0)) throw std::invalid_argument("mixed_norm: exponents must be in [1,inf]");

  const int n = F.axes();
  const int nn = F.nodes_per_axis();
  std::vector<double> mag(F.size());

  if (spec.identity_basis()) {
    for (std::size_t k = 0; k < F.size(); ++k) mag[k] = std::abs(F[k]);
  } else {
    if (std::abs(det_nxn(spec.T, n)) < 1e-12)
      throw std::invalid_argument("mixed_norm: basis matrix not invertible");
    const auto perm = signed_permutation(spec.T, n);
    exec::OpenMp par;
    if (!perm.empty()) {
      // Pure index remap: coordinate c along basis axis r reads source axis
      // perm[r].first with orientation perm[r].second.
      par(static_cast<std::int64_t>(F.size()), [&](std::int64_t flat) {
        int idx[6], src[6];
        F.unflatten(static_cast<std::size_t>(flat), std::span<int>(idx, static_cast<std::size_t>(n)));
        for (int r = 0; r < n; ++r) {
          const auto [axis, sign] = perm[static_cast<std::size_t>(r)];
          src[axis] = sign > 0 ? idx[r] : nn - 1 - idx[r];
        }
        mag[static_cast<std::size_t>(flat)] =
            std::abs(F.at(std::span<const int>(src, static_cast<std::size_t>(n))));
      });
    } else {
      par(static_cast<std::int64_t>(F.size()), [&](std::int64_t flat) {
        double c[6], x[6];
        F.node_point(static_cast<std::size_t>(flat), std::span<double>(c, static_cast<std::size_t>(n)));
        for (int r = 0; r < n; ++r) {
          double s = 0.0;
          for (int j = 0; j < n; ++j) s += spec.T[static_cast<std::size_t>(r * n + j)] * c[j];
          x[r] = s;
        }
        const std::span<const double> xs(x, static_cast<std::size_t>(n));
        mag[static_cast<std::size_t>(flat)] = F.contains(xs) ? std::abs(F.interpolate(xs)) : 0.0;
      });
    }
  }

  // Reduce the slowest axis first: that is basis coordinate x_1.
  std::size_t block = mag.size() / static_cast<std::size_t>(nn);
  for (int axis = 0; axis < n; ++axis) {
    const double pk = spec.p[static_cast<std::size_t>(axis)];
    std::vector<double> next(block, 0.0);
    if (pk == kInf) {
      for (std::size_t i = 0; i < static_cast<std::size_t>(nn); ++i)
        for (std::size_t j = 0; j < block; ++j)
          next[j] = std::max(next[j], mag[i * block + j]);
    } else {
      for (std::size_t i = 0; i < static_cast<std::size_t>(nn); ++i)
        for (std::size_t j = 0; j < block; ++j)
          next[j] += std::pow(mag[i * block + j], pk);
      const double scale = F.step();
      for (std::size_t j = 0; j < block; ++j) next[j] = std::pow(scale * next[j], 1.0 / pk);
    }
    mag = std::move(next);
    block /= static_cast<std::size_t>(nn);
    if (axis == n - 1) break;
  }
  return mag[0];
}

SymplecticReport symplectic_check(std::span<const std::vector<double>> e,
                                  std::span<const std::vector<double>> eps, double tol) {
  if (e.size() != eps.size() || e.empty())
    throw std::invalid_argument("symplectic_check: need d vectors in each group");
  const int d = static_cast<int>(e.size());
  const int n = 2 * d;
  for (const auto& v : e)
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("symplectic_check: vectors must live in R^{2d}");
  for (const auto& v : eps)
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("symplectic_check: vectors must live in R^{2d}");

  auto sigma = [d](const std::vector<double>& X, const std::vector<double>& Y) {
    double s = 0.0;
    for (int k = 0; k < d; ++k)
      s += Y[static_cast<std::size_t>(k)] * X[static_cast<std::size_t>(d + k)] -
           X[static_cast<std::size_t>(k)] * Y[static_cast<std::size_t>(d + k)];
    return s;
  };

  SymplecticReport rep;
  double worst = 0.0;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      worst = std::max(worst, std::abs(sigma(e[static_cast<std::size_t>(j)], e[static_cast<std::size_t>(k)])));
      worst = std::max(worst, std::abs(sigma(eps[static_cast<std::size_t>(j)], eps[static_cast<std::size_t>(k)])));
      const double cross = sigma(e[static_cast<std::size_t>(j)], eps[static_cast<std::size_t>(k)]);
      worst = std::max(worst, std::abs(cross - (j == k ? -1.0 : 0.0)));
    }
  rep.max_violation = worst;
  rep.symplectic = worst <= tol;

  // Phase split: e's span {(x,0)}, eps's span {(0,xi)}.
  auto spans_half = [&](std::span<const std::vector<double>> grp, bool x_half) {
    std::vector<std::vector<double>> rows;
    for (const auto& v : grp) {
      for (int k = 0; k < d; ++k) {
        const double off = x_half ? v[static_cast<std::size_t>(d + k)] : v[static_cast<std::size_t>(k)];
        if (std::abs(off) > tol) return false;
      }
      std::vector<double> r(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k)
        r[static_cast<std::size_t>(k)] = x_half ? v[static_cast<std::size_t>(k)] : v[static_cast<std::size_t>(d + k)];
      rows.push_back(std::move(r));
    }
    // Rank d check by elimination.
    int rank = 0;
    for (int col = 0; col < d && rank < d; ++col) {
      int piv = -1;
      for (int r = rank; r < d; ++r)
        if (std::abs(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) > tol) {
          piv = r;
          break;
        }
      if (piv < 0) continue;
      std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(piv)]);
      for (int r = 0; r < d; ++r) {
        if (r == rank) continue;
        const double f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                         rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int k = 0; k < d; ++k)
          rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -=
              f * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
      }
      ++rank;
    }
    return rank == d;
  };
  rep.phase_split = rep.symplectic && spans_half(e, true) && spans_half(eps, false);
  return rep;
}

double modulation_norm_field(const GridField& stft, const MixedNormSpec& spec,
                             const WeightFn& omega) {
  GridField weighted = stft;
  exec::OpenMp par;
  par(static_cast<std::int64_t>(weighted.size()), [&](std::int64_t flat) {
    double pt[6];
    weighted.node_point(static_cast<std::size_t>(flat),
                        std::span<double>(pt, static_cast<std::size_t>(weighted.axes())));
    weighted[static_cast<std::size_t>(flat)] *=
        omega(std::span<const double>(pt, static_cast<std::size_t>(weighted.axes())));
  });
  return mixed_norm(weighted, spec);
}

double modulation_norm(const RealFn& f, int d, const MixedNormSpec& spec,
                       const WeightFn& omega, double R, double h,
                       const QuadratureRule& rule) {
  return modulation_norm_field(stft_gaussian(f, d, R, h, rule), spec, omega);
}

namespace {

double fock_norm_impl(const ComplexFn& F, int d, const MixedNormSpec& spec,
                      const WeightFn& omega, double R, double h) {
  GridField H = GridField::sample(d, 2 * d, R, h, [&](std::span<const double> pt) {
    const std::span<const double> u(pt.data(), static_cast<std::size_t>(d));
    const std::span<const double> v(pt.data() + d, static_cast<std::size_t>(d));
    return uv_inverse_point(F, u, v) * omega(pt);
  });
  return mixed_norm(H, spec);
}

}  // namespace

double fock_norm(const CoeffArray& F_fock, const MixedNormSpec& spec,
                 const WeightFn& omega, double R, double h) {
  const int d = F_fock.trunc().d;
  return fock_norm_impl([&](std::span<const cplx> z) { return fock_eval(F_fock, z); }, d,
                        spec, omega, R, h);
}

double fock_norm(const GridField& F, const MixedNormSpec& spec, const WeightFn& omega,
                 double R, double h) {
  if (F.axes() % 2 != 0) throw std::invalid_argument("fock_norm: field needs 2d axes");
  const int d = F.axes() / 2;
  return fock_norm_impl(
      [&](std::span<const cplx> z) {
        double pt[6];
        for (int k = 0; k < d; ++k) {
          pt[k] = z[static_cast<std::size_t>(k)].real();
          pt[k + d] = z[static_cast<std::size_t>(k)].imag();
        }
        const std::span<const double> xs(pt, static_cast<std::size_t>(2 * d));
        return F.contains(xs) ? F.interpolate(xs) : cplx{0.0, 0.0};
      },
      d, spec, omega, R, h);
}

double b_norm_closed_form(const CoeffArray& F_fock, double p, const WeightFn& omega,
                          double R, double h) {
  const int d = F_fock.trunc().d;
  GridField H = GridField::sample(d, 2 * d, R, h, [&](std::span<const double> pt) {
    cplx z[3];
    double q = 0.0;
    double warg[6];
    for (int k = 0; k < d; ++k) {
      z[k] = cplx{pt[static_cast<std::size_t>(k)], pt[static_cast<std::size_t>(k + d)]};
      q += std::norm(z[k]);
      warg[k] = kSqrt2 * pt[static_cast<std::size_t>(k)];
      warg[k + d] = -kSqrt2 * pt[static_cast<std::size_t>(k + d)];
    }
    return std::exp(-0.5 * q) *
           fock_eval(F_fock, std::span<const cplx>(z, static_cast<std::size_t>(d))) *
           omega(std::span<const double>(warg, static_cast<std::size_t>(2 * d)));
  });
  const double norm = mixed_norm(H, MixedNormSpec::uniform(2 * d, p));
  const double pref = (p == kInf) ? 1.0 : std::pow(2.0, d / p);
  return pref * std::pow(2.0 * kPi, -0.5 * d) * norm;
}

}  // namespace fockcalc
