#include "fockcalc/apdo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fockcalc/parallel.hpp"
#include "fockcalc/random_fields.hpp"
#include "json.hpp"

namespace fockcalc {

namespace {

// Shared inner loop of the lower-index sum; Exec picks the schedule.
template <class Exec>
KernelCoeff t0t_impl(const KernelCoeff& c, cplx t, Exec run) {
  const auto rows = enumerate_indices(c.side_z());
  const auto cols = enumerate_indices(c.side_w());
  const int d = c.side_z().d;
  const int maxdeg = c.side_z().N + c.side_w().N;
  std::vector<cplx> tpow(static_cast<std::size_t>(maxdeg) + 1);
  tpow[0] = cplx{1.0, 0.0};
  for (int n = 1; n <= maxdeg; ++n) tpow[static_cast<std::size_t>(n)] = tpow[static_cast<std::size_t>(n) - 1] * t;

  KernelCoeff out(c.side_z(), c.side_w(), c.interp());
  run(static_cast<std::int64_t>(rows.size() * cols.size()), [&](std::int64_t cell) {
    const std::size_t i = static_cast<std::size_t>(cell) / cols.size();
    const std::size_t j = static_cast<std::size_t>(cell) % cols.size();
    const MultiIndex& alpha = rows[i];
    const MultiIndex& beta = cols[j];
    MultiIndex cap = MultiIndex::zero(d);
    for (int k = 0; k < d; ++k) cap[k] = std::min(alpha[k], beta[k]);

    // Extended-precision accumulator: the summands span many orders of
    // magnitude when |t| > 1 and the binomial weights grow.
    std::complex<long double> acc{0.0L, 0.0L};
    MultiIndex gamma = MultiIndex::zero(d);
    // Odometer sweep over gamma <= cap.
    for (;;) {
      const int g = gamma.degree();
      const long double w =
          sqrtl(static_cast<long double>(binomial(alpha, gamma)) *
                static_cast<long double>(binomial(beta, gamma)));
      const cplx src = c.at(alpha.minus(gamma), beta.minus(gamma));
      const cplx tp = tpow[static_cast<std::size_t>(g)];
      acc += std::complex<long double>(src.real(), src.imag()) *
             std::complex<long double>(tp.real(), tp.imag()) * w;
      int k = d - 1;
      while (k >= 0) {
        if (gamma[k] < cap[k]) {
          ++gamma[k];
          break;
        }
        gamma[k] = 0;
        --k;
      }
      if (k < 0) break;
    }
    out(i, j) = cplx{static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  });
  return out;
}

}  // namespace

KernelCoeff t0t_transform(const KernelCoeff& c, cplx t) {
  return t0t_impl(c, t, exec::OpenMp{});
}

KernelCoeff symbol_to_kernel(const KernelCoeff& a) {
  if (a.interp() != KernelInterp::symbol)
    throw std::invalid_argument("symbol_to_kernel: expects a symbol tensor");
  return t0t_transform(a, cplx{1.0, 0.0}).retagged(KernelInterp::kernel);
}

KernelCoeff kernel_to_symbol(const KernelCoeff& K) {
  if (K.interp() != KernelInterp::kernel)
    throw std::invalid_argument("kernel_to_symbol: expects a kernel tensor");
  return t0t_transform(K, cplx{-1.0, 0.0}).retagged(KernelInterp::symbol);
}

cplx kernel_coeff_eval(const KernelCoeff& k, std::span<const cplx> z,
                       std::span<const cplx> w) {
  const TruncationSpec& sz = k.side_z();
  const TruncationSpec& sw = k.side_w();
  if (static_cast<int>(z.size()) != sz.d || static_cast<int>(w.size()) != sw.d)
    throw std::invalid_argument("kernel_coeff_eval: dimension mismatch");

  auto ladder = [](std::span<const cplx> v, int N, bool conj) {
    const int d = static_cast<int>(v.size());
    std::vector<cplx> out(static_cast<std::size_t>(d) * (N + 1));
    for (int k2 = 0; k2 < d; ++k2) {
      const cplx base = conj ? std::conj(v[static_cast<std::size_t>(k2)]) : v[static_cast<std::size_t>(k2)];
      out[static_cast<std::size_t>(k2) * (N + 1)] = cplx{1.0, 0.0};
      for (int n = 1; n <= N; ++n)
        out[static_cast<std::size_t>(k2) * (N + 1) + static_cast<std::size_t>(n)] =
            base * out[static_cast<std::size_t>(k2) * (N + 1) + static_cast<std::size_t>(n) - 1] /
            std::sqrt(static_cast<double>(n));
    }
    return out;
  };
  const auto ez = ladder(z, sz.N, false);
  const auto ew = ladder(w, sw.N, true);

  const auto rows = enumerate_indices(sz);
  const auto cols = enumerate_indices(sw);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    cplx zi{1.0, 0.0};
    for (int k2 = 0; k2 < sz.d; ++k2)
      zi *= ez[static_cast<std::size_t>(k2) * (sz.N + 1) + static_cast<std::size_t>(rows[i][k2])];
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (k(i, j) == cplx{0.0, 0.0}) continue;
      cplx wj{1.0, 0.0};
      for (int k2 = 0; k2 < sw.d; ++k2)
        wj *= ew[static_cast<std::size_t>(k2) * (sw.N + 1) + static_cast<std::size_t>(cols[j][k2])];
      acc += k(i, j) * zi * wj;
    }
  }
  return acc;
}

double certified_radius(int N, double tmax, double tol) {
  if (tmax < 1e-12) return 1e6;  // the multiplier degenerates to 1
  auto tail = [&](double rho) {
    const double x = tmax * rho * rho;
    double term = 1.0, sum = 0.0;
    for (int n = 1; n <= N; ++n) term *= x / n;
    for (int n = N + 1; n <= N + 400; ++n) {
      term *= x / n;
      sum += term;
      if (term < 1e-300) break;
    }
    return sum;
  };
  double lo = 0.0, hi = std::sqrt(static_cast<double>(std::max(N, 1)) / std::max(tmax, 1e-12));
  while (tail(hi) < tol) hi *= 1.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tail(mid) < tol)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double tt_pointwise_check(const KernelCoeff& a, cplx t,
                          std::span<const std::pair<cplx, cplx>> probes) {
  if (a.side_z().d != 1 || a.side_w().d != 1)
    throw std::invalid_argument("tt_pointwise_check: pointwise probes are d=1 only");
  const double rho = certified_radius(std::min(a.side_z().N, a.side_w().N), std::abs(t));
  for (const auto& [z, w] : probes)
    if (std::abs(z) > rho || std::abs(w) > rho)
      throw std::invalid_argument("tt_pointwise_check: probe outside certified radius");

  const KernelCoeff ta = t0t_transform(a, t);
  double worst = 0.0;
  for (const auto& [z, w] : probes) {
    const cplx zs[1] = {z};
    const cplx ws[1] = {w};
    const cplx lhs = kernel_coeff_eval(ta, zs, ws);
    const cplx pairing = z * std::conj(w);
    const cplx rhs = std::exp(t * pairing) * kernel_coeff_eval(a, zs, ws);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

CoeffArray kernel_apply(const KernelCoeff& K, const CoeffArray& F) {
  if (F.basis() != BasisTag::fock)
    throw std::invalid_argument("kernel_apply: expects fock coefficients");
  if (!(F.trunc() == K.side_w()))
    throw std::invalid_argument("kernel_apply: truncation mismatch");
  CoeffArray out(K.side_z(), BasisTag::fock);
  const std::size_t rows = K.rows();
  const std::size_t cols = K.cols();
  exec::OpenMp par;
  par(static_cast<std::int64_t>(rows), [&](std::int64_t i) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < cols; ++j) acc += K(static_cast<std::size_t>(i), j) * F[j];
    out[static_cast<std::size_t>(i)] = acc;
  });
  return out;
}

CoeffArray apdo_apply(const KernelCoeff& a, const CoeffArray& F) {
  return kernel_apply(symbol_to_kernel(a), F);
}

GaussianBoundReport gaussian_bound_check(const KernelCoeff& a, double s, double r,
                                         BoundSide side,
                                         std::span<const std::pair<cplx, cplx>> probes,
                                         double threshold) {
  if (s < 0.5) throw std::invalid_argument("gaussian_bound_check: needs s >= 1/2");
  GaussianBoundReport rep;
  const double sign = side == BoundSide::minus ? -1.0 : 1.0;
  for (const auto& [z, w] : probes) {
    const cplx zs[1] = {z};
    const cplx ws[1] = {w};
    const double av = std::abs(kernel_coeff_eval(a, zs, ws));
    const double bound = std::exp(0.5 * std::norm(z - w) +
                                  sign * r * (std::pow(std::abs(z), 1.0 / s) +
                                              std::pow(std::abs(w), 1.0 / s)));
    rep.worst_ratio = std::max(rep.worst_ratio, av / bound);
  }
  rep.holds = rep.worst_ratio <= threshold * (1.0 + 1e-12);
  return rep;
}

BlockMatrixC::BlockMatrixC(int d, std::vector<double> c11, std::vector<double> c12,
                           std::vector<double> c21, std::vector<double> c22)
    : d_(d) {
  const std::size_t sz = static_cast<std::size_t>(4 * d * d);
  if (c11.size() != sz || c12.size() != sz || c21.size() != sz || c22.size() != sz)
    throw std::invalid_argument("BlockMatrixC: blocks must be 2d x 2d");
  blocks_[0] = std::move(c11);
  blocks_[1] = std::move(c12);
  blocks_[2] = std::move(c21);
  blocks_[3] = std::move(c22);
}

namespace {
double dense_det(std::vector<double> M, int n) {
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
    if (pv == 0.0) return 0.0;
    det *= pv;
    for (int r = col + 1; r < n; ++r) {
      const double f = M[static_cast<std::size_t>(r * n + col)] / pv;
      for (int k = col; k < n; ++k)
        M[static_cast<std::size_t>(r * n + k)] -= f * M[static_cast<std::size_t>(col * n + k)];
    }
  }
  return det;
}
}  // namespace

double BlockMatrixC::det_block(int which) const {
  return dense_det(blocks_[which], 2 * d_);
}

double BlockMatrixC::det_full() const {
  const int n = 2 * d_;
  std::vector<double> M(static_cast<std::size_t>(4 * n * n), 0.0);
  for (int b = 0; b < 4; ++b) {
    const int row0 = (b / 2) * n;
    const int col0 = (b % 2) * n;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        M[static_cast<std::size_t>((row0 + r) * 2 * n + col0 + c)] =
            blocks_[b][static_cast<std::size_t>(r * n + c)];
  }
  return dense_det(std::move(M), 2 * n);
}

bool BlockMatrixC::cond1(double tol) const {
  return std::abs(det_full()) > tol && std::abs(det_block(0) * det_block(2)) > tol;
}

bool BlockMatrixC::cond2(double tol) const {
  return std::abs(det_full()) > tol && std::abs(det_block(1) * det_block(3)) > tol;
}

bool BlockMatrixC::invertible(double tol) const { return std::abs(det_full()) > tol; }

void BlockMatrixC::apply(std::span<const double> in, std::span<double> out) const {
  const int n = 2 * d_;
  if (static_cast<int>(in.size()) != 2 * n || static_cast<int>(out.size()) != 2 * n)
    throw std::invalid_argument("BlockMatrixC::apply: vector length must be 4d");
  for (int half = 0; half < 2; ++half)
    for (int r = 0; r < n; ++r) {
      double acc = 0.0;
      for (int c = 0; c < n; ++c) {
        acc += blocks_[half * 2][static_cast<std::size_t>(r * n + c)] * in[static_cast<std::size_t>(c)];
        acc += blocks_[half * 2 + 1][static_cast<std::size_t>(r * n + c)] * in[static_cast<std::size_t>(n + c)];
      }
      out[static_cast<std::size_t>(half * n + r)] = acc;
    }
}

namespace {
std::vector<double> eye(int n) {
  std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = 1.0;
  return m;
}
std::vector<double> zeros(int n) {
  return std::vector<double>(static_cast<std::size_t>(n * n), 0.0);
}
}  // namespace

BlockMatrixC BlockMatrixC::kernel_shift(int d) {
  return BlockMatrixC(d, eye(2 * d), zeros(2 * d), eye(2 * d), eye(2 * d));
}

BlockMatrixC BlockMatrixC::symbol_shift(int d) {
  return BlockMatrixC(d, eye(2 * d), eye(2 * d), zeros(2 * d), eye(2 * d));
}

BlockMatrixC BlockMatrixC::split_shift(int d) {
  const int n = 2 * d;
  std::vector<double> c12 = zeros(n), c22 = zeros(n);
  for (int i = 0; i < d; ++i) {
    c12[static_cast<std::size_t>((d + i) * n + d + i)] = 1.0;  // xi corner
    c22[static_cast<std::size_t>(i * n + i)] = 1.0;            // x corner
  }
  return BlockMatrixC(d, eye(n), std::move(c12), eye(n), std::move(c22));
}

GridField g_kco_build(const KernelCoeff& K, const BlockMatrixC& C, const WeightFn& omega,
                      double R, double h, bool symmetric_conjugation) {
  const int d = K.side_z().d;
  if (d != 1) throw std::invalid_argument("g_kco_build: kernel-plane grids are d=1 only");
  if (C.d() != d) throw std::invalid_argument("g_kco_build: block dimension mismatch");
  if (!C.invertible()) throw std::invalid_argument("g_kco_build: matrix not invertible");
  if (omega.dim != 4 * d) throw std::invalid_argument("g_kco_build: weight lives on R^{4d}");

  const double sqrt2 = 1.4142135623730951;
  return GridField::sample(2 * d, 4 * d, R, h, [&](std::span<const double> pt) {
    double mapped[4];
    C.apply(pt, mapped);
    const cplx z{mapped[0], mapped[1]};
    const cplx w{mapped[2], mapped[3]};
    const cplx zs[1] = {z};
    const cplx ws[1] = {w};
    const double kv = std::abs(kernel_coeff_eval(K, zs, ws));
    const double warg[4] = {sqrt2 * mapped[0], -sqrt2 * mapped[1], sqrt2 * mapped[2],
                            (symmetric_conjugation ? -sqrt2 : sqrt2) * mapped[3]};
    const double damp = std::exp(-0.5 * (std::norm(z) + std::norm(w)));
    return cplx{damp * kv * omega(warg), 0.0};
  });
}

ContinuityReport continuity_harness(const KernelCoeff& K, const BlockMatrixC& C,
                                    const WeightFn& omega, const WeightFn& omega1,
                                    const WeightFn& omega2, ContinuityVariant variant,
                                    const ContinuityConfig& cfg) {
  const int d = K.side_z().d;
  const int n = 2 * d;
  const double p = cfg.p, q = cfg.q;

  std::vector<double> p1 = cfg.p1, p2 = cfg.p2;
  if (variant == ContinuityVariant::leb_op_cont_3) {
    // Source A^{p',q'}, target A^{q,p}_* are pinned by (p,q).
    const auto conj_exp = [](double e) {
      return e == kInf ? 1.0 : (e == 1.0 ? kInf : e / (e - 1.0));
    };
    p1.assign(static_cast<std::size_t>(n), conj_exp(p));
    for (int k = d; k < n; ++k) p1[static_cast<std::size_t>(k)] = conj_exp(q);
    p2.clear();
  } else {
    if (static_cast<int>(p1.size()) != n || static_cast<int>(p2.size()) != n)
      throw std::invalid_argument("continuity_harness: p1/p2 need 2d entries");
    for (int k = 0; k < n; ++k) {
      const double i1 = p1[static_cast<std::size_t>(k)] == kInf ? 0.0 : 1.0 / p1[static_cast<std::size_t>(k)];
      const double i2 = p2[static_cast<std::size_t>(k)] == kInf ? 0.0 : 1.0 / p2[static_cast<std::size_t>(k)];
      const double ip = p == kInf ? 0.0 : 1.0 / p;
      const double iq = q == kInf ? 0.0 : 1.0 / q;
      if (std::abs((i1 - i2) - (1.0 - ip - iq)) > 1e-12)
        throw std::invalid_argument("continuity_harness: exponent relation violated");
      if (q > p2[static_cast<std::size_t>(k)] + 1e-12 || p2[static_cast<std::size_t>(k)] > p + 1e-12)
        throw std::invalid_argument("continuity_harness: ordering q <= p2 <= p violated");
    }
    if (variant == ContinuityVariant::leb_op_cont_1 && !C.cond1())
      throw std::invalid_argument("continuity_harness: matrix condition (1) violated");
    if (variant == ContinuityVariant::leb_op_cont_2 && !C.cond2())
      throw std::invalid_argument("continuity_harness: matrix condition (2) violated");
  }

  // Weight compatibility omega2(z)/omega1(w) <= C omega(z, conj w) on probes,
  // with an escalation check across two probe radii.
  {
    double prev = 0.0;
    for (double Rp : {2.0, 4.0}) {
      double worst = 0.0;
      const int P = 5;
      for (int ix = 0; ix < P; ++ix)
        for (int jx = 0; jx < P; ++jx)
          for (int kx = 0; kx < P; ++kx)
            for (int lx = 0; lx < P; ++lx) {
              auto c = [&](int i) { return -Rp + 2.0 * Rp * i / (P - 1); };
              const double zpt[2] = {c(ix), c(jx)};
              const double wpt[2] = {c(kx), c(lx)};
              const double warg[4] = {zpt[0], zpt[1], wpt[0], -wpt[1]};
              const double ratio =
                  omega2(zpt) / (omega1(wpt) * omega(warg));
              worst = std::max(worst, ratio);
            }
      if (prev > 0.0 && worst > 4.0 * prev)
        throw std::invalid_argument(
            "continuity_harness: weight compatibility fails on probes");
      prev = worst;
    }
  }

  GridField G = g_kco_build(K, C, omega, cfg.grid_R, cfg.grid_h);
  MixedNormSpec gspec =
      variant == ContinuityVariant::leb_op_cont_1   ? MixedNormSpec::lpq(n, p, q)
      : variant == ContinuityVariant::leb_op_cont_2 ? MixedNormSpec::lpq_star(n, q, p)
                                                    : MixedNormSpec::lpq_star(n, p, q);
  ContinuityReport rep;
  rep.variant = variant;
  rep.seed = cfg.seed;
  rep.norm_G = mixed_norm(G, gspec);

  MixedNormSpec src_spec, dst_spec;
  if (variant == ContinuityVariant::leb_op_cont_3) {
    src_spec = MixedNormSpec::lpq(d, p1[0], p1[static_cast<std::size_t>(n) - 1]);
    // Target A^{q,p}_*: inner xi exponent p, outer x exponent q.
    dst_spec = MixedNormSpec::lpq_star(d, q, p);
  } else {
    src_spec.n = n;
    src_spec.p = p1;
    dst_spec.n = n;
    dst_spec.p = p2;
  }

  std::mt19937_64 rng(cfg.seed);
  for (int e = 0; e < cfg.ensemble; ++e) {
    const CoeffArray F = random_coeff(K.side_w(), BasisTag::fock, rng, cfg.damping);
    const CoeffArray TF = kernel_apply(K, F);
    const double lhs = fock_norm(TF, dst_spec, omega2, cfg.norm_R, cfg.norm_h);
    const double src = fock_norm(F, src_spec, omega1, cfg.norm_R, cfg.norm_h);
    const double rhs = rep.norm_G * src;
    const double ratio = rhs > 0.0 ? lhs / rhs : 0.0;
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.max_lhs = std::max(rep.max_lhs, lhs);
  }
  return rep;
}

std::string continuity_report_json(const ContinuityReport& rep,
                                   const ContinuityConfig& cfg) {
  nlohmann::json j;
  switch (rep.variant) {
    case ContinuityVariant::leb_op_cont_1:
      j["variant"] = "integral-operator";
      break;
    case ContinuityVariant::leb_op_cont_2:
      j["variant"] = "integral-operator-star";
      break;
    case ContinuityVariant::leb_op_cont_3:
      j["variant"] = "split-geometry";
      break;
  }
  auto enc = [](double p) {
    return p == kInf ? nlohmann::json("inf") : nlohmann::json(p);
  };
  j["exponents"]["p"] = enc(cfg.p);
  j["exponents"]["q"] = enc(cfg.q);
  nlohmann::json p1 = nlohmann::json::array(), p2 = nlohmann::json::array();
  for (double v : cfg.p1) p1.push_back(enc(v));
  for (double v : cfg.p2) p2.push_back(enc(v));
  j["exponents"]["p1"] = p1;
  j["exponents"]["p2"] = p2;
  j["norms"]["G"] = rep.norm_G;
  j["norms"]["max_lhs"] = rep.max_lhs;
  j["ratio"] = rep.max_ratio;
  j["ensemble"] = cfg.ensemble;
  j["seed"] = rep.seed;
  return j.dump(2) + "\n";
}

}  // namespace fockcalc
