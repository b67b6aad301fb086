#include "fockcalc/multi_index.hpp"

#include <cmath>

namespace fockcalc {

unsigned __int128 factorial_exact(int n) {
  if (n < 0 || n > 34)
    throw std::invalid_argument("factorial_exact: argument outside [0,34]");
  unsigned __int128 f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned>(i);
  return f;
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_factorial(const MultiIndex& alpha) {
  if (alpha.degree() <= 34) {
    unsigned __int128 f = 1;
    for (int k = 0; k < alpha.dim(); ++k) f *= factorial_exact(alpha[k]);
    // Down-convert through the high/low split so the 128-bit value survives.
    const double hi = static_cast<double>(static_cast<std::uint64_t>(f >> 64));
    const double lo = static_cast<double>(static_cast<std::uint64_t>(f));
    return std::log(hi * 18446744073709551616.0 + lo);
  }
  double s = 0.0;
  for (int k = 0; k < alpha.dim(); ++k) s += log_factorial(alpha[k]);
  return s;
}

double sqrt_factorial(const MultiIndex& alpha) {
  return std::exp(0.5 * log_factorial(alpha));
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double num = 1.0, den = 1.0;
  for (int i = 0; i < k; ++i) {
    num *= static_cast<double>(n - i);
    den *= static_cast<double>(i + 1);
  }
  return num / den;
}

double binomial(const MultiIndex& alpha, const MultiIndex& gamma) {
  double b = 1.0;
  for (int k = 0; k < alpha.dim(); ++k) b *= binomial(alpha[k], gamma[k]);
  return b;
}

double binomial_total(int n, int k) { return binomial(n + k, k); }

std::size_t TruncationSpec::count() const {
  return static_cast<std::size_t>(binomial_total(N, d) + 0.5);
}

namespace {

void enumerate_shell(int d, int degree, std::vector<int>& scratch, int axis,
                     std::vector<MultiIndex>& out) {
  if (axis == d - 1) {
    scratch[static_cast<std::size_t>(axis)] = degree;
    out.emplace_back(scratch);
    return;
  }
  for (int a = degree; a >= 0; --a) {
    scratch[static_cast<std::size_t>(axis)] = a;
    enumerate_shell(d, degree - a, scratch, axis + 1, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(const TruncationSpec& trunc) {
  std::vector<MultiIndex> out;
  out.reserve(trunc.count());
  std::vector<int> scratch(static_cast<std::size_t>(trunc.d), 0);
  for (int m = 0; m <= trunc.N; ++m) enumerate_shell(trunc.d, m, scratch, 0, out);
  return out;
}

std::size_t index_of(const TruncationSpec& trunc, const MultiIndex& alpha) {
  if (alpha.dim() != trunc.d)
    throw std::invalid_argument("index_of: dimension mismatch");
  const int m = alpha.degree();
  if (m > trunc.N) throw std::out_of_range("index_of: degree above truncation");
  // Offset of the shell (all indices of degree < m), then rank within it.
  // Within a shell the ordering takes larger leading entries first, so the
  // rank counts indices with the same prefix and a larger entry at the first
  // divergence.
  std::size_t pos = static_cast<std::size_t>(binomial(m - 1 + trunc.d, trunc.d) + 0.5);
  int remaining = m;
  for (int axis = 0; axis < trunc.d - 1; ++axis) {
    for (int a = remaining; a > alpha[axis]; --a) {
      // Count of completions of the remaining axes with degree remaining - a.
      pos += static_cast<std::size_t>(
          binomial(remaining - a + trunc.d - axis - 2, trunc.d - axis - 2) + 0.5);
    }
    remaining -= alpha[axis];
  }
  return pos;
}

}  // namespace fockcalc
