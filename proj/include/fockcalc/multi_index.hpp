#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fockcalc {

/// A multi-index alpha in N^d. Entries are small non-negative integers;
/// |alpha| is the total degree and alpha! the product of entry factorials.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_)
      if (e < 0) throw std::invalid_argument("MultiIndex: negative entry");
  }

  static MultiIndex zero(int d) {
    if (d < 1) throw std::invalid_argument("MultiIndex: dimension must be >= 1");
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(d), 0));
  }

  int dim() const { return static_cast<int>(entries_.size()); }
  int operator[](int k) const { return entries_[static_cast<std::size_t>(k)]; }
  int& operator[](int k) { return entries_[static_cast<std::size_t>(k)]; }
  std::span<const int> entries() const { return entries_; }

  int degree() const {
    int s = 0;
    for (int e : entries_) s += e;
    return s;
  }

  bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }

  /// Componentwise gamma <= alpha.
  bool dominates(const MultiIndex& gamma) const {
    for (int k = 0; k < dim(); ++k)
      if (gamma[k] > (*this)[k]) return false;
    return true;
  }

  MultiIndex minus(const MultiIndex& gamma) const {
    MultiIndex r = *this;
    for (int k = 0; k < dim(); ++k) r[k] -= gamma[k];
    return r;
  }

 private:
  std::vector<int> entries_;
};

/// n! as an exact 128-bit integer. Valid for n <= 34; the caller switches
/// to log-space above that.
unsigned __int128 factorial_exact(int n);

/// log(n!) via lgamma, valid for all n >= 0.
double log_factorial(int n);

/// log(alpha!) = sum of per-entry log-factorials. Uses the exact product
/// when |alpha| <= 34, log-space beyond.
double log_factorial(const MultiIndex& alpha);

/// sqrt(alpha!) in double precision (exp of half the log).
double sqrt_factorial(const MultiIndex& alpha);

/// Binomial coefficient, exact in double for the ranges used here (n <= 64).
double binomial(int n, int k);

/// Product of per-axis binomials C(alpha_k, gamma_k); requires gamma <= alpha.
double binomial(const MultiIndex& alpha, const MultiIndex& gamma);

double binomial_total(int n, int k);  // C(n+k, k) as double, n,k moderate

/// Truncated index set {alpha in N^d : |alpha| <= N} with a stable
/// graded ordering: degree ascending, and within a degree shell the first
/// entry decreases first ((1,0) precedes (0,1)).
struct TruncationSpec {
  int d = 1;
  int N = 0;

  TruncationSpec() = default;
  TruncationSpec(int d_, int N_) : d(d_), N(N_) {
    if (d < 1) throw std::invalid_argument("TruncationSpec: invalid dimension");
    if (N < 0) throw std::invalid_argument("TruncationSpec: negative degree bound");
  }

  bool operator==(const TruncationSpec& o) const { return d == o.d && N == o.N; }

  /// binomial(N+d, d)
  std::size_t count() const;
};

/// All indices of the truncation in enumeration order.
std::vector<MultiIndex> enumerate_indices(const TruncationSpec& trunc);

/// Position of alpha in enumerate_indices(trunc); throws if |alpha| > N or
/// the dimension does not match.
std::size_t index_of(const TruncationSpec& trunc, const MultiIndex& alpha);

}  // namespace fockcalc
