#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "fockcalc/multi_index.hpp"

namespace fockcalc {

using cplx = std::complex<double>;

enum class BasisTag { hermite, fock };

std::string to_string(BasisTag tag);
BasisTag basis_tag_from_string(const std::string& s);

/// Dense coefficient tensor over a total-degree truncation, tagged with the
/// basis its coefficients refer to (Hermite functions h_alpha or normalized
/// monomials e_alpha). Values are stored in enumeration order; reading an
/// index above the truncation yields exact zero. Immutable by convention
/// after it leaves the routine that built it.
class CoeffArray {
 public:
  CoeffArray() = default;
  CoeffArray(TruncationSpec trunc, BasisTag tag)
      : trunc_(trunc), tag_(tag), values_(trunc.count(), cplx{0.0, 0.0}) {}

  const TruncationSpec& trunc() const { return trunc_; }
  BasisTag basis() const { return tag_; }
  std::size_t size() const { return values_.size(); }

  const cplx& operator[](std::size_t k) const { return values_[k]; }
  cplx& operator[](std::size_t k) { return values_[k]; }

  cplx at(const MultiIndex& alpha) const {
    if (alpha.degree() > trunc_.N) return cplx{0.0, 0.0};
    return values_[index_of(trunc_, alpha)];
  }
  void set(const MultiIndex& alpha, cplx v) { values_[index_of(trunc_, alpha)] = v; }

  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  /// Euclidean norm of the coefficient vector.
  double l2_norm() const;

  /// Unit vector at alpha.
  static CoeffArray delta(TruncationSpec trunc, BasisTag tag, const MultiIndex& alpha);

 private:
  TruncationSpec trunc_{1, 0};
  BasisTag tag_ = BasisTag::hermite;
  std::vector<cplx> values_;
};

/// Entrywise sum; truncations and basis tags must match.
CoeffArray coeff_add(const CoeffArray& a, const CoeffArray& b);

/// Scalar multiple.
CoeffArray coeff_scale(const CoeffArray& a, cplx s);

/// Entrywise map value -> f(alpha, value); degree-nonincreasing by
/// construction (writes only inside the truncation).
CoeffArray coeff_map(const CoeffArray& a,
                     const std::function<cplx(const MultiIndex&, cplx)>& f);

/// JSON round-trip: {"d":..,"N":..,"basis":"hermite"|"fock","re":[..],"im":[..]}
/// with the arrays in enumeration order.
std::string coeff_to_json(const CoeffArray& a);
CoeffArray coeff_from_json(const std::string& text);

}  // namespace fockcalc
