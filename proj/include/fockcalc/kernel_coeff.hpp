#pragma once

#include <string>
#include <vector>

#include "fockcalc/coeff_array.hpp"
#include "fockcalc/multi_index.hpp"

namespace fockcalc {

enum class KernelInterp { kernel, symbol };

/// Coefficient tensor c(alpha, beta) of a semi-conjugate expansion
/// sum c(alpha,beta) e_alpha(z) e_beta(conj w), truncated per side at total
/// degree N. Rows run over the z-side indices, columns over the w-side, both
/// in enumeration order.
class KernelCoeff {
 public:
  KernelCoeff() = default;
  KernelCoeff(TruncationSpec side_z, TruncationSpec side_w, KernelInterp tag)
      : side_z_(side_z),
        side_w_(side_w),
        tag_(tag),
        values_(side_z.count() * side_w.count(), cplx{0.0, 0.0}) {}
  KernelCoeff(int d, int N, KernelInterp tag)
      : KernelCoeff(TruncationSpec(d, N), TruncationSpec(d, N), tag) {}

  const TruncationSpec& side_z() const { return side_z_; }
  const TruncationSpec& side_w() const { return side_w_; }
  KernelInterp interp() const { return tag_; }
  std::size_t rows() const { return side_z_.count(); }
  std::size_t cols() const { return side_w_.count(); }
  std::size_t size() const { return values_.size(); }

  const cplx& operator()(std::size_t i, std::size_t j) const {
    return values_[i * cols() + j];
  }
  cplx& operator()(std::size_t i, std::size_t j) { return values_[i * cols() + j]; }

  cplx at(const MultiIndex& alpha, const MultiIndex& beta) const {
    if (alpha.degree() > side_z_.N || beta.degree() > side_w_.N) return cplx{0.0, 0.0};
    return (*this)(index_of(side_z_, alpha), index_of(side_w_, beta));
  }
  void set(const MultiIndex& alpha, const MultiIndex& beta, cplx v) {
    (*this)(index_of(side_z_, alpha), index_of(side_w_, beta)) = v;
  }

  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  KernelCoeff retagged(KernelInterp tag) const {
    KernelCoeff k = *this;
    k.tag_ = tag;
    return k;
  }

  static KernelCoeff delta(int d, int N, KernelInterp tag, const MultiIndex& alpha,
                           const MultiIndex& beta) {
    KernelCoeff k(d, N, tag);
    k.set(alpha, beta, cplx{1.0, 0.0});
    return k;
  }

 private:
  TruncationSpec side_z_{1, 0};
  TruncationSpec side_w_{1, 0};
  KernelInterp tag_ = KernelInterp::kernel;
  std::vector<cplx> values_;
};

/// JSON mirror of the CoeffArray format with two index blocks.
std::string kernel_to_json(const KernelCoeff& k);
KernelCoeff kernel_from_json(const std::string& text);

}  // namespace fockcalc
