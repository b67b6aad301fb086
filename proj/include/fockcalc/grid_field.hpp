#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fockcalc/coeff_array.hpp"

namespace fockcalc {

/// Sampled complex field on the uniform grid [-R,R]^axes with step h and an
/// odd node count per axis (so 0 is a node). For fields over C^d the first d
/// axes carry Re z and the last d carry Im z under z = x + i xi; axes is then
/// 2d. Values are row-major with the last axis fastest.
class GridField {
 public:
  GridField() = default;
  GridField(int complex_dim, int axes, double R, double h);

  int complex_dim() const { return d_; }
  int axes() const { return axes_; }
  double extent() const { return R_; }
  double step() const { return h_; }
  int nodes_per_axis() const { return n_; }
  std::size_t size() const { return values_.size(); }

  double coord(int i) const { return -R_ + h_ * i; }

  const cplx& operator[](std::size_t k) const { return values_[k]; }
  cplx& operator[](std::size_t k) { return values_[k]; }
  const std::vector<cplx>& values() const { return values_; }
  std::vector<cplx>& values() { return values_; }

  std::size_t flat_index(std::span<const int> idx) const;
  void unflatten(std::size_t flat, std::span<int> idx) const;
  void node_point(std::size_t flat, std::span<double> x) const;

  cplx at(std::span<const int> idx) const { return values_[flat_index(idx)]; }

  /// Multilinear interpolation; points on a node (within snap tolerance) are
  /// read exactly. Throws outside the hull.
  cplx interpolate(std::span<const double> x) const;

  bool contains(std::span<const double> x) const;

  /// Sample a callable over every node (parallel over nodes).
  static GridField sample(int complex_dim, int axes, double R, double h,
                          const std::function<cplx(std::span<const double>)>& f);

 private:
  int d_ = 0;
  int axes_ = 0;
  double R_ = 0.0;
  double h_ = 0.0;
  int n_ = 0;
  std::vector<cplx> values_;
};

/// Binary format: magic "GFLD", u32 version, u32 d, u32 axes, f64 R, f64 h,
/// u8 precision (4 or 8 bytes per scalar), then the row-major payload.
void grid_write(const GridField& g, std::ostream& os, bool single_precision = false);
GridField grid_read(std::istream& is);
void grid_save(const GridField& g, const std::string& path, bool single_precision = false);
GridField grid_load(const std::string& path);

/// 1-D slice along `axis` with all other indices fixed, as "coord,re,im" rows.
std::string grid_slice_csv(const GridField& g, int axis, std::span<const int> fixed);

}  // namespace fockcalc
