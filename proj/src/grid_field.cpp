#include "fockcalc/grid_field.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fockcalc/parallel.hpp"

namespace fockcalc {

namespace {
constexpr double kNodeSnap = 1e-9;
}

GridField::GridField(int complex_dim, int axes, double R, double h)
    : d_(complex_dim), axes_(axes), R_(R), h_(h) {
  if (axes < 1 || axes > 6) throw std::invalid_argument("GridField: bad axis count");
  if (R <= 0.0 || h <= 0.0) throw std::invalid_argument("GridField: bad extent/step");
  const double m = R / h;
  if (std::abs(m - std::round(m)) > 1e-9)
    throw std::invalid_argument("GridField: extent must be an integer multiple of step");
  n_ = 2 * static_cast<int>(std::round(m)) + 1;
  std::size_t total = 1;
  for (int k = 0; k < axes; ++k) total *= static_cast<std::size_t>(n_);
  values_.assign(total, cplx{0.0, 0.0});
}

std::size_t GridField::flat_index(std::span<const int> idx) const {
  std::size_t flat = 0;
  for (int k = 0; k < axes_; ++k) {
    const int i = idx[static_cast<std::size_t>(k)];
    if (i < 0 || i >= n_) throw std::out_of_range("GridField: index outside grid");
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return flat;
}

void GridField::unflatten(std::size_t flat, std::span<int> idx) const {
  for (int k = axes_ - 1; k >= 0; --k) {
    idx[static_cast<std::size_t>(k)] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
}

void GridField::node_point(std::size_t flat, std::span<double> x) const {
  for (int k = axes_ - 1; k >= 0; --k) {
    x[static_cast<std::size_t>(k)] = coord(static_cast<int>(flat % static_cast<std::size_t>(n_)));
    flat /= static_cast<std::size_t>(n_);
  }
}

bool GridField::contains(std::span<const double> x) const {
  for (int k = 0; k < axes_; ++k) {
    const double t = (x[static_cast<std::size_t>(k)] + R_) / h_;
    if (t < -kNodeSnap || t > n_ - 1 + kNodeSnap) return false;
  }
  return true;
}

cplx GridField::interpolate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != axes_)
    throw std::invalid_argument("GridField::interpolate: dimension mismatch");
  // Per-axis base node and fraction; snap to the node when within tolerance.
  int base[6];
  double frac[6];
  for (int k = 0; k < axes_; ++k) {
    const double t = (x[static_cast<std::size_t>(k)] + R_) / h_;
    if (t < -kNodeSnap || t > n_ - 1 + kNodeSnap)
      throw std::out_of_range("GridField::interpolate: point outside hull");
    double fl = std::floor(t);
    double fr = t - fl;
    if (fr < kNodeSnap) fr = 0.0;
    if (fr > 1.0 - kNodeSnap) {
      fl += 1.0;
      fr = 0.0;
    }
    int b = static_cast<int>(fl);
    if (b < 0) b = 0;
    if (b > n_ - 1) b = n_ - 1;
    if (b == n_ - 1 && fr > 0.0) {
      b = n_ - 2;
      fr = 1.0;
    }
    base[k] = b;
    frac[k] = fr;
  }
  cplx acc{0.0, 0.0};
  const int corners = 1 << axes_;
  int idx[6];
  for (int c = 0; c < corners; ++c) {
    double wt = 1.0;
    bool skip = false;
    for (int k = 0; k < axes_; ++k) {
      const int bit = (c >> k) & 1;
      const double wk = bit ? frac[k] : 1.0 - frac[k];
      if (wk == 0.0) {
        skip = true;
        break;
      }
      wt *= wk;
      idx[k] = base[k] + bit;
    }
    if (skip) continue;
    acc += wt * values_[flat_index(std::span<const int>(idx, static_cast<std::size_t>(axes_)))];
  }
  return acc;
}

GridField GridField::sample(int complex_dim, int axes, double R, double h,
                            const std::function<cplx(std::span<const double>)>& f) {
  GridField g(complex_dim, axes, R, h);
  exec::OpenMp par;
  par(static_cast<std::int64_t>(g.size()), [&](std::int64_t flat) {
    double x[6];
    g.node_point(static_cast<std::size_t>(flat), std::span<double>(x, static_cast<std::size_t>(axes)));
    g[static_cast<std::size_t>(flat)] = f(std::span<const double>(x, static_cast<std::size_t>(axes)));
  });
  return g;
}

void grid_write(const GridField& g, std::ostream& os, bool single_precision) {
  os.write("GFLD", 4);
  const std::uint32_t version = 1;
  const std::uint32_t d = static_cast<std::uint32_t>(g.complex_dim());
  const std::uint32_t axes = static_cast<std::uint32_t>(g.axes());
  const double R = g.extent();
  const double h = g.step();
  const std::uint8_t prec = single_precision ? 4 : 8;
  os.write(reinterpret_cast<const char*>(&version), 4);
  os.write(reinterpret_cast<const char*>(&d), 4);
  os.write(reinterpret_cast<const char*>(&axes), 4);
  os.write(reinterpret_cast<const char*>(&R), 8);
  os.write(reinterpret_cast<const char*>(&h), 8);
  os.write(reinterpret_cast<const char*>(&prec), 1);
  if (single_precision) {
    for (const cplx& v : g.values()) {
      const float re = static_cast<float>(v.real());
      const float im = static_cast<float>(v.imag());
      os.write(reinterpret_cast<const char*>(&re), 4);
      os.write(reinterpret_cast<const char*>(&im), 4);
    }
  } else {
    for (const cplx& v : g.values()) {
      const double re = v.real();
      const double im = v.imag();
      os.write(reinterpret_cast<const char*>(&re), 8);
      os.write(reinterpret_cast<const char*>(&im), 8);
    }
  }
}

GridField grid_read(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "GFLD", 4) != 0)
    throw std::runtime_error("grid_read: bad magic");
  std::uint32_t version = 0, d = 0, axes = 0;
  double R = 0.0, h = 0.0;
  std::uint8_t prec = 0;
  is.read(reinterpret_cast<char*>(&version), 4);
  is.read(reinterpret_cast<char*>(&d), 4);
  is.read(reinterpret_cast<char*>(&axes), 4);
  is.read(reinterpret_cast<char*>(&R), 8);
  is.read(reinterpret_cast<char*>(&h), 8);
  is.read(reinterpret_cast<char*>(&prec), 1);
  if (!is || version != 1 || (prec != 4 && prec != 8))
    throw std::runtime_error("grid_read: bad header");
  GridField g(static_cast<int>(d), static_cast<int>(axes), R, h);
  if (prec == 4) {
    for (cplx& v : g.values()) {
      float re = 0.0f, im = 0.0f;
      is.read(reinterpret_cast<char*>(&re), 4);
      is.read(reinterpret_cast<char*>(&im), 4);
      v = cplx{re, im};
    }
  } else {
    for (cplx& v : g.values()) {
      double re = 0.0, im = 0.0;
      is.read(reinterpret_cast<char*>(&re), 8);
      is.read(reinterpret_cast<char*>(&im), 8);
      v = cplx{re, im};
    }
  }
  if (!is) throw std::runtime_error("grid_read: truncated payload");
  return g;
}

void grid_save(const GridField& g, const std::string& path, bool single_precision) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("grid_save: cannot open " + path);
  grid_write(g, os, single_precision);
}

GridField grid_load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("grid_load: cannot open " + path);
  return grid_read(is);
}

std::string grid_slice_csv(const GridField& g, int axis, std::span<const int> fixed) {
  if (axis < 0 || axis >= g.axes())
    throw std::invalid_argument("grid_slice_csv: bad axis");
  if (static_cast<int>(fixed.size()) != g.axes())
    throw std::invalid_argument("grid_slice_csv: fixed index count must equal axes");
  std::ostringstream out;
  out << "coord,re,im\n";
  std::vector<int> idx(fixed.begin(), fixed.end());
  out.precision(17);
  for (int i = 0; i < g.nodes_per_axis(); ++i) {
    idx[static_cast<std::size_t>(axis)] = i;
    const cplx v = g.at(idx);
    out << g.coord(i) << "," << v.real() << "," << v.imag() << "\n";
  }
  return out.str();
}

}  // namespace fockcalc
