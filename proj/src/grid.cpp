#include "skl/grid.hpp"

#include <cmath>
#include <string>

#include "skl/errors.hpp"
#include "skl/simd.hpp"

namespace skl {

GridFunction::GridFunction(int n, Box box, std::vector<std::size_t> shape)
    : n_(n), box_(std::move(box)), shape_(std::move(shape)) {
  if (n < 1 || n > kMaxDimension) throw InputError("grid dimension out of range");
  if (box_.lo.size() != static_cast<std::size_t>(n) || box_.hi.size() != static_cast<std::size_t>(n) ||
      shape_.size() != static_cast<std::size_t>(n)) {
    throw DimensionMismatch("grid box/shape must have one entry per axis");
  }
  spacing_.resize(n);
  strides_.resize(n);
  nodes_ = 1;
  for (int j = n - 1; j >= 0; --j) {
    if (shape_[j] < 2) throw InputError("grid needs at least 2 nodes per axis");
    if (!(box_.hi[j] > box_.lo[j])) throw InputError("grid box needs lo < hi on every axis");
    spacing_[j] = (box_.hi[j] - box_.lo[j]) / static_cast<double>(shape_[j] - 1);
    strides_[j] = nodes_;
    nodes_ *= shape_[j];
  }
  data_.assign(nodes_ * blade_count(), 0.0);
}

GridFunction GridFunction::sample(int n, const Box& box, const std::vector<std::size_t>& shape,
                                  const Sampler& f) {
  GridFunction g(n, box, shape);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    g.node_position(i, x);
    g.set_value(i, f(x));
  }
  return g;
}

double GridFunction::cell_volume() const {
  double v = 1.0;
  for (double h : spacing_) v *= h;
  return v;
}

std::vector<std::size_t> GridFunction::node_index(std::size_t flat) const {
  std::vector<std::size_t> idx(n_);
  for (int j = 0; j < n_; ++j) {
    idx[j] = flat / strides_[j];
    flat %= strides_[j];
  }
  return idx;
}

std::size_t GridFunction::flat_index(std::span<const std::size_t> index) const {
  std::size_t flat = 0;
  for (int j = 0; j < n_; ++j) flat += index[j] * strides_[j];
  return flat;
}

void GridFunction::node_position(std::size_t flat, std::span<double> out) const {
  for (int j = 0; j < n_; ++j) {
    const std::size_t i = flat / strides_[j];
    flat %= strides_[j];
    out[j] = box_.lo[j] + spacing_[j] * static_cast<double>(i);
  }
}

std::vector<double> GridFunction::node_position(std::size_t flat) const {
  std::vector<double> x(n_);
  node_position(flat, x);
  return x;
}

Multivector GridFunction::value(std::size_t flat) const {
  std::vector<double> c(blade_count());
  for (std::size_t b = 0; b < c.size(); ++b) c[b] = data_[b * nodes_ + flat];
  return Multivector(n_, std::move(c));
}

void GridFunction::set_value(std::size_t flat, const Multivector& v) {
  if (v.dimension() != n_) throw DimensionMismatch("grid value has the wrong Clifford dimension");
  const auto c = v.coeffs();
  for (std::size_t b = 0; b < c.size(); ++b) data_[b * nodes_ + flat] = c[b];
}

std::span<const double> GridFunction::plane(unsigned mask) const {
  return std::span<const double>(data_).subspan(mask * nodes_, nodes_);
}

std::span<double> GridFunction::plane(unsigned mask) {
  return std::span<double>(data_).subspan(mask * nodes_, nodes_);
}

bool GridFunction::plane_nonzero(unsigned mask) const {
  for (double v : plane(mask)) {
    if (v != 0.0) return true;
  }
  return false;
}

bool GridFunction::in_band(std::size_t flat, int band) const {
  if (band <= 0) return false;
  for (int j = 0; j < n_; ++j) {
    const std::size_t i = flat / strides_[j];
    flat %= strides_[j];
    if (i < static_cast<std::size_t>(band) || i + band >= shape_[j]) return true;
  }
  return false;
}

bool GridFunction::same_lattice(const GridFunction& other) const {
  return n_ == other.n_ && shape_ == other.shape_ && box_ == other.box_;
}

std::vector<double> GridFunction::trapezoid_weights() const {
  std::vector<double> w(nodes_, 1.0);
  for (std::size_t i = 0; i < nodes_; ++i) {
    std::size_t flat = i;
    double wi = 1.0;
    for (int j = 0; j < n_; ++j) {
      const std::size_t k = flat / strides_[j];
      flat %= strides_[j];
      wi *= (k == 0 || k + 1 == shape_[j]) ? 0.5 * spacing_[j] : spacing_[j];
    }
    w[i] = wi;
  }
  return w;
}

std::vector<double> GridFunction::radial_weights(double w) const {
  std::vector<double> out(nodes_, 1.0);
  if (w == 0.0) return out;
  std::vector<double> x(n_);
  for (std::size_t i = 0; i < nodes_; ++i) {
    node_position(i, x);
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    out[i] = std::pow(std::sqrt(r2), w);
  }
  return out;
}

std::vector<double> GridFunction::pointwise_norms() const {
  std::vector<double> acc(nodes_, 0.0);
  for (unsigned b = 0; b < blade_count(); ++b) simd::add_squares(plane(b), acc);
  for (double& v : acc) v = std::sqrt(v);
  return acc;
}

GridFunction GridFunction::scaled(double s) const {
  GridFunction out = *this;
  for (double& v : out.data_) v *= s;
  return out;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  if (!a.same_lattice(b)) throw DimensionMismatch("grid functions live on different lattices");
  GridFunction out = a;
  simd::axpy(1.0, b.data_, out.data_);
  out.boundary_band_ = std::max(a.boundary_band_, b.boundary_band_);
  return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  if (!a.same_lattice(b)) throw DimensionMismatch("grid functions live on different lattices");
  GridFunction out = a;
  simd::axpy(-1.0, b.data_, out.data_);
  out.boundary_band_ = std::max(a.boundary_band_, b.boundary_band_);
  return out;
}

GridFunction smooth_bump(int n, std::size_t nodes_per_axis, double half_width, double radius) {
  Box box{std::vector<double>(n, -half_width), std::vector<double>(n, half_width)};
  return GridFunction::sample(n, box, std::vector<std::size_t>(n, nodes_per_axis),
                              [n, radius](std::span<const double> x) {
                                double r2 = 0.0;
                                for (double v : x) r2 += v * v;
                                r2 /= radius * radius;
                                const double value = r2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r2)) : 0.0;
                                return Multivector::scalar(n, value);
                              });
}

}  // namespace skl
