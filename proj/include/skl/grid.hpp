#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "skl/clifford.hpp"

namespace skl {

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  friend bool operator==(const Box&, const Box&) = default;
};

/// Cl_n-valued samples on a uniform node lattice over an axis-aligned box in
/// R^n, nodes in row-major order (last axis fastest).
///
/// Coefficients are stored blade-major: plane(mask) holds the coefficient of
/// blade `mask` at every node, contiguous, which is the layout the vector
/// kernels in skl/simd.hpp consume.
class GridFunction {
 public:
  /// Zero function. Needs shape[j] >= 2 and lo[j] < hi[j] on every axis.
  GridFunction(int n, Box box, std::vector<std::size_t> shape);

  using Sampler = std::function<Multivector(std::span<const double>)>;
  static GridFunction sample(int n, const Box& box, const std::vector<std::size_t>& shape,
                             const Sampler& f);

  int dimension() const { return n_; }
  const Box& box() const { return box_; }
  const std::vector<std::size_t>& shape() const { return shape_; }
  double spacing(int axis) const { return spacing_[axis]; }
  double cell_volume() const;
  std::size_t node_count() const { return nodes_; }
  std::size_t blade_count() const { return std::size_t{1} << n_; }

  std::vector<std::size_t> node_index(std::size_t flat) const;
  std::size_t flat_index(std::span<const std::size_t> index) const;
  std::size_t stride(int axis) const { return strides_[axis]; }
  void node_position(std::size_t flat, std::span<double> out) const;
  std::vector<double> node_position(std::size_t flat) const;

  Multivector value(std::size_t flat) const;
  void set_value(std::size_t flat, const Multivector& v);

  std::span<const double> plane(unsigned mask) const;
  std::span<double> plane(unsigned mask);
  /// True if any coefficient of blade `mask` is nonzero.
  bool plane_nonzero(unsigned mask) const;

  /// Number of node layers next to each face that were filled by one-sided
  /// stencils (set by derivative operators; 0 for sampled data).
  int boundary_band() const { return boundary_band_; }
  void set_boundary_band(int band) { boundary_band_ = band; }
  /// True when the node lies in the boundary band.
  bool in_band(std::size_t flat, int band) const;

  bool same_lattice(const GridFunction& other) const;

  /// Per-node quadrature weights of the tensor trapezoid rule on the box.
  std::vector<double> trapezoid_weights() const;
  /// |x|^w at every node (0^0 = 1).
  std::vector<double> radial_weights(double w) const;
  /// |f(x)| at every node.
  std::vector<double> pointwise_norms() const;

  GridFunction scaled(double s) const;
  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);

 private:
  int n_;
  Box box_;
  std::vector<std::size_t> shape_;
  std::vector<double> spacing_;
  std::vector<std::size_t> strides_;
  std::size_t nodes_ = 0;
  std::vector<double> data_;
  int boundary_band_ = 0;
};

/// Scalar C-infinity bump exp(1 - 1/(1 - |x|^2/R^2)) supported in the ball of
/// radius R (peak value 1 at the origin), sampled on [-half_width, half_width]^n.
GridFunction smooth_bump(int n, std::size_t nodes_per_axis, double half_width, double radius = 1.0);

}  // namespace skl
