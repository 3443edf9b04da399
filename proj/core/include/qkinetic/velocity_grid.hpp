#pragma once

#include <cstddef>
#include <vector>

namespace qkinetic {

/// Uniform periodic 2-D velocity mesh on [-L, L)^2 with N nodes per axis.
///
/// Nodes are v_j = -L + j * dv, j = 0..N-1, dv = 2L/N. Field values are
/// stored row-major with the v_x index outermost: index(ix, iy) = ix*N + iy.
class VelocityGrid {
 public:
  /// Throws ConfigError unless N is even, N >= 8 and L > 0.
  VelocityGrid(int n_per_axis, double half_width);

  int n() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return spacing_; }
  double cell_area() const { return spacing_ * spacing_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  double node(int j) const { return -half_width_ + j * spacing_; }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * n_ + iy;
  }

  /// Per-axis node coordinates.
  const std::vector<double>& nodes() const { return nodes_; }

  /// Largest |v_x| on the grid; the transport speed bound.
  double max_speed() const { return half_width_; }

  bool operator==(const VelocityGrid& other) const {
    return n_ == other.n_ && half_width_ == other.half_width_;
  }

 private:
  int n_;
  double half_width_;
  double spacing_;
  std::vector<double> nodes_;
};

}  // namespace qkinetic
