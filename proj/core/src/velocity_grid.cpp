#include "qkinetic/velocity_grid.hpp"

#include <string>

#include "qkinetic/errors.hpp"

namespace qkinetic {

VelocityGrid::VelocityGrid(int n_per_axis, double half_width)
    : n_(n_per_axis), half_width_(half_width), spacing_(0.0) {
  if (n_per_axis < 8 || n_per_axis % 2 != 0) {
    throw ConfigError("velocity grid: N must be even and >= 8, got " +
                      std::to_string(n_per_axis));
  }
  if (!(half_width > 0.0)) {
    throw ConfigError("velocity grid: half width L must be positive");
  }
  spacing_ = 2.0 * half_width_ / n_;
  nodes_.resize(n_);
  for (int j = 0; j < n_; ++j) nodes_[j] = node(j);
}

}  // namespace qkinetic
