#pragma once

#include <random>
#include <vector>

#include "qkinetic/spectral_collision.hpp"
#include "qkinetic/velocity_grid.hpp"

namespace qkinetic::testing {

/// Random Fourier coefficients on |kx|, |ky| <= kmax. With hermitian = true
/// they describe a real field with mean `mean`; otherwise every retained
/// coefficient is an independent complex number.
SpectralField random_modes(const VelocityGrid& grid, int kmax, std::mt19937_64& rng,
                           bool hermitian, double mean = 0.0);

/// Sum of `count` isotropic Gaussians with centers in [-center_max, center_max]^2
/// and standard deviations in [sigma_min, sigma_max], rescaled to peak value
/// `peak`.
std::vector<double> gaussian_mixture(const VelocityGrid& grid, std::mt19937_64& rng,
                                     int count, double center_max, double sigma_min,
                                     double sigma_max, double peak);

double max_abs(const std::vector<double>& v);
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qkinetic::testing
