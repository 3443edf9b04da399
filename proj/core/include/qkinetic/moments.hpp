#pragma once

#include <array>
#include <span>

#include "qkinetic/quantum_statistics.hpp"
#include "qkinetic/spectral_collision.hpp"
#include "qkinetic/velocity_grid.hpp"

namespace qkinetic {

/// U = (rho, rho u, rho e + rho |u|^2 / 2).
struct ConservedState {
  double mass = 0.0;
  Vec2 momentum{0.0, 0.0};
  double total_energy = 0.0;

  static ConservedState from_macro(const MacroState& m);
  /// Throws NonpositiveDensity when mass <= 0 or the internal energy is <= 0.
  MacroState to_macro() const;
};

/// Midpoint-rule moments (1, v, |v|^2/2) of f.
ConservedState conserved_moments(std::span<const double> f, const VelocityGrid& grid);

/// (rho, u, e) of f. Throws NonpositiveDensity when rho <= 0 or e <= 0.
MacroState compute_macro(std::span<const double> f, const VelocityGrid& grid);

struct StressHeatFlux {
  std::array<std::array<double, 2>, 2> stress{};  ///< P = int (v-u)(v-u) f
  Vec2 heat_flux{0.0, 0.0};                       ///< q = int (v-u)|v-u|^2 f / 2
};

StressHeatFlux stress_heatflux(std::span<const double> f, const VelocityGrid& grid,
                               const MacroState& macro);

/// Entropy H[f] = int f ln f - (s/theta0)(1 + s theta0 f) ln(1 + s theta0 f) dv
/// with s = +1 (Bose), -1 (Fermi); int (f ln f - f) for classical statistics.
/// Its variational derivative is ln(f / (1 + s theta0 f)), so it decreases
/// along the collision dynamics. Values slightly outside the admissible range
/// are clamped with a warning; a clamp changing sum |f| by more than 1e-6
/// relative throws DomainError.
double entropy(std::span<const double> f, const VelocityGrid& grid,
               const CollisionConfig& config);

/// int |v|^p f dv for p in {4, 6} (any even p >= 0 is accepted).
double raw_moment(std::span<const double> f, const VelocityGrid& grid, int p);

}  // namespace qkinetic
