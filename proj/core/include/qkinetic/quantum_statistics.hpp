#pragma once

#include <array>
#include <optional>
#include <vector>

#include "qkinetic/spectral_collision.hpp"
#include "qkinetic/velocity_grid.hpp"

namespace qkinetic {

/// Velocity-space dimension. Everything in this library is 2-D in velocity.
inline constexpr int kVelocityDim = 2;

using Vec2 = std::array<double, 2>;

/// Thermodynamic variables of a quantum equilibrium.
struct ThermoState {
  double fugacity = 0.0;     ///< z; Bose: 0 < z < 1, Fermi: z > 0
  double temperature = 0.0;  ///< T > 0
  double theta0 = 0.0;
  Statistics statistics = Statistics::Fermi;

  /// Throws DomainError when the state is outside the admissible range.
  void validate() const;
};

/// Macroscopic moments (rho, u, e).
struct MacroState {
  double density = 0.0;
  Vec2 velocity{0.0, 0.0};
  double internal_energy = 0.0;
};

/// Bose-Einstein function G_nu(z) = sum_{n>=1} z^n / n^nu.
/// Requires 0 < z < 1 (or z = 1 with nu > 1).
double bose_g(double nu, double z);

/// Fermi-Dirac function F_nu(z) = (1/Gamma(nu)) int_0^inf x^{nu-1}/(e^x/z + 1) dx.
/// Alternating series for z <= 0.9, double-exponential quadrature above;
/// F_1 = ln(1+z) in closed form.
double fermi_f(double nu, double z);

/// The two evaluation routes of fermi_f, exposed for cross-checking.
double fermi_f_series(double nu, double z);
double fermi_f_quadrature(double nu, double z);

/// G_nu or F_nu according to the statistics (Classical is rejected).
double quantum_function(Statistics statistics, double nu, double z);

/// Q_1(z)^2 / Q_2(z); strictly increasing in z. The fugacity equation reads
/// fugacity_ratio(z) = theta0 rho / (2 pi e).
double fugacity_ratio(Statistics statistics, double z);

struct DensityEnergy {
  double density = 0.0;
  double internal_energy = 0.0;
};

/// rho = (2 pi T)/theta0 Q_1(z),  e = T Q_2(z)/Q_1(z).
DensityEnergy macro_from_zT(const ThermoState& thermo);

/// (z, T) from (rho, T) through the density equation alone; closed form
/// because Q_1 is elementary.
ThermoState thermo_from_density_temperature(double density, double temperature,
                                            double theta0, Statistics statistics);

/// Inverts (rho, e) -> (z, T).
///
/// The root of fugacity_ratio(z) = theta0 rho / (2 pi e) is bracketed by
/// bisection (using monotonicity) down to width 1e-2 and then polished with a
/// safeguarded secant iteration. A z_hint starts the secant directly and
/// falls back to bracketing if it leaves the admissible range. Throws
/// DegenerateBose when the Bose root would sit at z = 1, InversionError when
/// a Fermi target exceeds the Pauli limit fugacity_ratio -> 2, and
/// NonConvergence after 200 iterations.
ThermoState solve_fugacity(double density, double internal_energy, double theta0,
                           Statistics statistics,
                           std::optional<double> z_hint = std::nullopt);

/// Bose-Einstein / Fermi-Dirac distribution sampled on the grid.
std::vector<double> quantum_maxwellian(const ThermoState& thermo, Vec2 velocity,
                                       const VelocityGrid& grid);
void quantum_maxwellian(const ThermoState& thermo, Vec2 velocity,
                        const VelocityGrid& grid, std::span<double> out);

/// Gaussian whose temperature is replaced by e (d_v = 2):
/// rho / (2 pi e) exp(-|v-u|^2 / (2e)). Shares (rho, rho u, E) with the
/// quantum Maxwellian of the same macro state.
std::vector<double> classical_maxwellian_from_e(double density, Vec2 velocity,
                                                double internal_energy,
                                                const VelocityGrid& grid);
void classical_maxwellian_from_e(double density, Vec2 velocity, double internal_energy,
                                 const VelocityGrid& grid, std::span<double> out);

}  // namespace qkinetic
