#pragma once

#include <array>
#include <vector>

#include "qkinetic/moments.hpp"
#include "qkinetic/quantum_statistics.hpp"

namespace qkinetic {

/// (mass, x-momentum, y-momentum, energy) flux through a surface normal to x.
using EulerFlux = std::array<double, 4>;

/// Cell averages of the conserved variables on [x_min, x_max], zero-gradient
/// boundaries.
struct EulerField {
  EulerField(int nx, double x_min, double x_max);

  int nx() const { return static_cast<int>(cells.size()); }
  double dx() const { return (x_max - x_min) / nx(); }
  double x_center(int i) const { return x_min + (i + 0.5) * dx(); }

  std::vector<ConservedState> cells;
  double x_min, x_max;
};

/// Exact flux of the 2-D quantum Euler system: pressure rho e, energy flux
/// (2 rho e + rho |u|^2 / 2) u_x.
EulerFlux euler_flux(const ConservedState& u);

/// Half-range moments int_{v_x > 0} and int_{v_x < 0} of v_x (1, v, |v|^2/2)
/// against the Gaussian with temperature e.
struct SplitFlux {
  EulerFlux plus{};
  EulerFlux minus{};
};
SplitFlux kfvs_split_fluxes(const ConservedState& u);
SplitFlux kfvs_split_fluxes(const MacroState& m);

/// sqrt(2 e), the sound speed of the system in (rho, u, e) variables.
double euler_sound_speed(double internal_energy);

/// cfl * dx / max_i (|u_i| + c_i).
double euler_cfl_dt(const EulerField& field, double cfl);

/// One step of U - dt/dx (F_{i+1/2} - F_{i-1/2}) with interface flux
/// F+(U_L) + F-(U_R). First order: forward Euler, piecewise-constant states.
/// Second order: U_L and U_R from minmod-limited slopes of (rho, u, e),
/// advanced by the two-stage SSP Runge-Kutta method.
/// Throws NonpositiveDensity when a cell leaves rho > 0, e > 0.
EulerField step_euler_kfvs(const EulerField& field, double dt, bool second_order = true);

/// Per-cell (z, T) by solve_fugacity, each cell warm-started from its left
/// neighbour.
std::vector<ThermoState> euler_diagnostics(const std::vector<MacroState>& cells,
                                           double theta0, Statistics statistics);
std::vector<ThermoState> euler_diagnostics(const EulerField& field, double theta0,
                                           Statistics statistics);

}  // namespace qkinetic
