#include "qkinetic/euler_reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "qkinetic/errors.hpp"

namespace qkinetic {

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return a > 0.0 ? std::min(a, b) : std::max(a, b);
}

std::array<double, 4> primitive(const MacroState& m) {
  return {m.density, m.velocity[0], m.velocity[1], m.internal_energy};
}

MacroState from_primitive(const std::array<double, 4>& p) {
  if (!(p[0] > 0.0) || !(p[3] > 0.0)) {
    throw NonpositiveDensity("kfvs: reconstructed state has rho <= 0 or e <= 0");
  }
  return {p[0], {p[1], p[2]}, p[3]};
}

}  // namespace

EulerField::EulerField(int nx, double x_min_, double x_max_)
    : cells(nx), x_min(x_min_), x_max(x_max_) {
  if (nx < 1) throw ConfigError("EulerField: Nx must be positive");
  if (!(x_max > x_min)) throw ConfigError("EulerField: x_max must exceed x_min");
}

EulerFlux euler_flux(const ConservedState& u) {
  const MacroState m = u.to_macro();
  const double ux = m.velocity[0];
  const double p = m.density * m.internal_energy;
  return {u.momentum[0], u.momentum[0] * ux + p, u.momentum[1] * ux,
          (u.total_energy + p) * ux};
}

SplitFlux kfvs_split_fluxes(const MacroState& m) {
  const double rho = m.density;
  const double u = m.velocity[0];
  const double w = m.velocity[1];
  const double t = m.internal_energy;
  const double s = u / std::sqrt(2.0 * t);
  const double b = std::sqrt(t / (2.0 * std::numbers::pi)) * std::exp(-s * s);
  auto half = [&](double a, double bb) {
    const double m1 = u * a + bb;
    const double m2 = (u * u + t) * a + u * bb;
    const double m3 = (u * u * u + 3.0 * u * t) * a + (u * u + 2.0 * t) * bb;
    return EulerFlux{rho * m1, rho * m2, rho * w * m1, 0.5 * rho * (m3 + (w * w + t) * m1)};
  };
  return {half(0.5 * std::erfc(-s), b), half(0.5 * std::erfc(s), -b)};
}

SplitFlux kfvs_split_fluxes(const ConservedState& u) { return kfvs_split_fluxes(u.to_macro()); }

double euler_sound_speed(double internal_energy) { return std::sqrt(2.0 * internal_energy); }

double euler_cfl_dt(const EulerField& field, double cfl) {
  double speed = 0.0;
  for (const auto& c : field.cells) {
    const MacroState m = c.to_macro();
    speed = std::max(speed, std::abs(m.velocity[0]) + euler_sound_speed(m.internal_energy));
  }
  return cfl * field.dx() / speed;
}

namespace {

// U - dt/dx (F_{i+1/2} - F_{i-1/2}).
EulerField forward_step(const EulerField& field, double dt, bool limited) {
  const int nx = field.nx();
  // Padded with one zero-gradient ghost on each side.
  std::vector<std::array<double, 4>> p(nx + 2), slope(nx + 2, {0.0, 0.0, 0.0, 0.0});
  for (int i = 0; i < nx; ++i) p[i + 1] = primitive(field.cells[i].to_macro());
  p[0] = p[1];
  p[nx + 1] = p[nx];
  if (limited) {
    for (int i = 1; i <= nx; ++i) {
      for (int k = 0; k < 4; ++k) {
        slope[i][k] = minmod(p[i][k] - p[i - 1][k], p[i + 1][k] - p[i][k]);
      }
    }
  }
  std::vector<EulerFlux> flux(nx + 1);
  for (int j = 0; j <= nx; ++j) {
    std::array<double, 4> left, right;
    for (int k = 0; k < 4; ++k) {
      left[k] = p[j][k] + 0.5 * slope[j][k];
      right[k] = p[j + 1][k] - 0.5 * slope[j + 1][k];
    }
    const SplitFlux l = kfvs_split_fluxes(from_primitive(left));
    const SplitFlux r = kfvs_split_fluxes(from_primitive(right));
    for (int k = 0; k < 4; ++k) flux[j][k] = l.plus[k] + r.minus[k];
  }
  EulerField out = field;
  const double ratio = dt / field.dx();
  for (int i = 0; i < nx; ++i) {
    ConservedState& u = out.cells[i];
    u.mass -= ratio * (flux[i + 1][0] - flux[i][0]);
    u.momentum[0] -= ratio * (flux[i + 1][1] - flux[i][1]);
    u.momentum[1] -= ratio * (flux[i + 1][2] - flux[i][2]);
    u.total_energy -= ratio * (flux[i + 1][3] - flux[i][3]);
    u.to_macro();
  }
  return out;
}

}  // namespace

EulerField step_euler_kfvs(const EulerField& field, double dt, bool second_order) {
  if (!second_order) return forward_step(field, dt, false);
  const EulerField stage = forward_step(field, dt, true);
  const EulerField next = forward_step(stage, dt, true);
  EulerField out = field;
  for (int i = 0; i < field.nx(); ++i) {
    const ConservedState& a = field.cells[i];
    const ConservedState& b = next.cells[i];
    ConservedState& u = out.cells[i];
    u.mass = 0.5 * (a.mass + b.mass);
    u.momentum[0] = 0.5 * (a.momentum[0] + b.momentum[0]);
    u.momentum[1] = 0.5 * (a.momentum[1] + b.momentum[1]);
    u.total_energy = 0.5 * (a.total_energy + b.total_energy);
    u.to_macro();
  }
  return out;
}

std::vector<ThermoState> euler_diagnostics(const std::vector<MacroState>& cells, double theta0,
                                           Statistics statistics) {
  std::vector<ThermoState> out;
  out.reserve(cells.size());
  std::optional<double> hint;
  for (const auto& m : cells) {
    out.push_back(solve_fugacity(m.density, m.internal_energy, theta0, statistics, hint));
    hint = out.back().fugacity;
  }
  return out;
}

std::vector<ThermoState> euler_diagnostics(const EulerField& field, double theta0,
                                           Statistics statistics) {
  std::vector<MacroState> cells;
  cells.reserve(field.cells.size());
  for (const auto& c : field.cells) cells.push_back(c.to_macro());
  return euler_diagnostics(cells, theta0, statistics);
}

}  // namespace qkinetic
