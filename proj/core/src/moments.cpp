#include "qkinetic/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qkinetic/errors.hpp"
#include "qkinetic/log.hpp"

namespace qkinetic {

ConservedState ConservedState::from_macro(const MacroState& m) {
  const double u2 = m.velocity[0] * m.velocity[0] + m.velocity[1] * m.velocity[1];
  return {m.density,
          {m.density * m.velocity[0], m.density * m.velocity[1]},
          m.density * m.internal_energy + 0.5 * m.density * u2};
}

MacroState ConservedState::to_macro() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    std::ostringstream msg;
    msg << "nonpositive density rho=" << mass;
    throw NonpositiveDensity(msg.str());
  }
  MacroState m;
  m.density = mass;
  m.velocity = {momentum[0] / mass, momentum[1] / mass};
  const double kinetic =
      0.5 * (momentum[0] * momentum[0] + momentum[1] * momentum[1]) / mass;
  m.internal_energy = (total_energy - kinetic) / mass;
  if (!(m.internal_energy > 0.0) || !std::isfinite(m.internal_energy)) {
    std::ostringstream msg;
    msg << "nonpositive internal energy e=" << m.internal_energy << " (rho=" << mass << ")";
    throw NonpositiveDensity(msg.str());
  }
  return m;
}

ConservedState conserved_moments(std::span<const double> f, const VelocityGrid& grid) {
  if (f.size() != grid.size()) throw ConfigError("conserved_moments: size mismatch");
  const auto& v = grid.nodes();
  double m0 = 0.0, mx = 0.0, my = 0.0, e = 0.0;
  for (int ix = 0; ix < grid.n(); ++ix) {
    double row0 = 0.0, rowy = 0.0, rowe = 0.0;
    for (int iy = 0; iy < grid.n(); ++iy) {
      const double fv = f[grid.index(ix, iy)];
      row0 += fv;
      rowy += fv * v[iy];
      rowe += fv * v[iy] * v[iy];
    }
    m0 += row0;
    mx += row0 * v[ix];
    my += rowy;
    e += rowe + row0 * v[ix] * v[ix];
  }
  const double dv2 = grid.cell_area();
  return {m0 * dv2, {mx * dv2, my * dv2}, 0.5 * e * dv2};
}

MacroState compute_macro(std::span<const double> f, const VelocityGrid& grid) {
  return conserved_moments(f, grid).to_macro();
}

StressHeatFlux stress_heatflux(std::span<const double> f, const VelocityGrid& grid,
                               const MacroState& macro) {
  if (f.size() != grid.size()) throw ConfigError("stress_heatflux: size mismatch");
  StressHeatFlux out;
  const auto& v = grid.nodes();
  for (int ix = 0; ix < grid.n(); ++ix) {
    const double cx = v[ix] - macro.velocity[0];
    for (int iy = 0; iy < grid.n(); ++iy) {
      const double cy = v[iy] - macro.velocity[1];
      const double fv = f[grid.index(ix, iy)];
      const double c2 = cx * cx + cy * cy;
      out.stress[0][0] += cx * cx * fv;
      out.stress[0][1] += cx * cy * fv;
      out.stress[1][1] += cy * cy * fv;
      out.heat_flux[0] += 0.5 * cx * c2 * fv;
      out.heat_flux[1] += 0.5 * cy * c2 * fv;
    }
  }
  const double dv2 = grid.cell_area();
  out.stress[0][0] *= dv2;
  out.stress[0][1] *= dv2;
  out.stress[1][1] *= dv2;
  out.stress[1][0] = out.stress[0][1];
  out.heat_flux[0] *= dv2;
  out.heat_flux[1] *= dv2;
  return out;
}

double entropy(std::span<const double> f, const VelocityGrid& grid,
               const CollisionConfig& config) {
  if (f.size() != grid.size()) throw ConfigError("entropy: size mismatch");
  config.validate();
  const double s = config.sign();
  const double theta = config.theta0;
  const bool quantum = s != 0.0 && theta > 0.0;
  const double f_max = *std::max_element(f.begin(), f.end());
  const double upper = (quantum && s < 0.0) ? 1.0 / theta : INFINITY;

  double clamp = 0.0, change = 0.0, total = 0.0;
  double sum = 0.0;
  for (const double raw : f) {
    total += std::abs(raw);
    double fv = raw;
    if (fv < 0.0) {
      clamp = std::max(clamp, -fv);
      fv = 0.0;
    } else if (fv > upper) {
      clamp = std::max(clamp, fv - upper);
      fv = upper;
    }
    change += std::abs(raw - fv);
    double h = fv > 0.0 ? fv * std::log(fv) : 0.0;
    if (quantum) {
      const double occ = 1.0 + s * theta * fv;
      if (occ > 0.0) h -= s / theta * occ * std::log(occ);
    } else {
      h -= fv;
    }
    sum += h;
  }
  if (clamp > 0.0) {
    std::ostringstream msg;
    msg << "entropy: clamped values by up to " << clamp << " (max f " << f_max
        << ", relative L1 change " << change / total << ")";
    if (change > 1e-6 * total) throw DomainError(msg.str());
    log::warn(msg.str());
  }
  return sum * grid.cell_area();
}

double raw_moment(std::span<const double> f, const VelocityGrid& grid, int p) {
  if (f.size() != grid.size()) throw ConfigError("raw_moment: size mismatch");
  if (p < 0 || p % 2 != 0) throw ConfigError("raw_moment: order must be even and >= 0");
  const auto& v = grid.nodes();
  const int half = p / 2;
  double sum = 0.0;
  for (int ix = 0; ix < grid.n(); ++ix) {
    for (int iy = 0; iy < grid.n(); ++iy) {
      const double r2 = v[ix] * v[ix] + v[iy] * v[iy];
      sum += std::pow(r2, half) * f[grid.index(ix, iy)];
    }
  }
  return sum * grid.cell_area();
}

}  // namespace qkinetic
