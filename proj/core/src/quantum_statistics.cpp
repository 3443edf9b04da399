#include "qkinetic/quantum_statistics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qkinetic/errors.hpp"

namespace qkinetic {

using std::numbers::pi;

namespace {

constexpr double kSeriesTolerance = 1e-12;
constexpr long kSeriesTermCap = 100000;
constexpr double kFermiSeriesSwitch = 0.9;
constexpr double kQuadratureTolerance = 1e-10;

std::string describe(double nu, double z) {
  std::ostringstream s;
  s << "(nu=" << nu << ", z=" << z << ")";
  return s.str();
}

}  // namespace

void ThermoState::validate() const {
  if (!(theta0 > 0.0) || !std::isfinite(theta0)) {
    throw DomainError("thermo state: theta0 must be positive");
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("thermo state: temperature must be positive");
  }
  switch (statistics) {
    case Statistics::Bose:
      if (!(fugacity > 0.0 && fugacity < 1.0)) {
        throw DomainError("thermo state: Bose fugacity must lie in (0, 1)");
      }
      break;
    case Statistics::Fermi:
      if (!(fugacity > 0.0) || !std::isfinite(fugacity)) {
        throw DomainError("thermo state: Fermi fugacity must be positive");
      }
      break;
    case Statistics::Classical:
      throw DomainError("thermo state: classical statistics has no fugacity");
  }
}

double bose_g(double nu, double z) {
  if (!(nu > 0.0) || !(z > 0.0) || z > 1.0 || (z == 1.0 && nu <= 1.0)) {
    throw DomainError("bose_g: argument outside the domain " + describe(nu, z));
  }
  if (nu == 1.0) return -std::log1p(-z);

  double sum = 0.0;
  double zn = 1.0;
  for (long n = 1; n <= kSeriesTermCap; ++n) {
    zn *= z;
    const double term = zn / std::pow(static_cast<double>(n), nu);
    sum += term;
    // The remaining tail is bounded by term * z / (1 - z) for z < 1.
    const double tail = z < 1.0 ? term * z / (1.0 - z) : term * n / (nu - 1.0);
    if (tail <= kSeriesTolerance * sum) break;
  }
  return sum;
}

double fermi_f_series(double nu, double z) {
  if (!(nu > 0.0) || !(z > 0.0) || z > 1.0) {
    throw DomainError("fermi_f_series: requires 0 < z <= 1 " + describe(nu, z));
  }
  // Alternating series; partial sums bracket the limit, so the next term
  // bounds the error. At z = 1 average consecutive partial sums.
  double sum = 0.0;
  double zn = 1.0;
  double sign = 1.0;
  double previous = 0.0;
  for (long n = 1; n <= kSeriesTermCap; ++n) {
    zn *= z;
    const double term = zn / std::pow(static_cast<double>(n), nu);
    previous = sum;
    sum += sign * term;
    sign = -sign;
    const double next = zn * z / std::pow(static_cast<double>(n + 1), nu);
    if (next <= kSeriesTolerance * std::abs(sum)) return sum;
  }
  return 0.5 * (sum + previous);
}

double fermi_f_quadrature(double nu, double z) {
  if (!(nu > 0.0) || !(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("fermi_f_quadrature: requires z > 0 " + describe(nu, z));
  }
  // x = exp(t - e^{-t}), dx = x (1 + e^{-t}) dt; the integrand decays double
  // exponentially at t -> -inf and like exp(-x) at t -> +inf.
  const double eta = std::log(z);
  const double x_max = std::max(eta, 0.0) + 60.0;
  const double t_lo = -5.0;
  const double t_hi = std::log(x_max) + 1.0;

  auto integrand = [&](double t) {
    const double et = std::exp(-t);
    const double x = std::exp(t - et);
    const double arg = x - eta;
    if (arg > 700.0) return 0.0;
    const double occupancy = 1.0 / (std::exp(arg) + 1.0);
    return std::pow(x, nu) * (1.0 + et) * occupancy;
  };

  double h = 0.25;
  int count = static_cast<int>(std::ceil((t_hi - t_lo) / h));
  h = (t_hi - t_lo) / count;
  double sum = 0.5 * (integrand(t_lo) + integrand(t_hi));
  for (int i = 1; i < count; ++i) sum += integrand(t_lo + i * h);
  double estimate = sum * h;

  for (int level = 0; level < 20; ++level) {
    double mid = 0.0;
    for (int i = 0; i < count; ++i) mid += integrand(t_lo + (i + 0.5) * h);
    sum += mid;
    count *= 2;
    h *= 0.5;
    const double refined = sum * h;
    const bool done = std::abs(refined - estimate) <= kQuadratureTolerance * std::abs(refined);
    estimate = refined;
    if (done && level >= 2) break;
  }
  return estimate / std::tgamma(nu);
}

double fermi_f(double nu, double z) {
  if (!(nu > 0.0) || !(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("fermi_f: argument outside the domain " + describe(nu, z));
  }
  if (nu == 1.0) return std::log1p(z);
  if (z <= kFermiSeriesSwitch) return fermi_f_series(nu, z);
  return fermi_f_quadrature(nu, z);
}

double quantum_function(Statistics statistics, double nu, double z) {
  switch (statistics) {
    case Statistics::Bose:
      return bose_g(nu, z);
    case Statistics::Fermi:
      return fermi_f(nu, z);
    case Statistics::Classical:
      break;
  }
  throw DomainError("quantum_function: classical statistics has no quantum function");
}

double fugacity_ratio(Statistics statistics, double z) {
  const double q1 = quantum_function(statistics, 1.0, z);
  return q1 * q1 / quantum_function(statistics, 2.0, z);
}

DensityEnergy macro_from_zT(const ThermoState& thermo) {
  thermo.validate();
  const double q1 = quantum_function(thermo.statistics, 1.0, thermo.fugacity);
  const double q2 = quantum_function(thermo.statistics, 2.0, thermo.fugacity);
  const double t = thermo.temperature;
  return {2.0 * pi * t / thermo.theta0 * q1, t * q2 / q1};
}

ThermoState thermo_from_density_temperature(double density, double temperature,
                                            double theta0, Statistics statistics) {
  if (!(density > 0.0) || !(temperature > 0.0) || !(theta0 > 0.0)) {
    throw DomainError("thermo_from_density_temperature: rho, T, theta0 must be positive");
  }
  const double q1 = density * theta0 / (2.0 * pi * temperature);
  ThermoState out{0.0, temperature, theta0, statistics};
  switch (statistics) {
    case Statistics::Bose:
      out.fugacity = -std::expm1(-q1);
      break;
    case Statistics::Fermi:
      out.fugacity = std::expm1(q1);
      break;
    case Statistics::Classical:
      throw DomainError("thermo_from_density_temperature: classical statistics");
  }
  out.validate();
  return out;
}

ThermoState solve_fugacity(double density, double internal_energy, double theta0,
                           Statistics statistics, std::optional<double> z_hint) {
  if (!(density > 0.0) || !(internal_energy > 0.0) || !(theta0 > 0.0)) {
    throw DomainError("solve_fugacity: rho, e, theta0 must be positive");
  }
  if (statistics == Statistics::Classical) {
    throw DomainError("solve_fugacity: classical statistics has no fugacity");
  }
  const bool bose = statistics == Statistics::Bose;
  const double target = theta0 * density / (2.0 * pi * internal_energy);
  if (!bose && target >= 2.0) {
    std::ostringstream msg;
    msg << "solve_fugacity: Fermi target " << target
        << " is at or beyond the Pauli limit 2 (rho=" << density
        << ", e=" << internal_energy << ")";
    throw InversionError(msg.str());
  }

  auto residual = [&](double z) { return fugacity_ratio(statistics, z) - target; };
  const int max_iterations = 200;
  const double z_cap = bose ? 1.0 : std::numeric_limits<double>::infinity();

  auto finish = [&](double z) {
    if (bose && z >= 1.0 - 1e-14) {
      throw DegenerateBose("solve_fugacity: Bose root at the degenerate limit z -> 1");
    }
    const double q1 = quantum_function(statistics, 1.0, z);
    ThermoState out{z, density * theta0 / (2.0 * pi * q1), theta0, statistics};
    return out;
  };
  auto converged = [](double z, double dz) {
    return std::abs(dz) <= 1e-14 * std::abs(z) || std::abs(dz) <= 1e-300;
  };

  // Warm start: plain secant from the hint, abandoned on any excursion.
  if (z_hint && *z_hint > 0.0 && *z_hint < z_cap) {
    double z0 = *z_hint;
    double z1 = z0 * (1.0 + 1e-6);
    if (z1 < z_cap) {
      double g0 = residual(z0);
      double g1 = residual(z1);
      for (int it = 0; it < 50; ++it) {
        if (g1 == 0.0) return finish(z1);
        if (g1 == g0) break;
        const double z2 = z1 - g1 * (z1 - z0) / (g1 - g0);
        if (!(z2 > 0.0) || !(z2 < z_cap) || !std::isfinite(z2)) break;
        z0 = z1;
        g0 = g1;
        z1 = z2;
        if (converged(z1, z1 - z0)) return finish(z1);
        g1 = residual(z1);
      }
    }
  }

  // Bracket [lo, hi] with g(lo) < 0 < g(hi).
  double lo = 0.0;
  double hi = 1.0;
  if (!bose) {
    int doublings = 0;
    while (residual(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > 1100) throw NonConvergence("solve_fugacity: cannot bracket root");
    }
  }
  int iterations = 0;
  while (hi - lo > 1e-2) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) < 0.0 ? lo : hi) = mid;
    if (++iterations > max_iterations) {
      throw NonConvergence("solve_fugacity: bisection did not converge");
    }
  }

  // Safeguarded secant inside the bracket.
  double z0 = lo > 0.0 ? lo : 0.5 * (lo + hi);
  double z1 = bose && hi >= 1.0 ? 0.5 * (z0 + hi) : hi;
  if (z1 == z0) z1 = 0.5 * (lo + hi);
  double g0 = residual(z0);
  double g1 = residual(z1);
  for (; iterations < max_iterations; ++iterations) {
    if (g1 == 0.0) return finish(z1);
    if (g1 < 0.0) {
      lo = std::max(lo, z1);
    } else {
      hi = std::min(hi, z1);
    }
    double z2 = (g1 != g0) ? z1 - g1 * (z1 - z0) / (g1 - g0) : 0.5 * (lo + hi);
    if (!(z2 > lo && z2 < hi) || !std::isfinite(z2)) z2 = 0.5 * (lo + hi);
    z0 = z1;
    g0 = g1;
    z1 = z2;
    if (converged(z1, z1 - z0)) return finish(z1);
    g1 = residual(z1);
  }
  std::ostringstream msg;
  msg << "solve_fugacity: no convergence after " << max_iterations
      << " iterations (rho=" << density << ", e=" << internal_energy << ")";
  throw NonConvergence(msg.str());
}

void quantum_maxwellian(const ThermoState& thermo, Vec2 velocity, const VelocityGrid& grid,
                        std::span<double> out) {
  thermo.validate();
  if (out.size() != grid.size()) throw ConfigError("quantum_maxwellian: size mismatch");
  const double log_z = std::log(thermo.fugacity);
  const double inv_2t = 0.5 / thermo.temperature;
  const double inv_theta = 1.0 / thermo.theta0;
  const double shift = thermo.statistics == Statistics::Bose ? -1.0 : 1.0;
  const auto& v = grid.nodes();
  for (int ix = 0; ix < grid.n(); ++ix) {
    const double dx = v[ix] - velocity[0];
    for (int iy = 0; iy < grid.n(); ++iy) {
      const double dy = v[iy] - velocity[1];
      const double arg = (dx * dx + dy * dy) * inv_2t - log_z;
      out[grid.index(ix, iy)] = arg > 700.0 ? 0.0 : inv_theta / (std::exp(arg) + shift);
    }
  }
}

std::vector<double> quantum_maxwellian(const ThermoState& thermo, Vec2 velocity,
                                       const VelocityGrid& grid) {
  std::vector<double> out(grid.size());
  quantum_maxwellian(thermo, velocity, grid, out);
  return out;
}

void classical_maxwellian_from_e(double density, Vec2 velocity, double internal_energy,
                                 const VelocityGrid& grid, std::span<double> out) {
  if (!(density > 0.0) || !(internal_energy > 0.0)) {
    throw DomainError("classical_maxwellian_from_e: rho and e must be positive");
  }
  if (out.size() != grid.size()) throw ConfigError("classical_maxwellian_from_e: size mismatch");
  // d_v/(4 pi e) and d_v/(4 e) with d_v = 2.
  const double prefactor = density / (2.0 * pi * internal_energy);
  const double rate = 0.5 / internal_energy;
  const auto& v = grid.nodes();
  for (int ix = 0; ix < grid.n(); ++ix) {
    const double dx = v[ix] - velocity[0];
    const double ex = std::exp(-rate * dx * dx);
    for (int iy = 0; iy < grid.n(); ++iy) {
      const double dy = v[iy] - velocity[1];
      out[grid.index(ix, iy)] = prefactor * ex * std::exp(-rate * dy * dy);
    }
  }
}

std::vector<double> classical_maxwellian_from_e(double density, Vec2 velocity,
                                                double internal_energy,
                                                const VelocityGrid& grid) {
  std::vector<double> out(grid.size());
  classical_maxwellian_from_e(density, velocity, internal_energy, grid, out);
  return out;
}

}  // namespace qkinetic
