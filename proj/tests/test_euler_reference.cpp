#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "qkinetic/errors.hpp"
#include "qkinetic/euler_reference.hpp"

using namespace qkinetic;

namespace {

EulerField shock_tube(int nx, double theta0, Statistics s) {
  EulerField field(nx, 0.0, 1.0);
  const auto left = macro_from_zT(thermo_from_density_temperature(1.0, 1.0, theta0, s));
  const auto right = macro_from_zT(thermo_from_density_temperature(0.125, 0.25, theta0, s));
  for (int i = 0; i < nx; ++i) {
    const auto& side = field.x_center(i) <= 0.5 ? left : right;
    field.cells[i] = ConservedState::from_macro({side.density, {0.0, 0.0}, side.internal_energy});
  }
  return field;
}

ConservedState totals(const EulerField& f) {
  ConservedState t;
  for (const auto& c : f.cells) {
    t.mass += c.mass;
    t.momentum[0] += c.momentum[0];
    t.momentum[1] += c.momentum[1];
    t.total_energy += c.total_energy;
  }
  return t;
}

}  // namespace

TEST(KfvsSplitFluxes, RestStateSymmetry) {
  const SplitFlux f = kfvs_split_fluxes(MacroState{0.7, {0.0, 0.0}, 1.3});
  EXPECT_NEAR(f.plus[0], -f.minus[0], 1e-15);
  EXPECT_NEAR(f.plus[3], -f.minus[3], 1e-15);
  EXPECT_NEAR(f.plus[1], f.minus[1], 1e-15);
  EXPECT_NEAR(f.plus[1] + f.minus[1], 0.7 * 1.3, 1e-15);
}

TEST(KfvsSplitFluxes, SumIsExactEulerFlux) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rho(0.05, 3.0), vel(-3.0, 3.0), e(0.05, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const MacroState m{rho(rng), {vel(rng), vel(rng)}, e(rng)};
    const ConservedState u = ConservedState::from_macro(m);
    const SplitFlux s = kfvs_split_fluxes(u);
    const EulerFlux exact = euler_flux(u);
    for (int k = 0; k < 4; ++k) {
      EXPECT_NEAR(s.plus[k] + s.minus[k], exact[k], 1e-12 * (1.0 + std::abs(exact[k])))
          << "trial " << trial << " component " << k;
    }
    // rho e pressure and (2 rho e + rho |u|^2 / 2) u_x energy flux.
    const double ux = m.velocity[0];
    const double u2 = ux * ux + m.velocity[1] * m.velocity[1];
    EXPECT_NEAR(exact[1], m.density * ux * ux + m.density * m.internal_energy, 1e-12 * (1 + std::abs(exact[1])));
    EXPECT_NEAR(exact[3], (2.0 * m.density * m.internal_energy + 0.5 * m.density * u2) * ux,
                1e-12 * (1 + std::abs(exact[3])));
  }
}

TEST(KfvsSplitFluxes, SupersonicStateHasNoBackwardFlux) {
  const SplitFlux f = kfvs_split_fluxes(MacroState{1.0, {10.0, 0.0}, 0.01});
  for (double v : f.minus) EXPECT_LE(std::abs(v), 1e-12);
}

TEST(StepEulerKfvs, UniformFieldUnchanged) {
  EulerField field(20, 0.0, 1.0);
  for (auto& c : field.cells) c = ConservedState::from_macro({0.8, {0.4, -0.2}, 0.9});
  const EulerField next = step_euler_kfvs(field, 1e-3);
  for (int i = 0; i < field.nx(); ++i) {
    EXPECT_NEAR(next.cells[i].mass, field.cells[i].mass, 1e-15);
    EXPECT_NEAR(next.cells[i].momentum[0], field.cells[i].momentum[0], 1e-15);
    EXPECT_NEAR(next.cells[i].total_energy, field.cells[i].total_energy, 1e-15);
  }
}

TEST(StepEulerKfvs, TotalsChangeOnlyByBoundaryFluxes) {
  EulerField field = shock_tube(100, 0.01, Statistics::Bose);
  const ConservedState t0 = totals(field);
  const EulerFlux in = euler_flux(field.cells.front());
  const EulerFlux out = euler_flux(field.cells.back());
  const double dt = euler_cfl_dt(field, 0.5);
  const int steps = 20;
  for (int n = 0; n < steps; ++n) field = step_euler_kfvs(field, dt);
  const ConservedState t1 = totals(field);
  const double r = steps * dt / field.dx();
  EXPECT_NEAR(t1.mass, t0.mass - r * (out[0] - in[0]), 1e-12 * field.nx());
  EXPECT_NEAR(t1.momentum[0], t0.momentum[0] - r * (out[1] - in[1]), 1e-12 * field.nx());
  EXPECT_NEAR(t1.momentum[1], t0.momentum[1] - r * (out[2] - in[2]), 1e-12 * field.nx());
  EXPECT_NEAR(t1.total_energy, t0.total_energy - r * (out[3] - in[3]), 1e-12 * field.nx());
}

TEST(StepEulerKfvs, FirstOrderStaysPositiveOnShockTube) {
  EulerField field = shock_tube(200, 9.0, Statistics::Fermi);
  double t = 0.0;
  while (t < 0.2 - 1e-12) {
    const double dt = std::min(euler_cfl_dt(field, 0.5), 0.2 - t);
    ASSERT_NO_THROW(field = step_euler_kfvs(field, dt, false));
    t += dt;
  }
  for (const auto& c : field.cells) {
    const MacroState m = c.to_macro();
    EXPECT_GT(m.density, 0.0);
    EXPECT_GT(m.internal_energy, 0.0);
  }
}

TEST(StepEulerKfvs, ShockTubeDevelopsThreeWaves) {
  EulerField field = shock_tube(400, 0.01, Statistics::Bose);
  double t = 0.0;
  while (t < 0.2 - 1e-12) {
    const double dt = std::min(euler_cfl_dt(field, 0.5), 0.2 - t);
    field = step_euler_kfvs(field, dt);
    t += dt;
  }
  std::vector<double> rho;
  for (const auto& c : field.cells) rho.push_back(c.mass);
  for (std::size_t i = 1; i < rho.size(); ++i) EXPECT_LE(rho[i], rho[i - 1] * (1.0 + 2e-3)) << i;
  // Plateaus strictly between the end states: left of and right of the contact.
  std::vector<double> plateaus;
  for (std::size_t i = 0; i + 10 < rho.size();) {
    const double hi = *std::max_element(rho.begin() + i, rho.begin() + i + 10);
    const double lo = *std::min_element(rho.begin() + i, rho.begin() + i + 10);
    if (hi - lo < 1e-3 * hi && hi < 0.99 && lo > 0.13) {
      if (plateaus.empty() || std::abs(plateaus.back() - hi) > 0.02) plateaus.push_back(hi);
      i += 10;
    } else {
      ++i;
    }
  }
  ASSERT_EQ(plateaus.size(), 2u);
  EXPECT_GT(plateaus[0], plateaus[1] + 0.05);
  // Rarefaction head travels left at the left sound speed.
  const double head = 0.5 - euler_sound_speed(field.cells[0].to_macro().internal_energy) * 0.2;
  for (int i = 0; i < field.nx(); ++i) {
    if (field.x_center(i) < head - 0.03) EXPECT_NEAR(rho[i], rho[0], 1e-3);
  }
}

TEST(EulerDiagnostics, ReferenceFugacities) {
  const auto left = macro_from_zT(thermo_from_density_temperature(1.0, 1.0, 9.0, Statistics::Fermi));
  const auto right =
      macro_from_zT(thermo_from_density_temperature(0.125, 0.25, 9.0, Statistics::Fermi));
  std::vector<MacroState> cells(5, MacroState{left.density, {0.0, 0.0}, left.internal_energy});
  for (const auto& th : euler_diagnostics(cells, 9.0, Statistics::Fermi)) {
    EXPECT_NEAR(th.fugacity, 3.1887, 1e-4);
    EXPECT_NEAR(th.temperature, 1.0, 1e-10);
  }
  cells.assign(5, MacroState{right.density, {0.3, 0.0}, right.internal_energy});
  for (const auto& th : euler_diagnostics(cells, 9.0, Statistics::Fermi)) {
    EXPECT_NEAR(th.fugacity, 1.0466, 1e-4);
    EXPECT_NEAR(th.temperature, 0.25, 1e-10);
  }
}

TEST(EulerDiagnostics, ClassicalLimitTemperatureEqualsEnergy) {
  EulerField field(6, 0.0, 1.0);
  for (int i = 0; i < field.nx(); ++i) {
    field.cells[i] = ConservedState::from_macro({0.5 + 0.1 * i, {0.0, 0.0}, 0.4 + 0.2 * i});
  }
  for (auto s : {Statistics::Bose, Statistics::Fermi}) {
    const auto th = euler_diagnostics(field, 1e-6, s);
    for (int i = 0; i < field.nx(); ++i) {
      EXPECT_NEAR(th[i].temperature, field.cells[i].to_macro().internal_energy, 1e-5);
    }
  }
}
