#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "qkinetic/errors.hpp"
#include "qkinetic/quantum_statistics.hpp"
#include "qkinetic/spectral_collision.hpp"
#include "support/collision_oracle.hpp"
#include "support/fields.hpp"

using namespace qkinetic;
using qkinetic::testing::CarlemanOracle;
using qkinetic::testing::max_abs;
using qkinetic::testing::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;

double max_mode_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
    m = std::max(m, std::abs(a.coefficients()[i] - b.coefficients()[i]));
  }
  return m;
}

SpectralField sum(const SpectralField& a, const SpectralField& b, double wb = 1.0) {
  SpectralField out(a.grid());
  for (std::size_t i = 0; i < out.coefficients().size(); ++i) {
    out.coefficients()[i] = a.coefficients()[i] + wb * b.coefficients()[i];
  }
  return out;
}

std::vector<double> equilibrium(Statistics stats, double theta0, const VelocityGrid& grid) {
  if (stats == Statistics::Classical) return classical_maxwellian_from_e(1.0, {0, 0}, 1.0, grid);
  return quantum_maxwellian(thermo_from_density_temperature(1.0, 1.0, theta0, stats), {0, 0},
                            grid);
}

double equilibrium_residual(Statistics stats, double theta0, int n, double l) {
  const VelocityGrid grid(n, l);
  CollisionOperator op(build_kernel_tables(grid, 4));
  return max_abs(op.evaluate(equilibrium(stats, theta0, grid), {stats, theta0, 1.0}));
}

// Integral of exp(i (pi/L) (l.x + m.y)) delta(x.y) over B_R x B_R in polar
// form: trapezoid in the angle, Gauss-Legendre in r and s.
double beta_quadrature(int lx, int ly, int mx, int my, double l_half, double radius) {
  using G = boost::math::quadrature::gauss<double, 40>;
  const int angles = 2048;
  double total = 0.0;
  for (int q = 0; q < angles; ++q) {
    const double t = kPi * q / angles;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double kl = kPi / l_half * (lx * c + ly * s);
    const double km = kPi / l_half * (-mx * s + my * c);
    const double ir = G::integrate([&](double r) { return std::cos(kl * r); }, -radius, radius);
    const double is = G::integrate([&](double r) { return std::cos(km * r); }, -radius, radius);
    total += ir * is;
  }
  return total * kPi / angles;
}

}  // namespace

TEST(VelocityGrid, RejectsInvalidSizes) {
  EXPECT_THROW(VelocityGrid(7, 1.0), ConfigError);
  EXPECT_THROW(VelocityGrid(6, 1.0), ConfigError);
  EXPECT_THROW(VelocityGrid(16, 0.0), ConfigError);
  const VelocityGrid g(16, 8.0);
  EXPECT_DOUBLE_EQ(g.spacing() * g.n(), 16.0);
  EXPECT_DOUBLE_EQ(g.node(0), -8.0);
}

TEST(KernelTables, ZeroModeIsTwiceRadius) {
  const VelocityGrid grid(16, 8.0);
  const auto tab = build_kernel_tables(grid, 4);
  for (int p = 0; p < 4; ++p) {
    EXPECT_DOUBLE_EQ(tab->alpha(p, 0, 0), 2.0 * tab->truncation_radius());
    EXPECT_DOUBLE_EQ(tab->alpha_prime(p, 0, 0), 2.0 * tab->truncation_radius());
  }
}

TEST(KernelTables, RejectsAliasingRadiusAndBadM) {
  const VelocityGrid grid(16, 8.0);
  EXPECT_THROW(build_kernel_tables(grid, 4, 1.01 * max_truncation_radius(grid)), ConfigError);
  EXPECT_THROW(build_kernel_tables(grid, 4, 0.0), ConfigError);
  EXPECT_THROW(build_kernel_tables(grid, 0), ConfigError);
  EXPECT_NO_THROW(build_kernel_tables(grid, 4, max_truncation_radius(grid)));
}

TEST(KernelTables, AlphaPrimeIsAlphaOfRotatedMode) {
  const VelocityGrid grid(16, 8.0);
  const auto tab = build_kernel_tables(grid, 4);
  for (int p = 0; p < 4; ++p) {
    for (int mx = -16; mx <= 16; ++mx) {
      for (int my = -16; my <= 16; ++my) {
        EXPECT_NEAR(tab->alpha_prime(p, mx, my), tab->alpha(p, -my, mx), 1e-13);
      }
    }
  }
}

TEST(KernelTables, SymmetrizedBetaMatchesPolarQuadrature) {
  const VelocityGrid grid(16, 8.0);
  const auto tab = build_kernel_tables(grid, 32);
  const double r = tab->truncation_radius();
  for (int lx = -2; lx <= 2; ++lx) {
    for (int ly = -2; ly <= 2; ++ly) {
      for (int mx = -2; mx <= 2; ++mx) {
        for (int my = -2; my <= 2; ++my) {
          const double tabulated =
              0.5 * (tab->beta(lx, ly, mx, my) + tab->beta(mx, my, lx, ly));
          const double ref = beta_quadrature(lx, ly, mx, my, 8.0, r);
          EXPECT_LE(std::abs(tabulated - ref), 1e-6 * std::abs(ref))
              << "l=(" << lx << "," << ly << ") m=(" << mx << "," << my << ")";
        }
      }
    }
  }
}

TEST(Transform, ConstantFieldIsMeanMode) {
  const VelocityGrid grid(16, 4.0);
  const SpectralField f = forward_transform(std::vector<double>(grid.size(), 1.0), grid);
  for (int kx = -8; kx < 8; ++kx) {
    for (int ky = -8; ky < 8; ++ky) {
      EXPECT_NEAR(std::abs(f.at(kx, ky)), (kx == 0 && ky == 0) ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(Transform, CosineModeHasHalfAmplitudes) {
  const VelocityGrid grid(16, 4.0);
  std::vector<double> f(grid.size());
  for (int ix = 0; ix < 16; ++ix) {
    for (int iy = 0; iy < 16; ++iy) f[grid.index(ix, iy)] = std::cos(kPi / 4.0 * grid.node(ix));
  }
  const SpectralField c = forward_transform(f, grid);
  EXPECT_NEAR(c.at(1, 0).real(), 0.5, 1e-14);
  EXPECT_NEAR(c.at(-1, 0).real(), 0.5, 1e-14);
  EXPECT_NEAR(std::abs(c.at(1, 0).imag()) + std::abs(c.at(0, 1)), 0.0, 1e-14);
}

TEST(Transform, RoundTripRandomField) {
  const VelocityGrid grid(32, 8.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> f(grid.size());
  for (double& v : f) v = u(rng);
  const auto back = inverse_transform(forward_transform(f, grid));
  EXPECT_LE(max_abs_diff(f, back), 1e-12 * max_abs(f));
}

TEST(Transform, RealFieldHasConjugateSymmetricModes) {
  const VelocityGrid grid(16, 8.0);
  std::mt19937_64 rng(5);
  const auto f = qkinetic::testing::gaussian_mixture(grid, rng, 2, 1.0, 0.8, 1.2, 1.0);
  const SpectralField c = forward_transform(f, grid);
  for (int kx = -7; kx < 8; ++kx) {
    for (int ky = -7; ky < 8; ++ky) {
      EXPECT_NEAR(std::abs(c.at(-kx, -ky) - std::conj(c.at(kx, ky))), 0.0, 1e-15);
    }
  }
}

TEST(CollisionOperator, ZeroFieldGivesZero) {
  const VelocityGrid grid(16, 8.0);
  CollisionOperator op(build_kernel_tables(grid, 4));
  const SpectralField zero(grid);
  EXPECT_EQ(op.qc_hat(zero).max_abs(), 0.0);
  EXPECT_EQ(op.q1_hat(zero).max_abs(), 0.0);
  EXPECT_EQ(op.q2_hat(zero).max_abs(), 0.0);
  EXPECT_EQ(op.q3_hat(zero).max_abs(), 0.0);
  EXPECT_EQ(op.q4_hat(zero).max_abs(), 0.0);
  const auto q = op.evaluate(std::vector<double>(grid.size(), 0.0), {Statistics::Bose, 1.0, 1.0});
  EXPECT_EQ(max_abs(q), 0.0);
}

TEST(CollisionOperator, Q2OfSingleZeroMode) {
  const VelocityGrid grid(16, 8.0);
  const auto tab = build_kernel_tables(grid, 4);
  CollisionOperator op(tab);
  SpectralField f(grid);
  const double c = 0.7;
  f.at(0, 0) = c;
  const SpectralField q2 = op.q2_hat(f);
  const double r = tab->truncation_radius();
  EXPECT_NEAR(q2.at(0, 0).real(), kPi * 4.0 * r * r * c * c * c, 1e-12);
  EXPECT_NEAR(q2.max_abs(), std::abs(q2.at(0, 0)), 0.0);
}

TEST(CollisionOperator, Q3AndQ4ZeroModesAgreeForRotationInvariantField) {
  const VelocityGrid grid(16, 8.0);
  CollisionOperator op(build_kernel_tables(grid, 4));
  std::vector<double> f(grid.size());
  for (int ix = 0; ix < 16; ++ix) {
    for (int iy = 0; iy < 16; ++iy) {
      const double r2 = grid.node(ix) * grid.node(ix) + grid.node(iy) * grid.node(iy);
      f[grid.index(ix, iy)] = std::exp(-r2 / 2.0) * (1.0 + 0.3 * std::cos(r2));
    }
  }
  const SpectralField fh = forward_transform(f, grid);
  const Complex q3 = op.q3_hat(fh).at(0, 0);
  const Complex q4 = op.q4_hat(fh).at(0, 0);
  EXPECT_LE(std::abs(q3 - q4), 1e-10 * std::abs(q3));
}

// Every term against brute-force Carleman quadrature on a fully populated,
// non-Hermitian coefficient set (Nyquist modes included).
TEST(CollisionOperator, TermsMatchCarlemanQuadrature) {
  const VelocityGrid grid(8, 4.0);
  const auto tab = build_kernel_tables(grid, 4);
  CollisionOperator op(tab);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SpectralField f(grid);
  for (Complex& c : f.coefficients()) c = Complex(u(rng), u(rng));

  const CarlemanOracle oracle(f, tab->truncation_radius(), 8);
  const auto ref = oracle.project();
  const double scale = ref.q1.max_abs();

  EXPECT_LE(max_mode_diff(op.qc_hat(f), sum(ref.gain, ref.loss, -1.0)), 1e-10 * scale);
  EXPECT_LE(max_mode_diff(op.q1_hat(f), ref.q1), 1e-10 * scale);
  EXPECT_LE(max_mode_diff(op.q2_hat(f), ref.q2), 1e-10 * scale);
  EXPECT_LE(max_mode_diff(sum(op.q3_hat(f), op.q4_hat(f)), sum(ref.q3, ref.q4)), 1e-10 * scale);
}

TEST(CollisionOperator, MatchesOracleOnRandomSmoothFields) {
  const VelocityGrid grid(16, 8.0);
  const auto tab = build_kernel_tables(grid, 4);
  CollisionOperator op(tab);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const SpectralField modes =
        qkinetic::testing::random_modes(grid, 2, rng, true, 1.0 / 64.0);
    const auto f = inverse_transform(modes);
    const CollisionConfig cfg{trial % 2 ? Statistics::Bose : Statistics::Fermi, 2.0, 1.0};
    const auto spectral = op.evaluate(f, cfg);
    const auto direct = qkinetic::testing::oracle_direct(f, cfg, grid, 8,
                                                         tab->truncation_radius());
    EXPECT_LE(max_abs_diff(spectral, direct), 1e-3 * max_abs(direct)) << "trial " << trial;
  }
}

TEST(CollisionOperator, OracleRejectsTooFewAngles) {
  const VelocityGrid grid(8, 4.0);
  const SpectralField f(grid);
  EXPECT_ANY_THROW(CarlemanOracle(f, 1.0, 1));
}

TEST(CollisionOperator, OracleIsotropicForGaussian) {
  const VelocityGrid grid(16, 8.0);
  const auto tab = build_kernel_tables(grid, 4);
  const auto f = classical_maxwellian_from_e(1.0, {0.0, 0.0}, 1.5, grid);
  SpectralField fh = forward_transform(f, grid);
  for (int k = -8; k < 8; ++k) fh.at(-8, k) = fh.at(k, -8) = 0.0;
  const CarlemanOracle oracle(fh, tab->truncation_radius(), 8);
  const auto a = oracle.at(1.0, 0.5);
  const auto b = oracle.at(-0.5, 1.0);  // rotated by +pi/2
  EXPECT_NEAR(std::abs(a.gain - b.gain), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a.loss - b.loss), 0.0, 1e-12);
}

TEST(CollisionOperator, MassIsConservedToRoundOff) {
  const VelocityGrid grid(32, 8.0);
  CollisionOperator op(build_kernel_tables(grid, 4));
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 3; ++trial) {
    const auto f = qkinetic::testing::gaussian_mixture(grid, rng, 3, 0.5, 0.8, 1.2, 0.8);
    const auto q = op.evaluate(f, {Statistics::Fermi, 1.0, 1.0});
    double mass = 0.0, l1 = 0.0;
    for (double v : q) {
      mass += v;
      l1 += std::abs(v);
    }
    EXPECT_LE(std::abs(mass), 1e-13 * l1);
  }
}

// Momentum and energy conservation to 1e-8 of ||Q||_1 at N = 32.
TEST(CollisionOperator, MomentsOfQVanishAtN32) {
  const VelocityGrid grid(32, 8.0);
  CollisionOperator op(build_kernel_tables(grid, 4));
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = qkinetic::testing::gaussian_mixture(grid, rng, 3, 0.5, 0.8, 1.2, 0.8);
    const auto q = op.evaluate(f, {Statistics::Fermi, 1.0, 1.0});
    double l1 = 0.0, mass = 0.0, px = 0.0, py = 0.0, en = 0.0;
    for (int ix = 0; ix < 32; ++ix) {
      for (int iy = 0; iy < 32; ++iy) {
        const double v = q[grid.index(ix, iy)];
        const double vx = grid.node(ix), vy = grid.node(iy);
        l1 += std::abs(v);
        mass += v;
        px += vx * v;
        py += vy * v;
        en += 0.5 * (vx * vx + vy * vy) * v;
      }
    }
    EXPECT_LE(std::abs(mass), 1e-8 * l1);
    EXPECT_LE(std::abs(px), 1e-8 * l1) << "trial " << trial;
    EXPECT_LE(std::abs(py), 1e-8 * l1) << "trial " << trial;
    EXPECT_LE(std::abs(en), 1e-8 * l1) << "trial " << trial;
  }
}

TEST(CollisionOperator, ZeroTheta0IsClassicalBitwise) {
  const VelocityGrid grid(16, 8.0);
  CollisionOperator op(build_kernel_tables(grid, 4));
  std::mt19937_64 rng(1);
  const auto f = qkinetic::testing::gaussian_mixture(grid, rng, 2, 0.5, 0.8, 1.2, 0.5);
  const auto qc = op.evaluate(f, {Statistics::Classical, 0.0, 1.0});
  const auto qf = op.evaluate(f, {Statistics::Fermi, 0.0, 1.0});
  const auto qb = op.evaluate(f, {Statistics::Bose, 0.0, 1.0});
  EXPECT_EQ(qc, qf);
  EXPECT_EQ(qc, qb);
}

TEST(CollisionOperator, QuantumCorrectionIsLinearInTheta0) {
  const VelocityGrid grid(16, 8.0);
  CollisionOperator op(build_kernel_tables(grid, 4));
  std::mt19937_64 rng(2);
  const auto f = qkinetic::testing::gaussian_mixture(grid, rng, 2, 0.5, 0.8, 1.2, 0.5);
  const auto qc = op.evaluate(f, {Statistics::Classical, 0.0, 1.0});
  const double c = max_abs_diff(op.evaluate(f, {Statistics::Bose, 1e-2, 1.0}), qc) / 1e-2;
  for (double theta0 : {1e-3, 1e-4, 1e-6}) {
    const double d = max_abs_diff(op.evaluate(f, {Statistics::Bose, theta0, 1.0}), qc);
    EXPECT_LE(d, theta0 * c * (1.0 + 1e-6));
  }
}

TEST(CollisionOperator, SaturatedFermiFieldIsStationary) {
  const VelocityGrid grid(16, 8.0);
  CollisionOperator op(build_kernel_tables(grid, 4));
  const double theta0 = 4.0;
  const auto q = op.evaluate(std::vector<double>(grid.size(), 1.0 / theta0),
                             {Statistics::Fermi, theta0, 1.0});
  EXPECT_LE(max_abs(q), 1e-8);
}

TEST(CollisionOperator, ClassicalMaxwellianResidualNearReference) {
  const double e = equilibrium_residual(Statistics::Classical, 0.0, 32, 8.0);
  EXPECT_GE(e, 3.8063e-12 / 100.0);
  EXPECT_LE(e, 3.8063e-12 * 100.0);
}

TEST(CollisionOperator, BoseSmallTheta0ResidualNearReference) {
  const double e = equilibrium_residual(Statistics::Bose, 0.01, 32, 8.0);
  EXPECT_GE(e, 2.5512e-10 / 100.0);
  EXPECT_LE(e, 2.5512e-10 * 100.0);
}

TEST(CollisionOperator, FermiLargeTheta0ResidualNearReference) {
  const double e = equilibrium_residual(Statistics::Fermi, 9.0, 32, 8.0);
  EXPECT_GE(e, 2.0192e-6 / 100.0);
  EXPECT_LE(e, 2.0192e-6 * 100.0);
}

TEST(CollisionOperator, BoseLargeTheta0ShortDomainResidualNearReference) {
  const double e = equilibrium_residual(Statistics::Bose, 9.0, 64, 6.0);
  EXPECT_GE(e, 4.0278e-6 / 100.0);
  EXPECT_LE(e, 4.0278e-6 * 100.0);
}

TEST(CollisionOperator, CubicCostScalesLikeNToTheFourthLogN) {
  std::vector<double> log_n, log_t;
  for (int n : {8, 16, 32, 64}) {
    const VelocityGrid grid(n, 8.0);
    CollisionOperator op(build_kernel_tables(grid, 4));
    const auto f = equilibrium(Statistics::Fermi, 9.0, grid);
    std::vector<double> out(f.size());
    const CollisionConfig cfg{Statistics::Fermi, 9.0, 1.0};
    double best = 1e300;
    for (int rep = 0; rep < (n < 64 ? 7 : 2); ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      op.evaluate(f, cfg, out);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    log_n.push_back(std::log(static_cast<double>(n)));
    log_t.push_back(std::log(best / std::log(static_cast<double>(n))));
  }
  const std::size_t k = log_n.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += log_n[i] / k;
    my += log_t[i] / k;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxy += (log_n[i] - mx) * (log_t[i] - my);
    sxx += (log_n[i] - mx) * (log_n[i] - mx);
  }
  EXPECT_NEAR(sxy / sxx, 4.0, 0.5);
}
