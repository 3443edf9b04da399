#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qkinetic/fft.hpp"
#include "qkinetic/velocity_grid.hpp"

namespace qkinetic {

/// Particle statistics. Bose takes the upper sign in (1 +- theta0 f).
enum class Statistics { Bose, Fermi, Classical };

const char* to_string(Statistics s);
Statistics parse_statistics(std::string_view name);

/// Parameters of the collision operator for 2-D Maxwellian molecules.
struct CollisionConfig {
  Statistics statistics = Statistics::Classical;
  double theta0 = 0.0;           ///< hbar^{d_v}; ignored when Classical
  double kernel_constant = 1.0;  ///< overall weight of the Carleman form

  /// +1 for Bose, -1 for Fermi, 0 for Classical.
  double sign() const;
  /// Coefficient of the cubic part: sign() * theta0.
  double cubic_weight() const { return sign() * theta0; }
  void validate() const;
};

/// phi(s) = (2L/(pi s)) sin(pi R s / L), with phi(0) = 2R.
double kernel_phi(double s, double half_width, double radius);

/// Largest truncation radius allowed by L >= (3 + sqrt 2) R / 2.
double max_truncation_radius(const VelocityGrid& grid);

/// Separable angular factors of the Carleman kernel modes.
///
/// alpha_p(l) = phi(l . (cos t_p, sin t_p)), alpha'_p(m) = phi(m . (-sin t_p,
/// cos t_p)), t_p = (pi/2)(p/M), tabulated for integer l, m in [-N, N]^2.
/// (pi/M) sum_p alpha_p(l) alpha'_p(m) reproduces the symmetric kernel mode
/// beta(l, m) + beta(m, l) over 2 in the limit of large M; the collision sums
/// only ever see that symmetric part. Immutable once built.
class KernelTables {
 public:
  KernelTables(const VelocityGrid& grid, int angular_count, double radius);

  const VelocityGrid& grid() const { return grid_; }
  int angular_count() const { return m_; }
  double truncation_radius() const { return radius_; }
  int extent() const { return grid_.n(); }

  double alpha(int p, int lx, int ly) const { return alpha_[offset(p, lx, ly)]; }
  double alpha_prime(int p, int mx, int my) const {
    return alpha_prime_[offset(p, mx, my)];
  }
  /// (pi/M) sum_p alpha_p(l) alpha'_p(m).
  double beta(int lx, int ly, int mx, int my) const;

  /// Row of alpha_p over the extended range, indexed (lx+N)*(2N+1) + (ly+N).
  std::span<const double> alpha_row(int p) const;
  std::span<const double> alpha_prime_row(int p) const;

 private:
  std::size_t offset(int p, int lx, int ly) const {
    const int e = 2 * grid_.n() + 1;
    return (static_cast<std::size_t>(p) * e + (lx + grid_.n())) * e +
           (ly + grid_.n());
  }

  VelocityGrid grid_;
  int m_;
  double radius_;
  std::vector<double> alpha_;
  std::vector<double> alpha_prime_;
};

/// Builds the tables; R defaults to max_truncation_radius(grid).
/// Throws ConfigError if M < 1 or R is outside (0, max_truncation_radius].
std::shared_ptr<const KernelTables> build_kernel_tables(
    const VelocityGrid& grid, int angular_count,
    std::optional<double> radius = std::nullopt);

/// Fourier coefficients f_k, k in [-N/2, N/2-1]^2, of a field on the grid:
///   f(v) = sum_k f_k exp(i (pi/L) k.v).
class SpectralField {
 public:
  explicit SpectralField(const VelocityGrid& grid);

  const VelocityGrid& grid() const { return grid_; }
  Complex& at(int kx, int ky) { return coeffs_[slot(kx, ky)]; }
  const Complex& at(int kx, int ky) const { return coeffs_[slot(kx, ky)]; }
  std::span<Complex> coefficients() { return coeffs_; }
  std::span<const Complex> coefficients() const { return coeffs_; }

  /// Max |f_k|.
  double max_abs() const;

 private:
  std::size_t slot(int kx, int ky) const {
    const int h = grid_.n() / 2;
    return static_cast<std::size_t>(kx + h) * grid_.n() + (ky + h);
  }

  VelocityGrid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField forward_transform(std::span<const double> f, const VelocityGrid& grid);
/// Real part of the series at the grid nodes.
std::vector<double> inverse_transform(const SpectralField& field);
/// Full complex series at the grid nodes.
std::vector<Complex> inverse_transform_complex(const SpectralField& field);

/// Spectral evaluation of Q_q = Q_c +- theta0 (Q_1 + Q_2 - Q_3 - Q_4).
///
/// Every product is formed on a 2N x 2N padded grid, which makes all
/// convolutions linear on the retained modes. Q_1 costs O(M N^4 log N); the
/// other terms O(M N^2 log N). Owns FFT plans and scratch; not thread-safe,
/// use one instance per worker.
class CollisionOperator {
 public:
  explicit CollisionOperator(std::shared_ptr<const KernelTables> tables);
  ~CollisionOperator();
  CollisionOperator(CollisionOperator&&) noexcept;
  CollisionOperator& operator=(CollisionOperator&&) noexcept;

  const KernelTables& tables() const { return *tables_; }
  const VelocityGrid& grid() const { return tables_->grid(); }

  /// Classical operator Q_c: gain beta(l,m) minus loss beta(l,l).
  SpectralField qc_hat(const SpectralField& f) const;
  SpectralField q1_hat(const SpectralField& f) const;
  SpectralField q2_hat(const SpectralField& f) const;
  SpectralField q3_hat(const SpectralField& f) const;
  SpectralField q4_hat(const SpectralField& f) const;

  /// Q_q(f) sampled on the grid. The unpaired Nyquist modes (k = -N/2 along
  /// either axis) of f are dropped and none are produced, so f and Q are both
  /// real trigonometric polynomials. Warns (does not throw) when a Fermi
  /// field leaves [0, 1/theta0].
  std::vector<double> evaluate(std::span<const double> f,
                               const CollisionConfig& config) const;
  void evaluate(std::span<const double> f, const CollisionConfig& config,
                std::span<double> out) const;

 private:
  struct Weights {
    double classical = 0.0;
    double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0;
  };
  struct Workspace;

  void load_grid_values(std::span<const double> f) const;
  void load_spectral(const SpectralField& f) const;
  void accumulate(const Weights& w) const;
  void accumulate_q1(double weight, std::span<const double> alpha,
                     std::span<const double> alpha_p) const;
  SpectralField result_spectral() const;

  std::shared_ptr<const KernelTables> tables_;
  std::unique_ptr<Workspace> ws_;
};

}  // namespace qkinetic
