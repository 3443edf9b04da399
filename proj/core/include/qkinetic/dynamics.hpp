#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qkinetic/moments.hpp"
#include "qkinetic/quantum_statistics.hpp"
#include "qkinetic/spectral_collision.hpp"
#include "qkinetic/velocity_grid.hpp"

namespace qkinetic {

enum class Limiter { Minmod, VanLeer, None };
enum class Scheme { ForwardEuler, APFirstOrder, IMEX2, BGKPenalized };
enum class Boundary { ZeroGradient };

const char* to_string(Limiter l);
const char* to_string(Scheme s);
/// Accepts "minmod", "vanleer", "none". Throws ConfigError otherwise.
Limiter parse_limiter(std::string_view name);
/// Accepts "euler", "ap", "imex2", "bgk". Throws ConfigError otherwise.
Scheme parse_scheme(std::string_view name);

/// f(x_i, v) on Nx uniform cells of [x_min, x_max], one velocity grid per
/// cell, stored cell-major.
class SpatialField {
 public:
  /// nx == 1 is the spatially homogeneous case; otherwise nx >= 4.
  SpatialField(const VelocityGrid& grid, int nx, double x_min, double x_max);

  const VelocityGrid& grid() const { return grid_; }
  int nx() const { return nx_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double dx() const { return (x_max_ - x_min_) / nx_; }
  double x_center(int i) const { return x_min_ + (i + 0.5) * dx(); }
  Boundary boundary() const { return Boundary::ZeroGradient; }

  std::span<double> cell(int i) { return {data_.data() + i * grid_.size(), grid_.size()}; }
  std::span<const double> cell(int i) const {
    return {data_.data() + i * grid_.size(), grid_.size()};
  }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  VelocityGrid grid_;
  int nx_;
  double x_min_, x_max_;
  std::vector<double> data_;
};

struct SchemeConfig {
  Scheme scheme = Scheme::APFirstOrder;
  Limiter limiter = Limiter::Minmod;
  double epsilon = 1.0;
  /// Fixed penalization weight; when empty, estimate_lambda is used each step.
  std::optional<double> lambda;
  double c_lambda = 1.0;
  double cfl = 1.0;
  double dt = 0.0;
  CollisionConfig collision;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// dt = cfl * dx / L.
double cfl_dt(const VelocityGrid& grid, double dx, double cfl);

/// -v_x d/dx f per velocity node: upwind fluxes of a limited piecewise-linear
/// reconstruction, zero-gradient ghost cells, flux-difference form. With
/// Limiter::None the reconstruction is piecewise constant.
void transport_rhs(const SpatialField& field, Limiter limiter, std::span<double> out);
std::vector<double> transport_rhs(const SpatialField& field, Limiter limiter);

/// Upper estimate of the spectral radius of the linearized collision operator,
/// c_lambda * max_i pi C rho_i (1 + theta0 max_v f_i) for Bose gases and
/// c_lambda * max_i pi C rho_i otherwise, with C the kernel constant.
double estimate_lambda(const SpatialField& field, const CollisionConfig& collision,
                       double c_lambda = 1.0);

/// Per-cell fugacity warm starts for the BGK-penalized scheme.
struct ThermoCache {
  std::vector<std::optional<double>> fugacity;
};

/// f + dt (transport + Q_q(f)/eps).
SpatialField step_forward_euler(const SpatialField& field, const SchemeConfig& config,
                                const CollisionOperator& op);

/// Penalized first-order step: conserved moments advanced with the same
/// transport fluxes, then
///   f' = [f + dt T(f) + (dt/eps)(Q_q(f) - lambda (M_c - f)) + (lambda dt/eps) M_c']
///        / (1 + lambda dt/eps)
/// with M_c' the classical-substitute Maxwellian of the new moments. Throws
/// NonpositiveDensity when the moment update leaves the admissible set.
SpatialField step_ap_first_order(const SpatialField& field, const SchemeConfig& config,
                                 const CollisionOperator& op);

/// Two-stage IMEX variant: a half step of the first-order scheme gives f*,
/// then the full step uses T(f*), Q_q(f*) - lambda (M_c* - f*) explicitly and
/// averages the penalization at n and n+1 implicitly.
SpatialField step_imex2(const SpatialField& field, const SchemeConfig& config,
                        const CollisionOperator& op);

/// As step_ap_first_order with Q_q(f) replaced by the quantum BGK operator
/// M_q - f. Solves for the fugacity in every cell, warm-started from cache.
SpatialField step_bgk_penalized(const SpatialField& field, const SchemeConfig& config,
                                ThermoCache& cache);

/// Quantum Maxwellian with the moments of f (classical Maxwellian with T = e
/// for Classical statistics). `hint` is updated with the fugacity found.
std::vector<double> moment_matched_maxwellian(std::span<const double> f,
                                              const VelocityGrid& grid,
                                              const CollisionConfig& config,
                                              std::optional<double>* hint = nullptr);

/// Dispatches on config.scheme. `cache` is only used by BGKPenalized.
SpatialField advance(const SpatialField& field, const SchemeConfig& config,
                     const CollisionOperator& op, ThermoCache& cache);

/// Index of the first cell holding a NaN or Inf, or -1.
int first_nonfinite_cell(const SpatialField& field);

}  // namespace qkinetic
