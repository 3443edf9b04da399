#include "qkinetic/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qkinetic/errors.hpp"
#include "qkinetic/log.hpp"

namespace qkinetic {

namespace {

double limited_slope(Limiter limiter, double left, double right) {
  switch (limiter) {
    case Limiter::Minmod:
      if (left * right <= 0.0) return 0.0;
      return left > 0.0 ? std::min(left, right) : std::max(left, right);
    case Limiter::VanLeer:
      if (left * right <= 0.0) return 0.0;
      return 2.0 * left * right / (left + right);
    case Limiter::None:
      break;
  }
  return 0.0;
}

using SourceFn = std::function<void(int cell, std::span<const double> f, std::span<double> out)>;

void build_classical(const ConservedState& u, const VelocityGrid& grid, std::span<double> out) {
  const MacroState m = u.to_macro();
  classical_maxwellian_from_e(m.density, m.velocity, m.internal_energy, grid, out);
}

ConservedState advance_moments(const ConservedState& u, const ConservedState& flux, double h) {
  ConservedState out = u;
  out.mass += h * flux.mass;
  out.momentum[0] += h * flux.momentum[0];
  out.momentum[1] += h * flux.momentum[1];
  out.total_energy += h * flux.total_energy;
  return out;
}

double penalization(const SpatialField& field, const SchemeConfig& config) {
  return config.lambda ? *config.lambda : estimate_lambda(field, config.collision, config.c_lambda);
}

void monitor_bounds(const SpatialField& field, const CollisionConfig& config) {
  if (config.statistics != Statistics::Fermi) return;
  const double cap = 1.0 / config.theta0;
  double over = 0.0;
  for (double v : field.data()) over = std::max({over, v - cap, -v});
  if (over > 1e-8) {
    std::ostringstream msg;
    msg << "dynamics: Fermi field leaves [0, 1/theta0] by " << over;
    log::warn(msg.str());
  }
}

// One penalized step of size h from `field` with explicit source S:
//   f' = [f + h T + (h/eps)(S - lambda (M_c - f)) + a M_c'] / (1 + a),
// a = lambda h / eps.
SpatialField penalized_step(const SpatialField& field, const SchemeConfig& config, double h,
                            const SourceFn& source,
                            std::vector<ConservedState>* new_moments = nullptr) {
  const VelocityGrid& grid = field.grid();
  const std::size_t g = grid.size();
  const double lambda = penalization(field, config);
  const double eps = config.epsilon;
  const double a = lambda * h / eps;
  const std::vector<double> rhs = transport_rhs(field, config.limiter);

  SpatialField out = field;
  std::vector<double> m_old(g), m_new(g), s(g);
  for (int i = 0; i < field.nx(); ++i) {
    const auto f = field.cell(i);
    const std::span<const double> t(rhs.data() + i * g, g);
    const ConservedState u = conserved_moments(f, grid);
    build_classical(u, grid, m_old);
    const ConservedState u_new = advance_moments(u, conserved_moments(t, grid), h);
    build_classical(u_new, grid, m_new);
    if (new_moments) new_moments->push_back(u_new);
    source(i, f, s);
    auto o = out.cell(i);
    for (std::size_t k = 0; k < g; ++k) {
      o[k] = (f[k] + h * t[k] + (h / eps) * (s[k] - lambda * (m_old[k] - f[k])) + a * m_new[k]) /
             (1.0 + a);
    }
  }
  monitor_bounds(out, config.collision);
  return out;
}

SourceFn collision_source(const CollisionOperator& op, const CollisionConfig& config) {
  return [&op, &config](int, std::span<const double> f, std::span<double> out) {
    op.evaluate(f, config, out);
  };
}

}  // namespace

const char* to_string(Limiter l) {
  switch (l) {
    case Limiter::Minmod:
      return "minmod";
    case Limiter::VanLeer:
      return "vanleer";
    case Limiter::None:
      return "none";
  }
  return "?";
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::ForwardEuler:
      return "euler";
    case Scheme::APFirstOrder:
      return "ap";
    case Scheme::IMEX2:
      return "imex2";
    case Scheme::BGKPenalized:
      return "bgk";
  }
  return "?";
}

Limiter parse_limiter(std::string_view name) {
  for (Limiter l : {Limiter::Minmod, Limiter::VanLeer, Limiter::None}) {
    if (name == to_string(l)) return l;
  }
  throw ConfigError("limiter: unknown value '" + std::string(name) + "'");
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s :
       {Scheme::ForwardEuler, Scheme::APFirstOrder, Scheme::IMEX2, Scheme::BGKPenalized}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("scheme: unknown value '" + std::string(name) + "'");
}

SpatialField::SpatialField(const VelocityGrid& grid, int nx, double x_min, double x_max)
    : grid_(grid), nx_(nx), x_min_(x_min), x_max_(x_max) {
  if (nx != 1 && nx < 4) throw ConfigError("SpatialField: Nx must be 1 or at least 4");
  if (!(x_max > x_min)) throw ConfigError("SpatialField: x_max must exceed x_min");
  data_.assign(static_cast<std::size_t>(nx) * grid.size(), 0.0);
}

void SchemeConfig::validate() const {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon: must be positive");
  if (lambda && !(*lambda > 0.0)) throw ConfigError("lambda: must be positive");
  if (!(c_lambda > 0.0)) throw ConfigError("c_lambda: must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl: must lie in (0, 1]");
  if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
  if (scheme == Scheme::BGKPenalized && lambda && !(*lambda > 0.5)) {
    throw ConfigError("lambda: BGK-penalized scheme needs lambda > 1/2");
  }
  collision.validate();
}

double cfl_dt(const VelocityGrid& grid, double dx, double cfl) {
  return cfl * dx / grid.max_speed();
}

void transport_rhs(const SpatialField& field, Limiter limiter, std::span<double> out) {
  const VelocityGrid& grid = field.grid();
  const int nx = field.nx();
  const std::size_t g = grid.size();
  if (out.size() != g * nx) throw ConfigError("transport_rhs: size mismatch");
  const double dx = field.dx();
  const auto& data = field.data();
  // Cells -1 and nx are zero-gradient ghosts with zero slope.
  std::vector<double> value(nx + 2), slope(nx + 2), flux(nx + 1);
  for (int ix = 0; ix < grid.n(); ++ix) {
    const double vx = grid.node(ix);
    for (int iy = 0; iy < grid.n(); ++iy) {
      const std::size_t k = grid.index(ix, iy);
      for (int i = 0; i < nx; ++i) value[i + 1] = data[i * g + k];
      value[0] = value[1];
      value[nx + 1] = value[nx];
      slope[0] = slope[nx + 1] = 0.0;
      for (int i = 1; i <= nx; ++i) {
        slope[i] = limited_slope(limiter, value[i] - value[i - 1], value[i + 1] - value[i]);
      }
      for (int j = 0; j <= nx; ++j) {
        // Interface between padded cells j and j+1.
        flux[j] = vx >= 0.0 ? vx * (value[j] + 0.5 * slope[j])
                            : vx * (value[j + 1] - 0.5 * slope[j + 1]);
      }
      for (int i = 0; i < nx; ++i) out[i * g + k] = -(flux[i + 1] - flux[i]) / dx;
    }
  }
}

std::vector<double> transport_rhs(const SpatialField& field, Limiter limiter) {
  std::vector<double> out(field.data().size());
  transport_rhs(field, limiter, out);
  return out;
}

double estimate_lambda(const SpatialField& field, const CollisionConfig& collision,
                       double c_lambda) {
  const bool bose = collision.statistics == Statistics::Bose;
  double bound = 0.0;
  for (int i = 0; i < field.nx(); ++i) {
    const auto f = field.cell(i);
    double b = conserved_moments(f, field.grid()).mass;
    if (bose) b *= 1.0 + collision.theta0 * *std::max_element(f.begin(), f.end());
    bound = std::max(bound, b);
  }
  return c_lambda * std::numbers::pi * collision.kernel_constant * bound;
}

SpatialField step_forward_euler(const SpatialField& field, const SchemeConfig& config,
                                const CollisionOperator& op) {
  const std::size_t g = field.grid().size();
  const double dt = config.dt;
  const std::vector<double> rhs = transport_rhs(field, config.limiter);
  SpatialField out = field;
  std::vector<double> q(g);
  for (int i = 0; i < field.nx(); ++i) {
    const auto f = field.cell(i);
    op.evaluate(f, config.collision, q);
    auto o = out.cell(i);
    for (std::size_t k = 0; k < g; ++k) {
      o[k] = f[k] + dt * (rhs[i * g + k] + q[k] / config.epsilon);
    }
  }
  monitor_bounds(out, config.collision);
  return out;
}

SpatialField step_ap_first_order(const SpatialField& field, const SchemeConfig& config,
                                 const CollisionOperator& op) {
  return penalized_step(field, config, config.dt, collision_source(op, config.collision));
}

SpatialField step_imex2(const SpatialField& field, const SchemeConfig& config,
                        const CollisionOperator& op) {
  const VelocityGrid& grid = field.grid();
  const std::size_t g = grid.size();
  const double dt = config.dt;
  const double eps = config.epsilon;
  const double lambda = penalization(field, config);
  SchemeConfig half = config;
  half.lambda = lambda;
  std::vector<ConservedState> u_star;
  const SpatialField star =
      penalized_step(field, half, 0.5 * dt, collision_source(op, config.collision), &u_star);

  const double a = 0.5 * lambda * dt / eps;
  const std::vector<double> rhs = transport_rhs(star, config.limiter);
  SpatialField out = field;
  std::vector<double> m_old(g), m_star(g), m_new(g), q(g);
  for (int i = 0; i < field.nx(); ++i) {
    const auto f = field.cell(i);
    const auto fs = star.cell(i);
    const std::span<const double> t(rhs.data() + i * g, g);
    const ConservedState u = conserved_moments(f, grid);
    build_classical(u, grid, m_old);
    build_classical(u_star[i], grid, m_star);
    build_classical(advance_moments(u, conserved_moments(t, grid), dt), grid, m_new);
    op.evaluate(fs, config.collision, q);
    auto o = out.cell(i);
    for (std::size_t k = 0; k < g; ++k) {
      o[k] = (f[k] + dt * t[k] + (dt / eps) * (q[k] - lambda * (m_star[k] - fs[k])) +
              a * (m_old[k] - f[k]) + a * m_new[k]) /
             (1.0 + a);
    }
  }
  monitor_bounds(out, config.collision);
  return out;
}

std::vector<double> moment_matched_maxwellian(std::span<const double> f,
                                              const VelocityGrid& grid,
                                              const CollisionConfig& config,
                                              std::optional<double>* hint) {
  const MacroState m = compute_macro(f, grid);
  if (config.statistics == Statistics::Classical) {
    return classical_maxwellian_from_e(m.density, m.velocity, m.internal_energy, grid);
  }
  std::optional<double> guess = hint ? *hint : std::nullopt;
  if (!guess) guess = config.theta0 * m.density / (2.0 * std::numbers::pi * m.internal_energy);
  const ThermoState thermo =
      solve_fugacity(m.density, m.internal_energy, config.theta0, config.statistics, guess);
  if (hint) *hint = thermo.fugacity;
  return quantum_maxwellian(thermo, m.velocity, grid);
}

SpatialField step_bgk_penalized(const SpatialField& field, const SchemeConfig& config,
                                ThermoCache& cache) {
  cache.fugacity.resize(field.nx());
  const VelocityGrid& grid = field.grid();
  const CollisionConfig& collision = config.collision;
  return penalized_step(field, config, config.dt,
                        [&](int i, std::span<const double> f, std::span<double> out) {
                          const auto mq =
                              moment_matched_maxwellian(f, grid, collision, &cache.fugacity[i]);
                          for (std::size_t k = 0; k < out.size(); ++k) out[k] = mq[k] - f[k];
                        });
}

SpatialField advance(const SpatialField& field, const SchemeConfig& config,
                     const CollisionOperator& op, ThermoCache& cache) {
  switch (config.scheme) {
    case Scheme::ForwardEuler:
      return step_forward_euler(field, config, op);
    case Scheme::APFirstOrder:
      return step_ap_first_order(field, config, op);
    case Scheme::IMEX2:
      return step_imex2(field, config, op);
    case Scheme::BGKPenalized:
      return step_bgk_penalized(field, config, cache);
  }
  throw ConfigError("scheme: unknown");
}

int first_nonfinite_cell(const SpatialField& field) {
  const std::size_t g = field.grid().size();
  const auto& data = field.data();
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (!std::isfinite(data[k])) return static_cast<int>(k / g);
  }
  return -1;
}

}  // namespace qkinetic
