#include "qkinetic/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qkinetic/errors.hpp"
#include "qkinetic/log.hpp"
#include "qkinetic/moments.hpp"

namespace qkinetic {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(std::string(key) + ": expected a number, got '" + s + "'");
  }
  return v;
}

long long parse_integer(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(std::string(key) + ": expected an integer, got '" + s + "'");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
  const std::string s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(std::string(key) + ": expected a boolean, got '" + s + "'");
}

template <class T, class F>
std::vector<T> parse_list(std::string_view key, std::string_view text, F parse_one) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    out.push_back(static_cast<T>(parse_one(key, text.substr(start, end - start))));
    start = end + 1;
  }
  return out;
}

std::string format_number(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_number(v);
    first = false;
  }
  out << '\n';
}

void check_finite(const SpatialField& field, int step) {
  const int cell = first_nonfinite_cell(field);
  if (cell >= 0) {
    throw NumericalFailure("non-finite value at step " + std::to_string(step) + ", cell " +
                           std::to_string(cell));
  }
}

ProfileRow profile_row(double x, const MacroState& m, const ThermoState& th) {
  return {x, m.density, m.velocity[0], m.velocity[1], m.internal_energy, th.fugacity,
          th.temperature};
}

std::vector<ProfileRow> profile_from_macro(const std::vector<double>& x,
                                           const std::vector<MacroState>& macro,
                                           const ExperimentConfig& config) {
  const auto thermo = euler_diagnostics(macro, config.theta0, config.statistics);
  std::vector<ProfileRow> out;
  for (std::size_t i = 0; i < macro.size(); ++i) {
    out.push_back(profile_row(x[i], macro[i], thermo[i]));
  }
  return out;
}

}  // namespace

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::AccuracyTable:
      return "accuracy";
    case Scenario::RelaxFermi:
      return "relax-fermi";
    case Scenario::RelaxBose:
      return "relax-bose";
    case Scenario::ShockTube:
      return "shock";
  }
  return "?";
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::AccuracyTable, Scenario::RelaxFermi, Scenario::RelaxBose,
                     Scenario::ShockTube}) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("scenario: unknown value '" + std::string(name) + "'");
}

ExperimentConfig ExperimentConfig::defaults(Scenario scenario) {
  ExperimentConfig c;
  c.scenario = scenario;
  switch (scenario) {
    case Scenario::AccuracyTable:
      break;
    case Scenario::RelaxFermi:
      c.statistics = Statistics::Fermi;
      c.theta0 = 0.5;
      c.epsilon = 1.0;
      c.t_end = 0.5;
      break;
    case Scenario::RelaxBose:
      c.statistics = Statistics::Bose;
      c.theta0 = 1.0;
      c.epsilon = 1.0;
      c.t_end = 0.5;
      break;
    case Scenario::ShockTube:
      break;
  }
  return c;
}

void ExperimentConfig::set(std::string_view key_in, std::string_view value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "statistics") {
    try {
      statistics = parse_statistics(value);
    } catch (const Error&) {
      throw ConfigError("statistics: unknown value '" + value + "'");
    }
  } else if (key == "theta0") {
    theta0 = parse_double(key, value);
  } else if (key == "epsilon") {
    epsilon = parse_double(key, value);
  } else if (key == "N") {
    n = static_cast<int>(parse_integer(key, value));
  } else if (key == "L") {
    half_width = parse_double(key, value);
  } else if (key == "M") {
    angular_count = static_cast<int>(parse_integer(key, value));
  } else if (key == "R") {
    radius = parse_double(key, value);
  } else if (key == "sizes") {
    table_sizes = parse_list<int>(key, value, parse_integer);
  } else if (key == "Nx") {
    nx = static_cast<int>(parse_integer(key, value));
  } else if (key == "x_min") {
    x_min = parse_double(key, value);
  } else if (key == "x_max") {
    x_max = parse_double(key, value);
  } else if (key == "cfl") {
    cfl = parse_double(key, value);
  } else if (key == "euler_cfl") {
    euler_cfl = parse_double(key, value);
  } else if (key == "scheme") {
    kfvs = value == "kfvs";
    if (!kfvs) scheme = parse_scheme(value);
  } else if (key == "limiter") {
    limiter = parse_limiter(value);
  } else if (key == "lambda") {
    if (value == "auto") {
      lambda.reset();
    } else {
      lambda = parse_double(key, value);
    }
  } else if (key == "c_lambda") {
    c_lambda = parse_double(key, value);
  } else if (key == "t_end") {
    t_end = parse_double(key, value);
  } else if (key == "dt") {
    dt = parse_double(key, value);
  } else if (key == "symmetrize_ic") {
    symmetrize_ic = parse_bool(key, value);
  } else if (key == "snapshots") {
    snapshot_times = parse_list<double>(key, value, parse_double);
  } else if (key == "seed") {
    seed = static_cast<std::uint64_t>(parse_integer(key, value));
  } else if (key == "out") {
    output_dir = value;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

double ExperimentConfig::resolved_half_width() const {
  if (half_width) return *half_width;
  return statistics == Statistics::Bose && theta0 >= 1.0 ? 6.0 : 8.0;
}

VelocityGrid ExperimentConfig::grid() const { return VelocityGrid(n, resolved_half_width()); }

CollisionConfig ExperimentConfig::collision() const {
  return {statistics, statistics == Statistics::Classical ? 0.0 : theta0, 1.0};
}

void ExperimentConfig::resolve() {
  half_width = resolved_half_width();
  if (!x_min || !x_max) {
    const bool kinetic = !kfvs && epsilon >= 1e-2;
    if (!x_min) x_min = kinetic ? -0.25 : 0.0;
    if (!x_max) x_max = kinetic ? 1.25 : 1.0;
  }
  if (!nx) nx = static_cast<int>(std::lround((*x_max - *x_min) / 0.01));
  if (!dt && (scenario == Scenario::RelaxFermi || scenario == Scenario::RelaxBose)) dt = 1e-3;

  if (!(*half_width > 0.0)) throw ConfigError("L: must be positive");
  if (n < 8 || n % 2 != 0) throw ConfigError("N: must be even and >= 8");
  if (angular_count < 1) throw ConfigError("M: must be >= 1");
  if (statistics != Statistics::Classical && !(theta0 > 0.0)) {
    throw ConfigError("theta0: must be positive");
  }
  if (!(epsilon > 0.0)) throw ConfigError("epsilon: must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl: must lie in (0, 1]");
  if (!(euler_cfl > 0.0 && euler_cfl <= 1.0)) throw ConfigError("euler_cfl: must lie in (0, 1]");
  if (!(c_lambda > 0.0)) throw ConfigError("c_lambda: must be positive");
  if (lambda && !(*lambda > 0.0)) throw ConfigError("lambda: must be positive");
  if (scheme == Scheme::BGKPenalized && lambda && !(*lambda > 0.5)) {
    throw ConfigError("lambda: the BGK-penalized scheme needs lambda > 1/2");
  }
  if (!(t_end > 0.0)) throw ConfigError("t_end: must be positive");
  if (dt && !(*dt > 0.0)) throw ConfigError("dt: must be positive");
  if (radius && !(*radius > 0.0 && *radius <= max_truncation_radius(grid()) * (1.0 + 1e-12))) {
    throw ConfigError("R: must lie in (0, " + format_number(max_truncation_radius(grid())) + "]");
  }

  switch (scenario) {
    case Scenario::AccuracyTable:
      if (table_sizes.size() < 2) throw ConfigError("sizes: need at least two sizes");
      for (int s : table_sizes) {
        if (s < 8 || s % 2 != 0) throw ConfigError("sizes: every size must be even and >= 8");
      }
      break;
    case Scenario::RelaxFermi:
    case Scenario::RelaxBose: {
      const Statistics want =
          scenario == Scenario::RelaxFermi ? Statistics::Fermi : Statistics::Bose;
      if (statistics != want) {
        throw ConfigError(std::string("statistics: scenario ") + qkinetic::to_string(scenario) +
                          " requires " + qkinetic::to_string(want));
      }
      for (double t : snapshot_times) {
        if (t < 0.0 || t > t_end) throw ConfigError("snapshots: times must lie in [0, t_end]");
      }
      if (scenario == Scenario::RelaxFermi) {
        const auto f0 = relaxation_initial_datum(*this);
        if (*std::max_element(f0.begin(), f0.end()) > 1.0 / theta0) {
          throw ConfigError("theta0: the Fermi initial datum exceeds 1/theta0");
        }
      }
      break;
    }
    case Scenario::ShockTube:
      if (statistics == Statistics::Classical) {
        throw ConfigError("statistics: the shock tube needs bose or fermi");
      }
      if (!(*x_max > *x_min)) throw ConfigError("x_max: must exceed x_min");
      if (!(*x_min < 0.5 && *x_max > 0.5)) throw ConfigError("x_min/x_max: must contain x = 0.5");
      if (*nx < 4) throw ConfigError("Nx: must be >= 4");
      break;
  }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
  std::string section;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "common") parse_scenario(section);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    if (!section.empty() && section != "common" && section != to_string(config.scenario)) {
      continue;
    }
    config.set(std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
  }
}

void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  apply_config_text(config, buffer.str());
}

AccuracyResult run_accuracy_table(const ExperimentConfig& config) {
  AccuracyResult result;
  const CollisionConfig collision = config.collision();
  for (int size : config.table_sizes) {
    const VelocityGrid grid(size, config.resolved_half_width());
    const CollisionOperator op(build_kernel_tables(grid, config.angular_count, config.radius));
    const std::vector<double> m =
        config.statistics == Statistics::Classical
            ? classical_maxwellian_from_e(1.0, {0.0, 0.0}, 1.0, grid)
            : quantum_maxwellian(
                  thermo_from_density_temperature(1.0, 1.0, config.theta0, config.statistics),
                  {0.0, 0.0}, grid);
    const std::vector<double> q = op.evaluate(m, collision);
    double norm = 0.0;
    for (double v : q) norm = std::max(norm, std::abs(v));
    result.rows.push_back({size, norm});
    log::info("accuracy: N=" + std::to_string(size) + " max|Q|=" + format_number(norm));
  }
  const auto& first = result.rows.front();
  const auto& last = result.rows.back();
  result.rate = std::log2(first.max_norm / last.max_norm) /
                std::log2(static_cast<double>(last.n) / first.n);
  return result;
}

std::vector<double> relaxation_initial_datum(const ExperimentConfig& config) {
  const VelocityGrid grid = config.grid();
  std::vector<double> f(grid.size());
  const bool fermi = config.scenario == Scenario::RelaxFermi;
  const double v1x = fermi ? 2.0 : 1.0;
  const double v1y = fermi ? 1.0 : 0.5;
  const double t0 = fermi ? 1.0 : 0.25;
  const double a = fermi ? 1.0 : 1.0 / (4.0 * std::numbers::pi * t0);
  const double b = fermi ? 1.0 : (config.symmetrize_ic ? a : 1.0);
  for (int ix = 0; ix < grid.n(); ++ix) {
    for (int iy = 0; iy < grid.n(); ++iy) {
      const double vx = grid.node(ix), vy = grid.node(iy);
      const double p = (vx - v1x) * (vx - v1x) + (vy - v1y) * (vy - v1y);
      const double m = (vx + v1x) * (vx + v1x) + (vy + v1y) * (vy + v1y);
      f[grid.index(ix, iy)] = a * std::exp(-p / (2.0 * t0)) + b * std::exp(-m / (2.0 * t0));
    }
  }
  return f;
}

RelaxationResult run_relaxation(const ExperimentConfig& config) {
  const VelocityGrid grid = config.grid();
  const CollisionConfig collision = config.collision();
  const CollisionOperator op(build_kernel_tables(grid, config.angular_count, config.radius));
  const std::vector<double> f0 = relaxation_initial_datum(config);

  RelaxationResult result;
  std::optional<double> hint;
  result.equilibrium = moment_matched_maxwellian(f0, grid, collision, &hint);

  double dt = *config.dt;
  for (int attempt = 0;; ++attempt) {
    result.series.clear();
    result.snapshots.clear();
    std::vector<double> f = f0, q(f.size());
    const int steps = static_cast<int>(std::lround(config.t_end / dt));
    std::vector<bool> taken(config.snapshot_times.size(), false);
    bool failed = false;
    for (int s = 0; s <= steps; ++s) {
      const double t = s * dt;
      const ConservedState u = conserved_moments(f, grid);
      result.series.push_back({t, entropy(f, grid, collision), raw_moment(f, grid, 4),
                               raw_moment(f, grid, 6), u.mass, u.momentum[0], u.total_energy});
      for (std::size_t k = 0; k < taken.size(); ++k) {
        if (!taken[k] && std::abs(t - config.snapshot_times[k]) <= 0.5 * dt) {
          result.snapshots.push_back({config.snapshot_times[k], f});
          taken[k] = true;
        }
      }
      if (s == steps) break;
      op.evaluate(f, collision, q);
      for (std::size_t k = 0; k < f.size(); ++k) f[k] += dt * q[k] / config.epsilon;
      if (std::ranges::any_of(f, [](double v) { return !std::isfinite(v); })) {
        failed = true;
        if (attempt >= 3) {
          throw NumericalFailure("relaxation: non-finite value at step " + std::to_string(s + 1) +
                                 " after " + std::to_string(attempt) + " step halvings");
        }
        log::warn("relaxation: non-finite value at step " + std::to_string(s + 1) +
                  ", restarting with dt = " + format_number(0.5 * dt));
        break;
      }
    }
    if (!failed) {
      result.final_f = std::move(f);
      break;
    }
    dt *= 0.5;
  }
  result.dt = dt;
  const MacroState m = compute_macro(result.final_f, grid);
  result.final_state = profile_from_macro({0.0}, {m}, config).front();
  return result;
}

std::vector<MacroState> shock_tube_initial_macro(const ExperimentConfig& config, double* z_left,
                                                 double* z_right) {
  const ThermoState left = thermo_from_density_temperature(1.0, 1.0, config.theta0,
                                                           config.statistics);
  const ThermoState right = thermo_from_density_temperature(0.125, 0.25, config.theta0,
                                                            config.statistics);
  if (z_left) *z_left = left.fugacity;
  if (z_right) *z_right = right.fugacity;
  const DensityEnergy l = macro_from_zT(left);
  const DensityEnergy r = macro_from_zT(right);
  const int nx = *config.nx;
  const double dx = (*config.x_max - *config.x_min) / nx;
  std::vector<MacroState> out;
  for (int i = 0; i < nx; ++i) {
    const double x = *config.x_min + (i + 0.5) * dx;
    const DensityEnergy& s = x <= 0.5 ? l : r;
    out.push_back({s.density, {0.0, 0.0}, s.internal_energy});
  }
  return out;
}

ShockResult run_shock_tube(const ExperimentConfig& config) {
  ShockResult result;
  const auto initial = shock_tube_initial_macro(config, &result.z_left, &result.z_right);
  const int nx = *config.nx;
  const double x0 = *config.x_min, x1 = *config.x_max;
  std::vector<double> x(nx);
  for (int i = 0; i < nx; ++i) x[i] = x0 + (i + 0.5) * (x1 - x0) / nx;

  if (config.kfvs) {
    EulerField field(nx, x0, x1);
    for (int i = 0; i < nx; ++i) field.cells[i] = ConservedState::from_macro(initial[i]);
    double t = 0.0;
    while (t < config.t_end * (1.0 - 1e-12)) {
      const double dt = std::min(euler_cfl_dt(field, config.euler_cfl), config.t_end - t);
      if (result.steps == 0) result.dt = dt;
      field = step_euler_kfvs(field, dt);
      t += dt;
      ++result.steps;
    }
    std::vector<MacroState> macro;
    for (const auto& c : field.cells) macro.push_back(c.to_macro());
    result.profile = profile_from_macro(x, macro, config);
    return result;
  }

  const VelocityGrid grid = config.grid();
  const CollisionOperator op(build_kernel_tables(grid, config.angular_count, config.radius));
  SpatialField field(grid, nx, x0, x1);
  const ThermoState left = thermo_from_density_temperature(1.0, 1.0, config.theta0,
                                                           config.statistics);
  const ThermoState right = thermo_from_density_temperature(0.125, 0.25, config.theta0,
                                                            config.statistics);
  const auto ml = quantum_maxwellian(left, {0.0, 0.0}, grid);
  const auto mr = quantum_maxwellian(right, {0.0, 0.0}, grid);
  for (int i = 0; i < nx; ++i) std::ranges::copy(x[i] <= 0.5 ? ml : mr, field.cell(i).begin());

  SchemeConfig scheme;
  scheme.scheme = config.scheme;
  scheme.limiter = config.limiter;
  scheme.epsilon = config.epsilon;
  scheme.lambda = config.lambda;
  scheme.c_lambda = config.c_lambda;
  scheme.cfl = config.cfl;
  scheme.collision = config.collision();
  const double spectral = estimate_lambda(field, scheme.collision);
  double dt = cfl_dt(grid, field.dx(), config.cfl);
  if (config.scheme == Scheme::ForwardEuler) dt = std::min(dt, config.epsilon / spectral);
  scheme.dt = dt;
  scheme.validate();
  result.dt = dt;
  result.lambda = config.lambda ? *config.lambda : config.c_lambda * spectral;
  result.steps = static_cast<int>(std::ceil(config.t_end / dt - 1e-9));

  ThermoCache cache;
  for (int s = 0; s < result.steps; ++s) {
    scheme.dt = std::min(dt, config.t_end - s * dt);
    field = advance(field, scheme, op, cache);
    check_finite(field, s + 1);
    if ((s + 1) % 10 == 0) {
      log::info("shock: step " + std::to_string(s + 1) + "/" + std::to_string(result.steps));
    }
  }
  std::vector<MacroState> macro;
  for (int i = 0; i < nx; ++i) macro.push_back(compute_macro(field.cell(i), grid));
  result.profile = profile_from_macro(x, macro, config);
  return result;
}

void write_table_csv(const AccuracyResult& result, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "N,max_norm,rate\n";
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    out << result.rows[i].n << ',' << format_number(result.rows[i].max_norm) << ',';
    if (i + 1 == result.rows.size()) out << format_number(result.rate);
    out << '\n';
  }
}

void write_series_csv(const std::vector<SeriesRow>& series, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "t,H,m4,m6,mass,momentum_x,energy\n";
  for (const auto& r : series) {
    write_row(out, {r.t, r.entropy, r.m4, r.m6, r.mass, r.momentum_x, r.energy});
  }
}

void write_profile_csv(const std::vector<ProfileRow>& profile, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "x,rho,ux,uy,e,z,T\n";
  for (const auto& r : profile) write_row(out, {r.x, r.rho, r.ux, r.uy, r.e, r.z, r.temperature});
}

void write_snapshot_csv(const Snapshot& snapshot, const VelocityGrid& grid,
                        const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "vx,vy,f\n";
  for (int ix = 0; ix < grid.n(); ++ix) {
    for (int iy = 0; iy < grid.n(); ++iy) {
      write_row(out, {grid.node(ix), grid.node(iy), snapshot.f[grid.index(ix, iy)]});
    }
  }
}

void write_meta_json(const ExperimentConfig& config, std::string_view extra_json,
                     const std::filesystem::path& path) {
  nlohmann::json j;
  j["scenario"] = to_string(config.scenario);
  j["statistics"] = to_string(config.statistics);
  j["theta0"] = config.theta0;
  j["epsilon"] = config.epsilon;
  j["N"] = config.n;
  j["L"] = config.resolved_half_width();
  j["M"] = config.angular_count;
  j["R"] = config.radius ? *config.radius : max_truncation_radius(config.grid());
  j["sizes"] = config.table_sizes;
  if (config.nx) j["Nx"] = *config.nx;
  if (config.x_min) j["x_min"] = *config.x_min;
  if (config.x_max) j["x_max"] = *config.x_max;
  j["cfl"] = config.cfl;
  j["euler_cfl"] = config.euler_cfl;
  j["scheme"] = config.kfvs ? "kfvs" : to_string(config.scheme);
  j["limiter"] = to_string(config.limiter);
  j["lambda"] = config.lambda ? nlohmann::json(*config.lambda) : nlohmann::json("auto");
  j["c_lambda"] = config.c_lambda;
  j["t_end"] = config.t_end;
  if (config.dt) j["dt"] = *config.dt;
  j["symmetrize_ic"] = config.symmetrize_ic;
  j["snapshots"] = config.snapshot_times;
  j["seed"] = config.seed;
  if (!extra_json.empty()) j["result"] = nlohmann::json::parse(extra_json);
  auto out = open_output(path);
  out << std::setprecision(17) << j.dump(2) << '\n';
}

void run_experiment(const ExperimentConfig& config) {
  const std::filesystem::path dir = config.output_dir;
  std::filesystem::create_directories(dir);
  nlohmann::json extra;
  switch (config.scenario) {
    case Scenario::AccuracyTable: {
      const AccuracyResult r = run_accuracy_table(config);
      write_table_csv(r, dir / "table1.csv");
      extra["rate"] = r.rate;
      break;
    }
    case Scenario::RelaxFermi:
    case Scenario::RelaxBose: {
      const RelaxationResult r = run_relaxation(config);
      write_series_csv(r.series, dir / "series.csv");
      write_profile_csv({r.final_state}, dir / "profile.csv");
      const VelocityGrid grid = config.grid();
      for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
        write_snapshot_csv(r.snapshots[k], grid, dir / ("snapshot_" + std::to_string(k) + ".csv"));
        extra["snapshot_times"].push_back(r.snapshots[k].t);
      }
      extra["dt"] = r.dt;
      extra["steps"] = r.series.size() - 1;
      break;
    }
    case Scenario::ShockTube: {
      const ShockResult r = run_shock_tube(config);
      write_profile_csv(r.profile, dir / "profile.csv");
      extra["dt"] = r.dt;
      extra["steps"] = r.steps;
      extra["z_left"] = r.z_left;
      extra["z_right"] = r.z_right;
      if (!config.kfvs) extra["lambda"] = r.lambda;
      break;
    }
  }
  write_meta_json(config, extra.dump(), dir / "meta.json");
}

double relative_l1(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::abs(a[i] - b[i]);
    den += std::abs(b[i]);
  }
  return num / den;
}

}  // namespace qkinetic
