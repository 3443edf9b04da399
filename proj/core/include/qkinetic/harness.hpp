#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qkinetic/dynamics.hpp"
#include "qkinetic/euler_reference.hpp"

namespace qkinetic {

enum class Scenario { AccuracyTable, RelaxFermi, RelaxBose, ShockTube };

/// "accuracy", "relax-fermi", "relax-bose", "shock".
const char* to_string(Scenario s);
Scenario parse_scenario(std::string_view name);

/// Fully resolved experiment parameters. Optional fields are filled by
/// resolve() from the scenario defaults.
struct ExperimentConfig {
  Scenario scenario = Scenario::ShockTube;
  Statistics statistics = Statistics::Fermi;
  double theta0 = 9.0;
  double epsilon = 1e-4;

  int n = 32;
  std::optional<double> half_width;  ///< 6 for Bose with theta0 >= 1, else 8
  int angular_count = 4;
  std::optional<double> radius;      ///< default: largest admissible
  std::vector<int> table_sizes{16, 32, 64};

  std::optional<int> nx;             ///< default: dx = 0.01
  std::optional<double> x_min, x_max;  ///< [0,1], or [-0.25,1.25] when epsilon >= 1e-2
  double cfl = 1.0;
  double euler_cfl = 0.5;

  Scheme scheme = Scheme::APFirstOrder;
  bool kfvs = false;                 ///< shock tube through the Euler reference
  Limiter limiter = Limiter::Minmod;
  std::optional<double> lambda;
  double c_lambda = 1.0;

  double t_end = 0.2;
  std::optional<double> dt;          ///< relaxation step; shock tube uses cfl
  bool symmetrize_ic = false;
  std::vector<double> snapshot_times{0.0, 0.02, 0.04, 0.5};

  std::string output_dir;
  std::uint64_t seed = 0;

  /// Scenario defaults before any file or flag is applied.
  static ExperimentConfig defaults(Scenario scenario);

  /// Sets one field from its textual form. Keys: statistics, theta0, epsilon,
  /// N, L, M, R, sizes, Nx, x_min, x_max, cfl, euler_cfl, scheme, limiter,
  /// lambda, c_lambda, t_end, dt, symmetrize_ic, snapshots, seed, out.
  /// Throws ConfigError naming the key.
  void set(std::string_view key, std::string_view value);

  /// Fills the optional fields and validates everything. Throws ConfigError.
  void resolve();

  double resolved_half_width() const;
  VelocityGrid grid() const;
  CollisionConfig collision() const;
};

/// Applies a configuration text: `key = value` lines, `#` comments, and
/// `[section]` headers. Keys before any header or under [common] always
/// apply; keys under a scenario-named section apply only to that scenario.
void apply_config_text(ExperimentConfig& config, std::string_view text);
void apply_config_file(ExperimentConfig& config, const std::filesystem::path& path);

struct TableRow {
  int n = 0;
  double max_norm = 0.0;
};

struct AccuracyResult {
  std::vector<TableRow> rows;
  /// log2(e_first / e_last) / log2(N_last / N_first); log2(e_16 / e_64) / 2
  /// for the default sizes.
  double rate = 0.0;
};

/// ||Q_q(M)||_inf at rho = 1, u = 0, T = 1 for every size in table_sizes;
/// M is the quantum Maxwellian, or the Gaussian for Classical statistics.
AccuracyResult run_accuracy_table(const ExperimentConfig& config);

struct SeriesRow {
  double t = 0.0;
  double entropy = 0.0;
  double m4 = 0.0, m6 = 0.0;
  double mass = 0.0, momentum_x = 0.0, energy = 0.0;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> f;
};

struct ProfileRow {
  double x = 0.0;
  double rho = 0.0, ux = 0.0, uy = 0.0, e = 0.0;
  double z = 0.0, temperature = 0.0;
};

struct RelaxationResult {
  std::vector<SeriesRow> series;
  std::vector<Snapshot> snapshots;
  std::vector<double> final_f;
  /// Moment-matched quantum Maxwellian of the initial datum.
  std::vector<double> equilibrium;
  ProfileRow final_state;
  double dt = 0.0;
};

/// Initial datum of the relaxation scenarios on the configured grid.
std::vector<double> relaxation_initial_datum(const ExperimentConfig& config);

/// Forward Euler on df/dt = Q_q(f), recording entropy and moments every
/// step. On a non-finite value the run restarts with half the step, at most
/// three times, then throws NumericalFailure.
RelaxationResult run_relaxation(const ExperimentConfig& config);

struct ShockResult {
  std::vector<ProfileRow> profile;
  double dt = 0.0;
  double lambda = 0.0;
  int steps = 0;
  double z_left = 0.0, z_right = 0.0;
};

/// Initial (rho, u, T) = (1, 0, 1) for x <= 0.5, (0.125, 0, 0.25) beyond.
std::vector<MacroState> shock_tube_initial_macro(const ExperimentConfig& config,
                                                 double* z_left = nullptr,
                                                 double* z_right = nullptr);

/// Kinetic scheme (or the Euler reference when config.kfvs) to t_end, with
/// the final (rho, e) converted to (z, T) per cell. Throws NumericalFailure
/// naming the step and cell of the first non-finite value.
ShockResult run_shock_tube(const ExperimentConfig& config);

/// Writers. Numbers use 17 significant digits.
void write_table_csv(const AccuracyResult& result, const std::filesystem::path& path);
void write_series_csv(const std::vector<SeriesRow>& series, const std::filesystem::path& path);
void write_profile_csv(const std::vector<ProfileRow>& profile, const std::filesystem::path& path);
void write_snapshot_csv(const Snapshot& snapshot, const VelocityGrid& grid,
                        const std::filesystem::path& path);

/// meta.json: the resolved configuration plus `extra` (a JSON object text).
void write_meta_json(const ExperimentConfig& config, std::string_view extra_json,
                     const std::filesystem::path& path);

/// Runs the scenario and writes every artifact into config.output_dir.
void run_experiment(const ExperimentConfig& config);

/// Relative L1 difference sum |a - b| / sum |b|.
double relative_l1(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qkinetic
