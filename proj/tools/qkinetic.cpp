#include <iostream>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "qkinetic/errors.hpp"
#include "qkinetic/harness.hpp"
#include "qkinetic/log.hpp"

namespace {

enum ExitCode { Ok = 0, Config = 2, Numerical = 3, Inversion = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Boltzmann spectral solver"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "run one scenario and write its artifacts");

  std::string scenario, config_file, out;
  std::optional<std::string> scheme, statistics, limiter;
  std::optional<double> epsilon, theta0, half_width, cfl, t_end;
  std::optional<int> n, nx;
  std::vector<std::string> overrides;
  bool verbose = false;

  run->add_option("--scenario", scenario, "accuracy | relax-fermi | relax-bose | shock")
      ->required();
  run->add_option("--config", config_file, "key = value configuration file");
  run->add_option("--out", out, "output directory")->required();
  run->add_option("--scheme", scheme, "euler | ap | imex2 | bgk | kfvs");
  run->add_option("--statistics", statistics, "classical | bose | fermi");
  run->add_option("--limiter", limiter, "minmod | vanleer | none");
  run->add_option("--epsilon", epsilon, "Knudsen number");
  run->add_option("--theta0", theta0, "degeneracy parameter");
  run->add_option("--N", n, "velocity nodes per dimension");
  run->add_option("--L", half_width, "velocity box half-width");
  run->add_option("--Nx", nx, "spatial cells");
  run->add_option("--cfl", cfl, "CFL number");
  run->add_option("--t-end", t_end, "final time");
  run->add_option("--set", overrides, "extra key=value override (repeatable)");
  run->add_flag("-v,--verbose", verbose, "progress messages");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? Ok : Config;
  }
  if (verbose) qkinetic::log::set_level(qkinetic::log::Level::Info);

  try {
    auto config = qkinetic::ExperimentConfig::defaults(qkinetic::parse_scenario(scenario));
    if (!config_file.empty()) qkinetic::apply_config_file(config, config_file);
    const auto set = [&](const char* key, const auto& value) {
      if (!value) return;
      if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, std::string>) {
        config.set(key, *value);
      } else {
        config.set(key, std::to_string(*value));
      }
    };
    set("scheme", scheme);
    set("statistics", statistics);
    set("limiter", limiter);
    if (epsilon) config.epsilon = *epsilon;
    if (theta0) config.theta0 = *theta0;
    if (half_width) config.half_width = *half_width;
    if (cfl) config.cfl = *cfl;
    if (t_end) config.t_end = *t_end;
    set("N", n);
    set("Nx", nx);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw qkinetic::ConfigError("--set: expected key=value");
      config.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    config.output_dir = out;
    config.resolve();
    qkinetic::run_experiment(config);
  } catch (const qkinetic::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return Config;
  } catch (const qkinetic::InversionError& e) {
    std::cerr << "inversion failure: " << e.what() << '\n';
    return Inversion;
  } catch (const qkinetic::Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return Numerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return Ok;
}
