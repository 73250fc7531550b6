#include <glob.h>

#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dislo/config.hpp"
#include "dislo/errors.hpp"
#include "dislo/runner.hpp"

namespace {

void print_error(const std::string& type, const std::string& message) {
  nlohmann::json j;
  j["error"] = {{"type", type}, {"message", message}};
  std::cerr << j.dump() << std::endl;
}

int report_parse_failure(const dislo::ConfigParseResult& parsed) {
  for (const std::string& e : parsed.errors) {
    print_error("config", e);
  }
  return 2;
}

struct GczOverrides {
  std::optional<int> n;
  std::optional<double> epsilon, tau, c0, tmax, residual_tol, snapshot_every;

  void apply(dislo::SimConfig& cfg) const {
    if (n) cfg.gcz1d.n = *n;
    if (epsilon) cfg.gcz1d.epsilon = *epsilon;
    if (tau) cfg.gcz1d.tau = *tau;
    if (c0) cfg.gcz1d.c0 = *c0;
    if (residual_tol) cfg.gcz1d.residual_tol = *residual_tol;
    if (tmax) cfg.time.t_max = *tmax;
    if (snapshot_every) cfg.time.snapshot_every = *snapshot_every;
  }
};

int run_one(const std::string& path, const GczOverrides& overrides) {
  dislo::ConfigParseResult parsed = dislo::parse_config_file(path);
  if (!parsed.ok()) return report_parse_failure(parsed);
  dislo::SimConfig cfg = *parsed.config;
  overrides.apply(cfg);
  try {
    dislo::run_simulation(cfg);
  } catch (const dislo::StepSizeError& e) {
    print_error("step_size", e.what());
    return 3;
  } catch (const dislo::CollisionError& e) {
    print_error("collision", e.what());
    return 3;
  } catch (const dislo::DegenerateGradientError& e) {
    print_error("degenerate_gradient", e.what());
    return 3;
  } catch (const dislo::TopologyError& e) {
    print_error("topology", e.what());
    return 3;
  } catch (const dislo::ValidationError& e) {
    print_error("validation", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return 4;
  }
  return 0;
}

std::vector<std::string> expand_glob(const std::string& pattern) {
  glob_t g{};
  std::vector<std::string> files;
  if (glob(pattern.c_str(), GLOB_TILDE, nullptr, &g) == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) {
      files.emplace_back(g.gl_pathv[i]);
    }
  }
  globfree(&g);
  return files;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dislocation density dynamics simulator"};
  app.require_subcommand(1);

  std::string config_path;
  GczOverrides overrides;
  CLI::App* run = app.add_subcommand("run", "run one simulation from a config file");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--n", overrides.n, "gcz1d: interior grid size");
  run->add_option("--epsilon", overrides.epsilon, "gcz1d: regularization parameter");
  run->add_option("--tau", overrides.tau, "gcz1d: applied shear");
  run->add_option("--c0", overrides.c0, "gcz1d: kappa boundary constant");
  run->add_option("--tmax", overrides.tmax, "final time override");
  run->add_option("--residual-tol", overrides.residual_tol,
                  "gcz1d: steady-state residual tolerance");
  run->add_option("--snapshot-every", overrides.snapshot_every,
                  "snapshot cadence override (time units)");

  std::string sweep_pattern;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run every config matching a glob, concurrently");
  sweep->add_option("pattern", sweep_pattern, "config file glob")->required();

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "validate a config file");
  validate->add_option("config", validate_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return run_one(config_path, overrides);
  }

  if (validate->parsed()) {
    const dislo::ConfigParseResult parsed = dislo::parse_config_file(validate_path);
    if (!parsed.ok()) return report_parse_failure(parsed);
    std::cout << dislo::config_to_json(*parsed.config) << std::endl;
    return 0;
  }

  if (sweep->parsed()) {
    const std::vector<std::string> files = expand_glob(sweep_pattern);
    if (files.empty()) {
      print_error("sweep", "no config matches pattern '" + sweep_pattern + "'");
      return 2;
    }
    std::vector<std::future<int>> jobs;
    jobs.reserve(files.size());
    for (const std::string& f : files) {
      jobs.push_back(std::async(std::launch::async, run_one, f, GczOverrides{}));
    }
    int status = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      const int code = jobs[i].get();
      std::cout << files[i] << ": " << (code == 0 ? "ok" : "failed") << std::endl;
      status = std::max(status, code);
    }
    return status;
  }
  return 0;
}
