#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dislo {

struct MaterialConfig {
  double lambda = 1.0;
  double mu = 1.0;
};

struct TimeConfig {
  std::optional<double> dt;   ///< fixed step; otherwise CFL-derived
  double cfl_factor = 0.45;
  double t_max = 0.0;
  double snapshot_every = 0.0;  ///< 0 means t_max / 10
};

struct Micro2DConfig {
  int n_particles = 16;
  std::string init = "random";  ///< random | pair
  double pair_distance = 0.25;
  double smoothing_width = 0.02;
  int density_grid = 64;
  double min_separation = 1e-6;
};

struct Gb2DConfig {
  int n1 = 64;
  int n2 = 64;
  double line_density = 1.0;
  double amplitude = 0.3;
  int max_mode = 3;
};

struct Sub1DConfig {
  int n = 128;
  double line_density = 1.0;
  double roughness = 0.5;
  std::optional<double> c2_override;
  double forcing_amplitude = 0.0;
  double forcing_period = 1.0;
};

struct Gcz1DConfig {
  int n = 200;
  double epsilon = 0.1;
  double tau = 0.5;
  double c0 = 1.0;
  double D0 = 1.0;
  double residual_tol = 1e-6;
  std::string init = "gaussian_bumps";  ///< gaussian_bumps | linear_kappa
  double support = 0.8;
  double margin_fraction = 1e-4;
  double rho_amplitude = 0.25;
  double monitor_gamma = 0.0;
  double gamma_floor_rel = 1e-8;
  double dt_factor = 0.4;
  double backstress_floor = 1e-8;
};

struct CurvesConfig {
  int n_vertices = 256;
  double radius = 1.0;
  std::string velocity = "constant";  ///< constant | linear
  double velocity_value = 1.0;
  double velocity_slope = 1.0;
  bool reparametrize = false;
  bool residual_report = false;
  int refine_levels = 2;
  std::uint64_t test_seed = 1234;
};

struct SimConfig {
  std::string model;  ///< micro2d | gb2d | sub1d | gcz1d | curves
  MaterialConfig material;
  TimeConfig time;
  Micro2DConfig micro2d;
  Gb2DConfig gb2d;
  Sub1DConfig sub1d;
  Gcz1DConfig gcz1d;
  CurvesConfig curves;
  std::string output_dir;
  std::uint64_t seed = 0;
};

/// Outcome of parsing: either a validated config or the complete list of
/// validation errors (unknown keys, missing keys, type mismatches and
/// precondition violations), each naming the offending key path.
struct ConfigParseResult {
  std::optional<SimConfig> config;
  std::vector<std::string> errors;
  bool ok() const { return errors.empty() && config.has_value(); }
};

/// Parses the key = value / [section] / # comment grammar.
ConfigParseResult parse_config(const std::string& text);
ConfigParseResult parse_config_file(const std::string& path);

/// Serializes the effective config (defaults expanded) for the run manifest.
std::string config_to_json(const SimConfig& config);

}  // namespace dislo
