#include "dislo/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "dislo/csv.hpp"
#include "dislo/curves.hpp"
#include "dislo/errors.hpp"
#include "dislo/gb2d.hpp"
#include "dislo/gcz1d.hpp"
#include "dislo/micro2d.hpp"
#include "dislo/rng.hpp"
#include "dislo/spectral.hpp"
#include "dislo/sub1d.hpp"

namespace dislo {

namespace {

namespace fs = std::filesystem;

std::string snapshot_name(int k) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "snapshot_%04d.csv", k);
  return buf;
}

void run_micro2d(const SimConfig& cfg, const ElasticConstants& ec,
                 const fs::path& out) {
  const Micro2DConfig& m = cfg.micro2d;
  ParticleSystem system;
  if (m.init == "pair") {
    system.positions = {{0.5 - m.pair_distance / 2.0, 0.5},
                        {0.5 + m.pair_distance / 2.0, 0.5}};
    system.signs = {+1, -1};
  } else {
    Rng rng(cfg.seed);
    while (static_cast<int>(system.positions.size()) < m.n_particles) {
      const Point2 p = {rng.uniform(), rng.uniform()};
      bool ok = true;
      for (const Point2& q : system.positions) {
        const double dx = p[0] - q[0];
        const double dy = p[1] - q[1];
        if (dx * dx + dy * dy < 100.0 * m.min_separation * m.min_separation) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      system.positions.push_back(p);
      system.signs.push_back(rng.uniform() < 0.5 ? -1 : +1);
    }
  }
  system.validate();

  CsvWriter csv((out / "particles.csv").string(),
                {"time", "index", "sign", "x1", "x2"});
  const auto dump = [&](const ParticleSystem& s) {
    for (std::size_t i = 0; i < s.positions.size(); ++i) {
      csv.row({s.time, static_cast<double>(i), static_cast<double>(s.signs[i]),
               s.positions[i][0], s.positions[i][1]});
    }
  };
  dump(system);
  const double dt = *cfg.time.dt;
  double next_snapshot = cfg.time.snapshot_every;
  while (system.time < cfg.time.t_max - 0.5 * dt) {
    system = step_particles(system, dt, ec, m.min_separation);
    if (system.time >= next_snapshot - 0.5 * dt) {
      dump(system);
      next_snapshot += cfg.time.snapshot_every;
    }
  }
}

void run_gb2d(const SimConfig& cfg, const ElasticConstants& ec,
              const fs::path& out) {
  const Gb2DConfig& g = cfg.gb2d;
  GBState state = random_smooth_state(g.n1, g.n2, g.line_density, g.amplitude,
                                      g.max_mode, cfg.seed);
  std::vector<GBState> snapshots;
  const auto write_snapshot = [&](const GBState& s, int k) {
    const PeriodicField2D sigma = compute_stress(s, ec);
    CsvWriter csv((out / snapshot_name(k)).string(),
                  {"x1", "x2", "theta_plus", "theta_minus", "sigma12"});
    for (int i = 0; i < s.theta_plus.n1; ++i) {
      for (int j = 0; j < s.theta_plus.n2; ++j) {
        csv.row({static_cast<double>(i) / s.theta_plus.n1,
                 static_cast<double>(j) / s.theta_plus.n2, s.theta_plus.at(i, j),
                 s.theta_minus.at(i, j), sigma.at(i, j)});
      }
    }
  };
  snapshots.push_back(state);
  write_snapshot(state, 0);
  const double dx1 = 1.0 / g.n1;
  double next_snapshot = cfg.time.snapshot_every;
  int snapshot_count = 1;
  while (state.time < cfg.time.t_max) {
    const double smax = compute_stress(state, ec).max_abs();
    double dt = cfg.time.dt ? *cfg.time.dt
                            : (smax > 0.0 ? cfg.time.cfl_factor * dx1 / smax
                                          : cfg.time.t_max - state.time);
    dt = std::min(dt, cfg.time.t_max - state.time);
    state = step(state, dt, ec);
    if (state.time >= next_snapshot - 0.5 * dt || state.time >= cfg.time.t_max) {
      snapshots.push_back(state);
      write_snapshot(state, snapshot_count++);
      next_snapshot += cfg.time.snapshot_every;
    }
  }
  const std::vector<double> budget = entropy_budget(snapshots, ec);
  CsvWriter diag((out / "diagnostics.csv").string(),
                 {"t", "S", "B", "zygmund_plus", "zygmund_minus"});
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    diag.row({snapshots[k].time, entropy(snapshots[k]), budget[k],
              zygmund_norm(snapshots[k].theta_plus),
              zygmund_norm(snapshots[k].theta_minus)});
  }
}

void run_sub1d(const SimConfig& cfg, const ElasticConstants& ec,
               const fs::path& out) {
  const Sub1DConfig& s = cfg.sub1d;
  Sub1DState state = random_monotone_state(s.n, s.line_density, s.roughness, cfg.seed);
  const auto forcing_at = [&](double t) {
    return s.forcing_amplitude *
           std::sin(2.0 * std::numbers::pi * t / s.forcing_period);
  };
  int snapshot_count = 0;
  const auto write_snapshot = [&](const Sub1DState& st) {
    const std::vector<double> v =
        velocity_field(st, ec, s.c2_override, forcing_at(st.time));
    CsvWriter csv((out / snapshot_name(snapshot_count++)).string(),
                  {"y", "rho_plus", "rho_minus", "velocity"});
    for (int j = 0; j < st.n; ++j) {
      csv.row({static_cast<double>(j) / st.n, st.reconstructed_plus(j),
               st.reconstructed_minus(j), v[j]});
    }
  };
  write_snapshot(state);
  const double dy = 1.0 / s.n;
  double next_snapshot = cfg.time.snapshot_every;
  while (state.time < cfg.time.t_max) {
    const std::vector<double> v =
        velocity_field(state, ec, s.c2_override, forcing_at(state.time));
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    double dt = cfg.time.dt ? *cfg.time.dt
                            : (vmax > 0.0 ? cfg.time.cfl_factor * dy / vmax
                                          : cfg.time.t_max - state.time);
    dt = std::min(dt, cfg.time.t_max - state.time);
    state = step(state, dt, ec, s.c2_override, forcing_at(state.time));
    if (state.time >= next_snapshot - 0.5 * dt || state.time >= cfg.time.t_max) {
      write_snapshot(state);
      next_snapshot += cfg.time.snapshot_every;
    }
  }
}

void run_gcz1d(const SimConfig& cfg, const ElasticConstants& ec,
               const fs::path& out, bool& converged, double& final_residual) {
  const Gcz1DConfig& g = cfg.gcz1d;
  SlabState1D initial =
      g.init == "gaussian_bumps"
          ? gaussian_bump_state(g.n, g.c0, g.support, g.margin_fraction, g.tau,
                                g.epsilon)
          : linear_kappa_state(g.n, g.c0, g.rho_amplitude, g.tau, g.epsilon);
  GczRunOptions opts;
  opts.dt_factor = g.dt_factor;
  opts.gamma_floor_rel = g.gamma_floor_rel;
  opts.monitor_gamma = g.monitor_gamma;
  opts.D0 = g.D0;
  opts.backstress_floor = g.backstress_floor;
  opts.snapshot_dt = cfg.time.snapshot_every;
  const GczRunResult result =
      g.init == "gaussian_bumps"
          ? run_to_steady(initial, ec, g.residual_tol, cfg.time.t_max, opts)
          : evolve(initial, ec, g.residual_tol, cfg.time.t_max, opts);
  converged = result.converged;
  final_residual = result.final_residual;

  for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
    const SlabState1D& s = result.snapshots[k];
    const double dy = s.dy();
    // node-centred theta±: centered differences, one-sided at the walls
    const std::size_t m = s.rho.size();
    std::vector<double> tp(m), tm(m);
    for (std::size_t i = 0; i < m; ++i) {
      double ry, ky;
      if (i == 0) {
        ry = (s.rho[1] - s.rho[0]) / dy;
        ky = (s.kappa[1] - s.kappa[0]) / dy;
      } else if (i + 1 == m) {
        ry = (s.rho[m - 1] - s.rho[m - 2]) / dy;
        ky = (s.kappa[m - 1] - s.kappa[m - 2]) / dy;
      } else {
        ry = (s.rho[i + 1] - s.rho[i - 1]) / (2.0 * dy);
        ky = (s.kappa[i + 1] - s.kappa[i - 1]) / (2.0 * dy);
      }
      tp[i] = 0.5 * (ky + ry);
      tm[i] = 0.5 * (ky - ry);
    }
    const BackStress bs = back_stress(tp, tm, dy, g.D0, g.backstress_floor);
    const std::vector<double> u2 = displacement(s, ec);
    CsvWriter csv((out / snapshot_name(static_cast<int>(k))).string(),
                  {"y", "rho", "kappa", "theta_plus", "theta_minus", "tau_b", "u2"});
    for (std::size_t i = 0; i < m; ++i) {
      csv.row({s.y(static_cast<int>(i)), s.rho[i], s.kappa[i], tp[i], tm[i],
               bs.value[i], u2[i]});
    }
  }
  CsvWriter diag((out / "diagnostics.csv").string(),
                 {"t", "residual", "min_theta", "min_kappa_y", "M_gamma",
                  "max_rho_yyy"});
  for (const GczDiagnostics& d : result.diagnostics) {
    diag.row({d.t, d.residual, d.min_theta, d.min_kappa_y, d.m_gamma,
              d.max_rho_yyy});
  }
}

void run_curves(const SimConfig& cfg, const fs::path& out) {
  const CurvesConfig& c = cfg.curves;
  const VelocityField vel =
      c.velocity == "constant"
          ? constant_velocity(c.velocity_value)
          : linear_velocity_x1(c.velocity_slope, c.velocity_value);
  const double dt = *cfg.time.dt;

  Curve curve = Curve::circle(c.radius, c.n_vertices);
  CsvWriter csv((out / "curve_snapshots.csv").string(),
                {"t", "index", "x", "y", "theta", "g_weight", "kappa_weight"});
  const auto dump = [&](const Curve& cv, double t) {
    const LiftedMeasure m = lift_measures(cv);
    for (std::size_t i = 0; i < m.samples.size(); ++i) {
      const LiftedSample& smp = m.samples[i];
      csv.row({t, static_cast<double>(i), smp.y[0], smp.y[1], smp.theta,
               smp.g_weight, smp.kappa_weight});
    }
  };
  dump(curve, 0.0);
  EvolveOptions opts;
  opts.reparametrize = c.reparametrize;
  double t = 0.0;
  double next_snapshot = cfg.time.snapshot_every;
  while (t < cfg.time.t_max - 0.5 * dt) {
    curve = evolve_curve(curve, vel, t, dt, opts);
    t += dt;
    if (t >= next_snapshot - 0.5 * dt) {
      dump(curve, t);
      next_snapshot += cfg.time.snapshot_every;
    }
  }

  if (c.residual_report) {
    const std::vector<TestFunction> family = default_test_family(c.test_seed);
    CsvWriter report((out / "residual_report.csv").string(),
                     {"level", "compatibility_residual", "transport_residual"});
    for (int level = 0; level < c.refine_levels; ++level) {
      const int m = c.n_vertices << level;
      const double dtl = dt / static_cast<double>(1 << level);
      Curve cv = Curve::circle(c.radius, m);
      std::vector<LiftedMeasure> trajectory;
      trajectory.push_back(lift_measures(cv));
      double tl = 0.0;
      while (tl < cfg.time.t_max - 0.5 * dtl) {
        cv = evolve_curve(cv, vel, tl, dtl, {});
        tl += dtl;
        trajectory.push_back(lift_measures(cv));
      }
      const LiftedMeasure& mid = trajectory[trajectory.size() / 2];
      report.row({static_cast<double>(level),
                  compatibility_residual(mid, family),
                  transport_residual(trajectory, vel, 0.0, dtl,
                                     cv.orientation, family)});
    }
  }
}

}  // namespace

fs::path resolve_output_dir(const std::string& output_dir) {
  fs::path p(output_dir);
  if (p.is_relative()) {
    if (const char* root = std::getenv(kOutputRootEnv)) {
      p = fs::path(root) / p;
    }
  }
  return p;
}

void run_simulation(const SimConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  const ElasticConstants ec = derive_constants(cfg.material.lambda, cfg.material.mu);
  const fs::path out = resolve_output_dir(cfg.output_dir);
  std::filesystem::create_directories(out);

  bool converged = true;
  double final_residual = 0.0;
  if (cfg.model == "micro2d") {
    run_micro2d(cfg, ec, out);
  } else if (cfg.model == "gb2d") {
    run_gb2d(cfg, ec, out);
  } else if (cfg.model == "sub1d") {
    run_sub1d(cfg, ec, out);
  } else if (cfg.model == "gcz1d") {
    run_gcz1d(cfg, ec, out, converged, final_residual);
  } else if (cfg.model == "curves") {
    run_curves(cfg, out);
  } else {
    throw ValidationError("unknown model '" + cfg.model + "'");
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  nlohmann::json manifest;
  manifest["config"] = nlohmann::json::parse(config_to_json(cfg));
  manifest["version"] = kVersion;
  manifest["wall_time_seconds"] = wall;
  if (cfg.model == "gcz1d") {
    manifest["converged"] = converged;
    manifest["final_residual"] = final_residual;
  }
  std::ofstream mf(out / "manifest.json", std::ios::binary);
  mf << manifest.dump(2) << '\n';
}

}  // namespace dislo
