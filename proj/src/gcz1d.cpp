#include "dislo/gcz1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dislo/errors.hpp"

namespace dislo {

namespace {

std::vector<double> face_diff(const std::vector<double>& f, double dy) {
  std::vector<double> d(f.size() - 1);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) d[i] = (f[i + 1] - f[i]) / dy;
  return d;
}

// node-centred derivative: centered in the interior, one-sided at the ends
std::vector<double> node_diff(const std::vector<double>& f, double dy) {
  const std::size_t m = f.size();
  std::vector<double> d(m);
  d[0] = (f[1] - f[0]) / dy;
  for (std::size_t i = 1; i + 1 < m; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dy);
  d[m - 1] = (f[m - 1] - f[m - 2]) / dy;
  return d;
}

struct Rhs {
  std::vector<double> rho_t;    // interior i = 1..n, index shifted by 1
  std::vector<double> kappa_t;
  double max_abs() const {
    double m = 0.0;
    for (double v : rho_t) m = std::max(m, std::abs(v));
    double k = 0.0;
    for (double v : kappa_t) k = std::max(k, std::abs(v));
    return m + k;
  }
};

Rhs eval_rhs(const SlabState1D& s, double gamma_floor) {
  const double dy = s.dy();
  const double dy2 = dy * dy;
  const std::vector<double> ky = s.kappa_y_faces();
  for (std::size_t i = 0; i < ky.size(); ++i) {
    if (ky[i] < gamma_floor) {
      const double y_face = -1.0 + (i + 0.5) * dy;
      throw DegenerateGradientError(
          y_face, "kappa_y = " + std::to_string(ky[i]) +
                      " below the positivity floor at y = " +
                      std::to_string(y_face));
    }
  }
  Rhs rhs;
  rhs.rho_t.resize(s.n);
  rhs.kappa_t.resize(s.n);
  for (int i = 1; i <= s.n; ++i) {
    const double rho_yy = (s.rho[i + 1] - 2.0 * s.rho[i] + s.rho[i - 1]) / dy2;
    const double kap_yy = (s.kappa[i + 1] - 2.0 * s.kappa[i] + s.kappa[i - 1]) / dy2;
    const double rho_y = (s.rho[i + 1] - s.rho[i - 1]) / (2.0 * dy);
    const double kap_y = (s.kappa[i + 1] - s.kappa[i - 1]) / (2.0 * dy);
    rhs.rho_t[i - 1] = (1.0 + s.epsilon) * rho_yy - s.tau * kap_y;
    rhs.kappa_t[i - 1] = s.epsilon * kap_yy + rho_y * rho_yy / kap_y - s.tau * rho_y;
  }
  return rhs;
}

}  // namespace

std::vector<double> SlabState1D::kappa_y_faces() const { return face_diff(kappa, dy()); }
std::vector<double> SlabState1D::rho_y_faces() const { return face_diff(rho, dy()); }

std::vector<double> SlabState1D::theta_plus_faces() const {
  const std::vector<double> ky = kappa_y_faces();
  const std::vector<double> ry = rho_y_faces();
  std::vector<double> t(ky.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.5 * (ky[i] + ry[i]);
  return t;
}

std::vector<double> SlabState1D::theta_minus_faces() const {
  const std::vector<double> ky = kappa_y_faces();
  const std::vector<double> ry = rho_y_faces();
  std::vector<double> t(ky.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = 0.5 * (ky[i] - ry[i]);
  return t;
}

void SlabState1D::validate() const {
  if (n < 4) {
    throw ValidationError("slab state: n >= 4 violated");
  }
  if (rho.size() != static_cast<std::size_t>(n) + 2 ||
      kappa.size() != static_cast<std::size_t>(n) + 2) {
    throw ValidationError("slab state: arrays must hold n + 2 nodes");
  }
  if (!(c0 > 0.0)) {
    throw ValidationError("slab state: c0 > 0 violated");
  }
  if (!(epsilon > 0.0)) {
    throw ValidationError("slab state: epsilon > 0 violated");
  }
  const double tol = 1e-12 * std::max(1.0, c0);
  if (std::abs(rho.front()) > tol || std::abs(rho.back()) > tol ||
      std::abs(kappa.front() + c0) > tol || std::abs(kappa.back() - c0) > tol) {
    throw ValidationError("slab state: boundary values not pinned");
  }
  const std::vector<double> tp = theta_plus_faces();
  const std::vector<double> tm = theta_minus_faces();
  for (std::size_t i = 0; i < tp.size(); ++i) {
    if (tp[i] < -1e-10 || tm[i] < -1e-10) {
      throw ValidationError(
          "slab state: kappa_y >= |rho_y| violated at face " + std::to_string(i));
    }
  }
}

BackStress back_stress(const std::vector<double>& theta_plus,
                       const std::vector<double>& theta_minus, double h,
                       double D0, double floor) {
  if (!(D0 > 0.0) || !(floor > 0.0)) {
    throw ValidationError("back_stress: D0 > 0 and floor > 0 required");
  }
  if (theta_plus.size() != theta_minus.size() || theta_plus.size() < 3) {
    throw ValidationError("back_stress: grids must match and hold >= 3 points");
  }
  std::vector<double> diff(theta_plus.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = theta_plus[i] - theta_minus[i];
  const std::vector<double> ddiff = node_diff(diff, h);
  BackStress out;
  out.value.resize(diff.size());
  out.flagged.resize(diff.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const double sum = theta_plus[i] + theta_minus[i];
    out.flagged[i] = sum < floor;
    out.value[i] = -D0 * ddiff[i] / std::max(sum, floor);
  }
  return out;
}

SlabState1D step_regularized(const SlabState1D& state, double dt,
                             const ElasticConstants& /*ec*/, double gamma_floor) {
  const double dy = state.dy();
  const double admissible = dy * dy / (2.0 * (1.0 + state.epsilon));
  if (!(dt > 0.0) || dt > admissible) {
    throw StepSizeError(admissible,
                        "gcz step: dt must lie in (0, dy^2/(2(1+eps))] = (0, " +
                            std::to_string(admissible) + "]");
  }
  const Rhs rhs = eval_rhs(state, gamma_floor);
  SlabState1D out = state;
  for (int i = 1; i <= state.n; ++i) {
    out.rho[i] = state.rho[i] + dt * rhs.rho_t[i - 1];
    out.kappa[i] = state.kappa[i] + dt * rhs.kappa_t[i - 1];
  }
  // Dirichlet values re-imposed (the interior loop never touches them, but
  // keep the contract explicit)
  out.rho.front() = 0.0;
  out.rho.back() = 0.0;
  out.kappa.front() = -state.c0;
  out.kappa.back() = state.c0;
  out.time = state.time + dt;
  return out;
}

double monitor_lower_bound(const SlabState1D& state, double gamma) {
  if (!(gamma >= 0.0)) {
    throw ValidationError("monitor_lower_bound: gamma >= 0 required");
  }
  const std::vector<double> ky = state.kappa_y_faces();
  const std::vector<double> ry = state.rho_y_faces();
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ky.size(); ++i) {
    m = std::min(m, ky[i] - std::sqrt(gamma * gamma + ry[i] * ry[i]));
  }
  return m;
}

std::vector<double> displacement(const SlabState1D& state,
                                 const ElasticConstants& ec) {
  const double dy = state.dy();
  const std::size_t m = state.rho.size();
  std::vector<double> cum(m, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    cum[i] = cum[i - 1] + 0.5 * dy * (state.rho[i] + state.rho[i - 1]);
  }
  // subtract the cumulative integral interpolated at y = 0 so that the
  // piecewise-linear reconstruction vanishes there
  const double t = 1.0 / dy;  // node coordinate of y = 0
  const std::size_t i0 = static_cast<std::size_t>(t);
  const double frac = t - static_cast<double>(i0);
  const double at_zero = cum[i0] + frac * (cum[i0 + 1] - cum[i0]);
  std::vector<double> u(m);
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = state.tau / ec.mu * state.y(static_cast<int>(i)) + (cum[i] - at_zero);
  }
  return u;
}

GczRunResult evolve(const SlabState1D& initial, const ElasticConstants& ec,
                    double residual_tol, double t_max,
                    const GczRunOptions& opts) {
  initial.validate();
  const double dy = initial.dy();
  const double dt = opts.dt_factor * dy * dy / (1.0 + initial.epsilon);
  const double gamma_floor = opts.gamma_floor_rel * initial.c0;

  GczRunResult result;
  SlabState1D state = initial;
  double next_snapshot = 0.0;

  auto record = [&](const SlabState1D& s, double residual) {
    GczDiagnostics d;
    d.t = s.time;
    d.residual = residual;
    const std::vector<double> tp = s.theta_plus_faces();
    const std::vector<double> tm = s.theta_minus_faces();
    const std::vector<double> ky = s.kappa_y_faces();
    d.min_theta = std::numeric_limits<double>::infinity();
    d.min_kappa_y = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tp.size(); ++i) {
      d.min_theta = std::min({d.min_theta, tp[i], tm[i]});
      d.min_kappa_y = std::min(d.min_kappa_y, ky[i]);
    }
    d.m_gamma = monitor_lower_bound(s, opts.monitor_gamma);
    const double dy3 = dy * dy * dy;
    d.max_rho_yyy = 0.0;
    for (int i = 2; i + 2 < static_cast<int>(s.rho.size()); ++i) {
      const double third = (s.rho[i + 2] - 2.0 * s.rho[i + 1] +
                            2.0 * s.rho[i - 1] - s.rho[i - 2]) /
                           (2.0 * dy3);
      d.max_rho_yyy = std::max(d.max_rho_yyy, std::abs(third));
    }
    // steady force balance of the unregularized model, in the dense region
    std::vector<double> tpn(s.rho.size()), tmn(s.rho.size());
    const std::vector<double> ryn = node_diff(s.rho, dy);
    const std::vector<double> kyn = node_diff(s.kappa, dy);
    for (std::size_t i = 0; i < tpn.size(); ++i) {
      tpn[i] = 0.5 * (kyn[i] + ryn[i]);
      tmn[i] = 0.5 * (kyn[i] - ryn[i]);
    }
    const BackStress bs = back_stress(tpn, tmn, dy, opts.D0, opts.backstress_floor);
    double max_sum = 0.0;
    for (std::size_t i = 0; i < tpn.size(); ++i) {
      max_sum = std::max(max_sum, tpn[i] + tmn[i]);
    }
    d.force_imbalance = 0.0;
    for (std::size_t i = 0; i < tpn.size(); ++i) {
      if (tpn[i] + tmn[i] > 0.1 * max_sum) {
        d.force_imbalance =
            std::max(d.force_imbalance, std::abs(s.tau + bs.value[i]));
      }
    }
    result.diagnostics.push_back(d);
    result.snapshots.push_back(s);
  };

  while (true) {
    const Rhs rhs = eval_rhs(state, gamma_floor);
    const double residual = rhs.max_abs();
    if (state.time >= next_snapshot - 0.5 * dt) {
      record(state, residual);
      next_snapshot += opts.snapshot_dt;
    }
    if (residual < residual_tol) {
      if (result.snapshots.empty() || result.snapshots.back().time != state.time) {
        record(state, residual);
      }
      result.converged = true;
      result.final_residual = residual;
      return result;
    }
    if (state.time >= t_max) {
      if (result.snapshots.empty() || result.snapshots.back().time != state.time) {
        record(state, residual);
      }
      result.converged = false;
      result.final_residual = residual;
      return result;
    }
    SlabState1D next = state;
    for (int i = 1; i <= state.n; ++i) {
      next.rho[i] = state.rho[i] + dt * rhs.rho_t[i - 1];
      next.kappa[i] = state.kappa[i] + dt * rhs.kappa_t[i - 1];
    }
    next.time = state.time + dt;
    state = std::move(next);
  }
}

GczRunResult run_to_steady(const SlabState1D& initial, const ElasticConstants& ec,
                           double residual_tol, double t_max,
                           const GczRunOptions& opts) {
  initial.validate();
  // compact-support intent: theta± negligible on the two faces adjacent to
  // each boundary
  const std::vector<double> tp = initial.theta_plus_faces();
  const std::vector<double> tm = initial.theta_minus_faces();
  double tmax_val = 0.0;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    tmax_val = std::max({tmax_val, std::abs(tp[i]), std::abs(tm[i])});
  }
  const double support_tol = std::max(1e-12, 1e-3 * tmax_val);
  const std::size_t last = tp.size() - 1;
  for (std::size_t i : {std::size_t{0}, std::size_t{1}, last - 1, last}) {
    if (std::abs(tp[i]) > support_tol || std::abs(tm[i]) > support_tol) {
      throw ValidationError(
          "gcz initial data: theta± must vanish on the two faces adjacent to "
          "each boundary (face " + std::to_string(i) + ")");
    }
  }
  return evolve(initial, ec, residual_tol, t_max, opts);
}

SlabState1D gaussian_bump_state(int n, double c0, double support,
                                double margin_fraction, double tau,
                                double epsilon) {
  if (!(support > 0.0 && support < 1.0)) {
    throw ValidationError("gaussian_bump_state: support must lie in (0, 1)");
  }
  if (!(margin_fraction > 0.0 && margin_fraction < 1.0)) {
    throw ValidationError("gaussian_bump_state: margin_fraction in (0, 1) required");
  }
  SlabState1D s;
  s.n = n;
  s.c0 = c0;
  s.tau = tau;
  s.epsilon = epsilon;
  const double dy = s.dy();
  // mollifier bump, exactly zero outside |y| < support
  const auto bump = [&](double y) {
    const double u = y / support;
    if (std::abs(u) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
  };
  const int faces = n + 1;
  std::vector<double> shape(faces);
  double mass = 0.0;
  for (int i = 0; i < faces; ++i) {
    shape[i] = bump(-1.0 + (i + 0.5) * dy);
    mass += shape[i] * dy;
  }
  const double margin = margin_fraction * c0;  // uniform kappa_y pedestal
  const double amplitude = (c0 - margin) / mass;
  s.rho.assign(n + 2, 0.0);  // theta+ = theta-, so rho vanishes identically
  s.kappa.assign(n + 2, 0.0);
  s.kappa[0] = -c0;
  for (int i = 0; i < faces; ++i) {
    s.kappa[i + 1] = s.kappa[i] + dy * (2.0 * (amplitude * shape[i] + margin / 2.0));
  }
  // cancel accumulated roundoff so the boundary is pinned exactly
  const double err = s.kappa[n + 1] - c0;
  for (int i = 1; i <= n; ++i) {
    s.kappa[i] -= err * (i * dy) / 2.0;
  }
  s.kappa[n + 1] = c0;
  s.validate();
  return s;
}

SlabState1D linear_kappa_state(int n, double c0, double rho_amplitude,
                               double tau, double epsilon) {
  SlabState1D s;
  s.n = n;
  s.c0 = c0;
  s.tau = tau;
  s.epsilon = epsilon;
  s.rho.resize(n + 2);
  s.kappa.resize(n + 2);
  for (int i = 0; i < n + 2; ++i) {
    s.rho[i] = rho_amplitude * std::sin(std::numbers::pi * s.y(i));
    s.kappa[i] = c0 * s.y(i);
  }
  s.rho.front() = 0.0;
  s.rho.back() = 0.0;
  s.kappa.front() = -c0;
  s.kappa.back() = c0;
  s.validate();
  return s;
}

}  // namespace dislo
