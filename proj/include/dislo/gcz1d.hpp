#pragma once

#include <cstdint>
#include <vector>

#include "dislo/elasticity.hpp"

namespace dislo {

/// Slab state on I = (-1, 1): nodes y_i = -1 + i dy, i = 0..n+1 with
/// dy = 2/(n+1); rho and kappa include the pinned boundary values
/// rho(+-1) = 0, kappa(-1) = -c0, kappa(+1) = c0.
struct SlabState1D {
  int n = 0;  ///< interior node count
  std::vector<double> rho;
  std::vector<double> kappa;
  double time = 0.0;
  double c0 = 1.0;       ///< boundary constant, > 0
  double tau = 0.0;      ///< applied shear
  double epsilon = 0.1;  ///< regularization, > 0

  double dy() const { return 2.0 / (n + 1); }
  double y(int i) const { return -1.0 + i * dy(); }

  /// Face differences (kappa_{i+1} - kappa_i)/dy etc., i = 0..n.
  std::vector<double> kappa_y_faces() const;
  std::vector<double> rho_y_faces() const;
  /// theta± = (kappa_y ± rho_y)/2 at faces.
  std::vector<double> theta_plus_faces() const;
  std::vector<double> theta_minus_faces() const;

  /// Throws ValidationError on size/parameter violations, pinned-boundary
  /// mismatch, or theta± below -1e-10 at any face (condition kappa_y >= |rho_y|).
  void validate() const;
};

/// Back stress -D0 (theta+ - theta-)_y / max(theta+ + theta-, floor) by
/// central differences (one-sided at the ends) on a uniform grid of spacing h.
/// flagged[i] marks points where the density sum fell below the floor.
struct BackStress {
  std::vector<double> value;
  std::vector<bool> flagged;
};
BackStress back_stress(const std::vector<double>& theta_plus,
                       const std::vector<double>& theta_minus, double h,
                       double D0, double floor);

/// One explicit Euler step of the regularized system
///   rho_t   = (1 + eps) rho_yy - tau kappa_y
///   kappa_t = eps kappa_yy + rho_y rho_yy / kappa_y - tau rho_y
/// with centered differences; boundary values re-imposed. Requires
/// dt <= dy^2 / (2 (1 + eps)) (StepSizeError otherwise) and kappa_y >=
/// gamma_floor at all faces (DegenerateGradientError reporting the location).
SlabState1D step_regularized(const SlabState1D& state, double dt,
                             const ElasticConstants& ec,
                             double gamma_floor = 1e-8);

/// min over faces of kappa_y - sqrt(gamma^2 + rho_y^2); nonnegative return
/// certifies the lower bound at level gamma.
double monitor_lower_bound(const SlabState1D& state, double gamma);

/// u2(y) = (tau/mu) y + integral_0^y rho, trapezoidal on the grid; by
/// construction the piecewise-linear reconstruction vanishes at y = 0.
std::vector<double> displacement(const SlabState1D& state,
                                 const ElasticConstants& ec);

struct GczDiagnostics {
  double t = 0.0;
  double residual = 0.0;     ///< max|rho_t| + max|kappa_t| time-difference norms
  double min_theta = 0.0;    ///< min over faces of min(theta+, theta-)
  double min_kappa_y = 0.0;  ///< min over faces
  double m_gamma = 0.0;      ///< monitor_lower_bound at the configured gamma
  double max_rho_yyy = 0.0;  ///< max abs third difference
  double force_imbalance = 0.0;  ///< max |tau + tau_b| where kappa_y > 0.1 max
};

struct GczRunOptions {
  double dt_factor = 0.4;     ///< dt = dt_factor * dy^2 / (1 + eps)
  double gamma_floor_rel = 1e-8;  ///< floor = gamma_floor_rel * c0
  double monitor_gamma = 0.0;
  double D0 = 1.0;
  double backstress_floor = 1e-8;
  double snapshot_dt = 0.1;   ///< diagnostics/snapshot cadence in time units
};

struct GczRunResult {
  std::vector<SlabState1D> snapshots;
  std::vector<GczDiagnostics> diagnostics;
  bool converged = false;
  double final_residual = 0.0;
};

/// Steps until max|rho_t| + max|kappa_t| < residual_tol or t_max, recording
/// snapshots and diagnostics every snapshot_dt. No input validation beyond
/// SlabState1D::validate; see run_to_steady for the initial-data gate.
GczRunResult evolve(const SlabState1D& initial, const ElasticConstants& ec,
                    double residual_tol, double t_max,
                    const GczRunOptions& opts = {});

/// evolve() behind the full initial-data gate: condition (kappa_y >= |rho_y|)
/// via validate(), plus the compact-support requirement that theta± vanish
/// on the two faces adjacent to each boundary.
GczRunResult run_to_steady(const SlabState1D& initial, const ElasticConstants& ec,
                           double residual_tol, double t_max,
                           const GczRunOptions& opts = {});

/// Slab with theta± equal compactly supported mollifier bumps of the given
/// amplitude and half-width (vanishing outside |y| < support), kappa and rho
/// integrated from them so the boundary conditions hold exactly. The bump
/// masses are absorbed into c0: c0 = mass + kappa_margin.
SlabState1D gaussian_bump_state(int n, double amplitude, double support,
                                double kappa_margin, double tau, double epsilon);

/// Slab with kappa = c0 y and rho = rho_amplitude sin(pi y): data of the
/// uniqueness-theorem class, monitor_lower_bound(., delta) >= 0 for
/// suitable delta. Not compactly supported.
SlabState1D linear_kappa_state(int n, double c0, double rho_amplitude,
                               double tau, double epsilon);

}  // namespace dislo
