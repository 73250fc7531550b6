#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dislo/elasticity.hpp"

namespace dislo {

/// State of the 1D translation-invariant submodel. rho_plus / rho_minus hold
/// the 1-periodic parts of rho±(y) - L y sampled at y_j = j / n; the
/// reconstructed primitives rho±(y_j) = part[j] + L j / n are nondecreasing.
struct Sub1DState {
  int n = 0;
  std::vector<double> rho_plus;
  std::vector<double> rho_minus;
  double line_density_L = 0.0;
  double time = 0.0;

  double reconstructed_plus(int j) const {
    return rho_plus[j] + line_density_L * j / n;
  }
  double reconstructed_minus(int j) const {
    return rho_minus[j] + line_density_L * j / n;
  }

  /// Throws ValidationError unless sizes match, L > 0 and both reconstructed
  /// primitives are nondecreasing (forward differences >= -1e-12, wraparound
  /// included).
  void validate() const;
};

/// v(y_j) = c1 [ (rho+ - rho-)(y_j) + forcing + c2 (Q + forcing) ] with Q the
/// trapezoidal quadrature of rho+ - rho- over one period (the L y parts
/// cancel in the difference). rho+ is transported with velocity +v, rho-
/// with -v. c2_override replaces the material's c2 when present (the
/// comparison principle needs c2 = 0).
std::vector<double> velocity_field(const Sub1DState& state,
                                   const ElasticConstants& ec,
                                   std::optional<double> c2_override = {},
                                   double forcing = 0.0);

/// One nonconservative upwind Euler step on the reconstructed primitives:
/// rho± <- rho± -/+ dt v D_upw rho±, the one-sided difference chosen against
/// each field's transport direction. Monotonicity is preserved for
/// dt max|v| / dy <= 1/2 (sign changes in v halve the guaranteed range);
/// beyond dt max|v| / dy = 1 a StepSizeError reports the admissible dt.
Sub1DState step(const Sub1DState& state, double dt, const ElasticConstants& ec,
                std::optional<double> c2_override = {}, double forcing = 0.0);

/// Evolves the ordered pair with c2 forced to 0 under one shared CFL-derived
/// dt schedule to t_final, checking rho±_a <= rho±_b + tol at every grid
/// point after every step. Throws ValidationError if the initial ordering
/// fails or the grids/L differ.
bool comparison_check(const Sub1DState& a, const Sub1DState& b, double t_final,
                      const ElasticConstants& ec, double cfl_factor = 0.45,
                      double tol = 1e-10);

/// Seeded random monotone state: increments of magnitude up to `roughness`
/// around L/n, amplitude-`offset` smooth periodic part added on top.
Sub1DState random_monotone_state(int n, double line_density_L, double roughness,
                                 std::uint64_t seed);

}  // namespace dislo
