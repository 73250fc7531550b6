#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dislo/elasticity.hpp"
#include "dislo/field2d.hpp"

namespace dislo {

/// Signed dislocation densities on the torus, class of assumption-(5) data:
/// nonnegative and with x1 line integral L on every x2 row.
struct GBState {
  PeriodicField2D theta_plus;
  PeriodicField2D theta_minus;
  double time = 0.0;
  double line_density_L = 0.0;
};

/// Validating constructor; row_tol is the per-row relative tolerance on the
/// line-density constraint.
GBState make_gb_state(PeriodicField2D theta_plus, PeriodicField2D theta_minus,
                      double line_density_L, double row_tol = 1e-8);

/// sigma12 of the density pair via the spectral pipeline: antiderivative in
/// x1 of theta_plus - theta_minus, then the a_bar k1^2 k2^2 / |k|^4
/// multiplier. Zero mean. Usable on raw density fields (no row constraint).
PeriodicField2D stress_from_densities(const PeriodicField2D& theta_plus,
                                      const PeriodicField2D& theta_minus,
                                      const ElasticConstants& ec);

PeriodicField2D compute_stress(const GBState& state, const ElasticConstants& ec);

/// One conservative first-order upwind step in x1. theta_plus is advected
/// with face velocity +sigma12, theta_minus with -sigma12. Per-field torus
/// mass and per-row line density telescope exactly; nonnegativity holds for
/// dt max|sigma12| / dx1 <= 1/2 (guaranteed monotone range when the face
/// velocity changes sign). Throws StepSizeError, reporting the admissible
/// dt, when dt max|sigma12| / dx1 > 1.
GBState step(const GBState& state, double dt, const ElasticConstants& ec);

/// Entropy S = quadrature of theta+ ln theta+ + theta- ln theta-, with the
/// 0 ln 0 = 0 convention. Densities below -1e-12 raise InvalidStateError.
double entropy(const GBState& state);

/// Budget residual B(t_k) = S(t_k) - S(t_0) + a_bar * trapezoidal time
/// integral of the dissipation quadrature of (R1 R2 (theta+ - theta-))^2.
/// B <= 0 (to slack) is the monitored a priori estimate.
std::vector<double> entropy_budget(std::span<const GBState> trajectory,
                                   const ElasticConstants& ec);

/// Smooth seeded random state of the assumption-(5) class: L times
/// (1 + perturbation built from k1 != 0 modes only), so every row integral
/// is exactly L and positivity holds by construction.
GBState random_smooth_state(int n1, int n2, double line_density_L,
                            double amplitude, int max_mode,
                            std::uint64_t seed);

}  // namespace dislo
