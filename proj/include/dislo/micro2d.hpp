#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dislo/elasticity.hpp"
#include "dislo/field2d.hpp"

namespace dislo {

using Point2 = std::array<double, 2>;

/// N straight edge dislocations seen in cross section: positions in the
/// plane and Burgers signs +-1. Free-space kernel, motion along e1 only.
struct ParticleSystem {
  std::vector<Point2> positions;
  std::vector<int> signs;
  double time = 0.0;

  /// Throws ValidationError on sign/size mismatch or signs outside {-1,+1},
  /// CollisionError if two positions coincide.
  void validate() const;
};

/// x1-velocity of every particle: v_i = sum_{j != i} eps_i eps_j
/// sigma0(X_i - X_j). The x2-velocity is identically zero.
/// Throws CollisionError naming the first coincident pair.
std::vector<double> pairwise_velocity(const ParticleSystem& system,
                                      const ElasticConstants& ec);

/// One forward-Euler step of the x1 coordinates; x2 is untouched bit for bit.
/// Throws StepSizeError for dt <= 0 and CollisionError if the step would
/// bring a pair closer than min_separation.
ParticleSystem step_particles(const ParticleSystem& system, double dt,
                              const ElasticConstants& ec,
                              double min_separation = 1e-6);

/// Deposits each particle as a periodized Gaussian bump normalized to unit
/// torus mass; returns (theta_plus, theta_minus) on an n1 x n2 grid.
/// Particles must lie in the unit cell [0,1)^2.
std::pair<PeriodicField2D, PeriodicField2D> empirical_density(
    const ParticleSystem& system, int n1, int n2, double smoothing_width);

}  // namespace dislo
