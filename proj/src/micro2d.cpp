#include "dislo/micro2d.hpp"

#include <cmath>
#include <string>

#include "dislo/errors.hpp"

namespace dislo {

namespace {

double dist2(const Point2& a, const Point2& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}

void check_separation(const std::vector<Point2>& pos, double min_sep,
                      const char* when) {
  const double min_sep2 = min_sep * min_sep;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      if (dist2(pos[i], pos[j]) < min_sep2) {
        throw CollisionError(
            i, j,
            std::string("particles ") + std::to_string(i) + " and " +
                std::to_string(j) + " closer than " + std::to_string(min_sep) +
                " " + when);
      }
    }
  }
}

}  // namespace

void ParticleSystem::validate() const {
  if (signs.size() != positions.size()) {
    throw ValidationError("particle system: signs and positions differ in length");
  }
  for (int s : signs) {
    if (s != 1 && s != -1) {
      throw ValidationError("particle system: signs must be +1 or -1");
    }
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (dist2(positions[i], positions[j]) == 0.0) {
        throw CollisionError(i, j,
                             "particles " + std::to_string(i) + " and " +
                                 std::to_string(j) + " coincide");
      }
    }
  }
}

std::vector<double> pairwise_velocity(const ParticleSystem& system,
                                      const ElasticConstants& ec) {
  system.validate();
  const std::size_t n = system.positions.size();
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;  // sigma0(0) = 0 by convention
      const double dx1 = system.positions[i][0] - system.positions[j][0];
      const double dx2 = system.positions[i][1] - system.positions[j][1];
      s += system.signs[i] * system.signs[j] * kernel_sigma0(dx1, dx2, ec);
    }
    v[i] = s;
  }
  return v;
}

ParticleSystem step_particles(const ParticleSystem& system, double dt,
                              const ElasticConstants& ec,
                              double min_separation) {
  if (!(dt > 0.0)) {
    throw StepSizeError(0.0, "step_particles: dt > 0 violated");
  }
  const std::vector<double> v = pairwise_velocity(system, ec);
  ParticleSystem out = system;
  for (std::size_t i = 0; i < out.positions.size(); ++i) {
    out.positions[i][0] += dt * v[i];
  }
  check_separation(out.positions, min_separation, "after the step");
  // particles sharing a glide line must not pass through each other: a sign
  // flip of the x1 gap means the trajectories crossed mid-step
  for (std::size_t i = 0; i < out.positions.size(); ++i) {
    for (std::size_t j = i + 1; j < out.positions.size(); ++j) {
      if (std::abs(system.positions[i][1] - system.positions[j][1]) >=
          min_separation) {
        continue;
      }
      const double before = system.positions[i][0] - system.positions[j][0];
      const double after = out.positions[i][0] - out.positions[j][0];
      if (before * after < 0.0) {
        throw CollisionError(i, j,
                             "particles " + std::to_string(i) + " and " +
                                 std::to_string(j) + " crossed during the step");
      }
    }
  }
  out.time = system.time + dt;
  return out;
}

std::pair<PeriodicField2D, PeriodicField2D> empirical_density(
    const ParticleSystem& system, int n1, int n2, double smoothing_width) {
  system.validate();
  if (!(smoothing_width > 0.0)) {
    throw ValidationError("empirical_density: smoothing_width > 0 violated");
  }
  for (const Point2& p : system.positions) {
    if (p[0] < 0.0 || p[0] >= 1.0 || p[1] < 0.0 || p[1] >= 1.0) {
      throw ValidationError("empirical_density: particles must lie in the unit cell");
    }
  }
  PeriodicField2D theta_p = PeriodicField2D::zeros(n1, n2);
  PeriodicField2D theta_m = PeriodicField2D::zeros(n1, n2);
  const double two_w2 = 2.0 * smoothing_width * smoothing_width;
  std::vector<double> bump(theta_p.values.size());
  for (std::size_t p = 0; p < system.positions.size(); ++p) {
    double mass = 0.0;
    for (int i = 0; i < n1; ++i) {
      const double x1 = static_cast<double>(i) / n1;
      for (int j = 0; j < n2; ++j) {
        const double x2 = static_cast<double>(j) / n2;
        // periodization: sum over the 3x3 block of image shifts
        double g = 0.0;
        for (int s1 = -1; s1 <= 1; ++s1) {
          for (int s2 = -1; s2 <= 1; ++s2) {
            const double d1 = x1 + s1 - system.positions[p][0];
            const double d2 = x2 + s2 - system.positions[p][1];
            g += std::exp(-(d1 * d1 + d2 * d2) / two_w2);
          }
        }
        bump[static_cast<std::size_t>(i) * n2 + j] = g;
        mass += g;
      }
    }
    mass *= theta_p.cell_area();
    PeriodicField2D& target = system.signs[p] > 0 ? theta_p : theta_m;
    for (std::size_t k = 0; k < bump.size(); ++k) {
      target.values[k] += bump[k] / mass;  // unit torus mass per particle
    }
  }
  return {std::move(theta_p), std::move(theta_m)};
}

}  // namespace dislo
