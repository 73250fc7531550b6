#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace dislo {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Closed simple polygon with an explicit orientation (+1 counterclockwise,
/// -1 clockwise). At least 8 vertices, consecutive vertices distinct.
struct Curve {
  std::vector<Vec2> vertices;
  int orientation = +1;

  /// Builds a curve, deriving the orientation from the signed area.
  /// Throws ValidationError / TopologyError when the polygon is degenerate
  /// or self-intersecting.
  static Curve make(std::vector<Vec2> vertices);

  static Curve circle(double radius, int m, Vec2 center = {0.0, 0.0});

  double perimeter() const;
  void validate() const;
};

/// Scalar normal-velocity field with its first and second y-derivatives.
struct VelocityField {
  std::function<double(Vec2, double)> c;
  std::function<Vec2(Vec2, double)> grad;
  std::function<Mat2(Vec2, double)> hess;
};

VelocityField constant_velocity(double value);
/// c(y) = a * y1 + b (gradient (a, 0), zero Hessian).
VelocityField linear_velocity_x1(double a, double b);

struct EvolveOptions {
  /// Redistribute vertices uniformly by arclength when the edge-length
  /// spread leaves the factor-2 band around uniform.
  bool reparametrize = false;
};

/// Moves every vertex by dt * c(y, t) along the outward vertex normal (the
/// bisector of the adjacent edge normals). Throws TopologyError if the
/// result self-intersects: singularity formation ends the run.
Curve evolve_curve(const Curve& curve, const VelocityField& c, double t,
                   double dt, const EvolveOptions& opts = {});

/// One weighted sample of the lifted measures: position, tangent angle, and
/// the arclength (g) and turning (kappa) masses carried by the vertex.
struct LiftedSample {
  Vec2 y;
  double theta;
  double g_weight;
  double kappa_weight;
};

struct LiftedMeasure {
  std::vector<LiftedSample> samples;
  double total_g() const;
  double total_kappa() const;  ///< ±2pi for a simple closed curve
};

/// Lifts a curve using the frame n(theta) = (cos, sin),
/// tau(theta) = (sin, -cos): theta solves dy/ds = tau(theta), so for a
/// counterclockwise curve n(theta) is the inward normal and the total
/// turning is +2pi. Angle increments are accumulated unwrapped; the closing
/// increment makes the kappa weights telescope to the exact total turning.
LiftedMeasure lift_measures(const Curve& curve);

/// Smooth compactly-supported-in-practice test function: Gaussian in y times
/// a low-order Fourier mode in theta (mode 0 means the constant 1).
struct TestFunction {
  Vec2 center{0.0, 0.0};
  double width = 1.0;
  int theta_mode = 0;   ///< 0: 1, m > 0: cos(m theta), m < 0: sin(|m| theta)
  double eval(Vec2 y, double theta) const;
  Vec2 grad_y(Vec2 y, double theta) const;
  double dtheta(Vec2 y, double theta) const;
};

/// Seeded default family: tensor Gaussians with randomized centers times
/// {1, cos, sin} in theta, 12 functions.
std::vector<TestFunction> default_test_family(std::uint64_t seed,
                                              double center_box = 2.5,
                                              int count = 12);

/// Weak residual of the compatibility equation: max over the family of
/// |<g, tau(theta) . grad_y phi> + <kappa, d_theta phi>| / perimeter.
double compatibility_residual(const LiftedMeasure& measure,
                              std::span<const TestFunction> family);

/// Weak residual of the lifted transport system on a trajectory of measures
/// at uniform snapshot spacing dt. The velocity is the outward-normal speed
/// used by evolve_curve; internally it is re-expressed in the n(theta) frame
/// (for counterclockwise curves n(theta) = -outward normal, so the frame
/// velocity is -c). Time derivatives of the pairings use central
/// differences; the flux terms are moved onto the test functions. Returns
/// the max residual over both equations, interior snapshots and the family,
/// normalized by the perimeter.
double transport_residual(std::span<const LiftedMeasure> trajectory,
                          const VelocityField& c, double t0, double dt,
                          int orientation,
                          std::span<const TestFunction> family);

}  // namespace dislo
