#include "dislo/curves.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dislo/errors.hpp"
#include "dislo/rng.hpp"

namespace dislo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(Vec2 a, Vec2 b) { return a[0] * b[1] - a[1] * b[0]; }
Vec2 sub(Vec2 a, Vec2 b) { return {a[0] - b[0], a[1] - b[1]}; }
double norm(Vec2 a) { return std::hypot(a[0], a[1]); }

double signed_area(const std::vector<Vec2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    s += cross(p, q);
  }
  return 0.5 * s;
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const auto orient = [](Vec2 a, Vec2 b, Vec2 c) {
    const double d = cross(sub(b, a), sub(c, a));
    if (d > 0.0) return 1;
    if (d < 0.0) return -1;
    return 0;
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  const auto on_segment = [](Vec2 a, Vec2 b, Vec2 c) {
    return std::min(a[0], b[0]) <= c[0] && c[0] <= std::max(a[0], b[0]) &&
           std::min(a[1], b[1]) <= c[1] && c[1] <= std::max(a[1], b[1]);
  };
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

void check_simple(const std::vector<Vec2>& v) {
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      // skip segments sharing a vertex (i,i+1) vs (j,j+1)
      if (j == i + 1 || (i == 0 && j == m - 1)) continue;
      if (segments_intersect(v[i], v[(i + 1) % m], v[j], v[(j + 1) % m])) {
        throw TopologyError("polygon self-intersects between edges " +
                            std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

double wrap_pi(double a) {
  while (a > std::numbers::pi) a -= kTwoPi;
  while (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

Vec2 frame_normal(double theta) { return {std::cos(theta), std::sin(theta)}; }
Vec2 frame_tangent(double theta) { return {std::sin(theta), -std::cos(theta)}; }

}  // namespace

Curve Curve::make(std::vector<Vec2> vertices) {
  Curve c;
  c.vertices = std::move(vertices);
  const double area = signed_area(c.vertices);
  c.orientation = area >= 0.0 ? +1 : -1;
  c.validate();
  return c;
}

Curve Curve::circle(double radius, int m, Vec2 center) {
  std::vector<Vec2> v(m);
  for (int i = 0; i < m; ++i) {
    const double phi = kTwoPi * i / m;
    v[i] = {center[0] + radius * std::cos(phi), center[1] + radius * std::sin(phi)};
  }
  return make(std::move(v));
}

double Curve::perimeter() const {
  double p = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    p += norm(sub(vertices[(i + 1) % vertices.size()], vertices[i]));
  }
  return p;
}

void Curve::validate() const {
  if (vertices.size() < 8) {
    throw ValidationError("curve: at least 8 vertices required");
  }
  if (orientation != 1 && orientation != -1) {
    throw ValidationError("curve: orientation must be +1 or -1");
  }
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (norm(sub(vertices[(i + 1) % vertices.size()], vertices[i])) == 0.0) {
      throw ValidationError("curve: consecutive vertices coincide at " +
                            std::to_string(i));
    }
  }
  check_simple(vertices);
}

VelocityField constant_velocity(double value) {
  return VelocityField{
      [value](Vec2, double) { return value; },
      [](Vec2, double) { return Vec2{0.0, 0.0}; },
      [](Vec2, double) { return Mat2{{{0.0, 0.0}, {0.0, 0.0}}}; },
  };
}

VelocityField linear_velocity_x1(double a, double b) {
  return VelocityField{
      [a, b](Vec2 y, double) { return a * y[0] + b; },
      [a](Vec2, double) { return Vec2{a, 0.0}; },
      [](Vec2, double) { return Mat2{{{0.0, 0.0}, {0.0, 0.0}}}; },
  };
}

Curve evolve_curve(const Curve& curve, const VelocityField& c, double t,
                   double dt, const EvolveOptions& opts) {
  curve.validate();
  const std::size_t m = curve.vertices.size();
  // outward edge normals: rotate the edge direction by -90 deg for a
  // counterclockwise polygon, +90 deg for a clockwise one
  std::vector<Vec2> edge_normal(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vec2 d = sub(curve.vertices[(i + 1) % m], curve.vertices[i]);
    const double len = norm(d);
    d = {d[0] / len, d[1] / len};
    edge_normal[i] = curve.orientation > 0 ? Vec2{d[1], -d[0]} : Vec2{-d[1], d[0]};
  }
  Curve out = curve;
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& na = edge_normal[(i + m - 1) % m];
    const Vec2& nb = edge_normal[i];
    Vec2 n{na[0] + nb[0], na[1] + nb[1]};
    const double len = norm(n);
    if (len < 1e-12) {
      throw TopologyError("degenerate vertex normal at vertex " + std::to_string(i));
    }
    n = {n[0] / len, n[1] / len};
    const double speed = c.c(curve.vertices[i], t);
    out.vertices[i][0] += dt * speed * n[0];
    out.vertices[i][1] += dt * speed * n[1];
  }
  if (opts.reparametrize) {
    double total = out.perimeter();
    double lmin = total, lmax = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double l = norm(sub(out.vertices[(i + 1) % m], out.vertices[i]));
      lmin = std::min(lmin, l);
      lmax = std::max(lmax, l);
    }
    const double target = total / static_cast<double>(m);
    if (lmax > 2.0 * target || lmin < 0.5 * target) {
      // resample uniformly by arclength, anchored at vertex 0
      std::vector<Vec2> fresh(m);
      std::size_t seg = 0;
      double seg_start = 0.0;
      double seg_len = norm(sub(out.vertices[1 % m], out.vertices[0]));
      for (std::size_t i = 0; i < m; ++i) {
        const double s = target * static_cast<double>(i);
        while (s > seg_start + seg_len) {
          seg_start += seg_len;
          ++seg;
          seg_len = norm(sub(out.vertices[(seg + 1) % m], out.vertices[seg % m]));
        }
        const double f = (s - seg_start) / seg_len;
        const Vec2& a = out.vertices[seg % m];
        const Vec2& b = out.vertices[(seg + 1) % m];
        fresh[i] = {a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])};
      }
      out.vertices = std::move(fresh);
    }
  }
  out.validate();  // throws TopologyError on singularity formation
  return out;
}

double LiftedMeasure::total_g() const {
  double s = 0.0;
  for (const LiftedSample& x : samples) s += x.g_weight;
  return s;
}

double LiftedMeasure::total_kappa() const {
  double s = 0.0;
  for (const LiftedSample& x : samples) s += x.kappa_weight;
  return s;
}

LiftedMeasure lift_measures(const Curve& curve) {
  curve.validate();
  const std::size_t m = curve.vertices.size();
  std::vector<double> edge_len(m), edge_angle(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 d = sub(curve.vertices[(i + 1) % m], curve.vertices[i]);
    edge_len[i] = norm(d);
    // dy/ds = tau(theta) = (sin theta, -cos theta)
    edge_angle[i] = std::atan2(d[0], -d[1]);
  }
  LiftedMeasure out;
  out.samples.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t prev = (i + m - 1) % m;
    const double increment = wrap_pi(edge_angle[i] - edge_angle[prev]);
    double theta = edge_angle[prev] + 0.5 * increment;
    theta -= kTwoPi * std::floor(theta / kTwoPi);  // into [0, 2pi)
    out.samples[i] = LiftedSample{curve.vertices[i], theta,
                                  0.5 * (edge_len[prev] + edge_len[i]),
                                  increment};
  }
  return out;
}

double TestFunction::eval(Vec2 y, double theta) const {
  const double dx = y[0] - center[0];
  const double dy = y[1] - center[1];
  const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
  if (theta_mode == 0) return g;
  if (theta_mode > 0) return g * std::cos(theta_mode * theta);
  return g * std::sin(-theta_mode * theta);
}

Vec2 TestFunction::grad_y(Vec2 y, double theta) const {
  const double v = eval(y, theta);
  const double w2 = width * width;
  return {-(y[0] - center[0]) / w2 * v, -(y[1] - center[1]) / w2 * v};
}

double TestFunction::dtheta(Vec2 y, double theta) const {
  if (theta_mode == 0) return 0.0;
  const double dx = y[0] - center[0];
  const double dy = y[1] - center[1];
  const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
  if (theta_mode > 0) return -theta_mode * g * std::sin(theta_mode * theta);
  return -theta_mode * g * std::cos(-theta_mode * theta);
}

std::vector<TestFunction> default_test_family(std::uint64_t seed,
                                              double center_box, int count) {
  Rng rng(seed);
  std::vector<TestFunction> family(count);
  const int modes[3] = {0, 1, -1};
  for (int i = 0; i < count; ++i) {
    family[i].center = {rng.uniform(-center_box, center_box),
                        rng.uniform(-center_box, center_box)};
    family[i].width = rng.uniform(0.6, 1.4);
    family[i].theta_mode = modes[i % 3];
  }
  return family;
}

double compatibility_residual(const LiftedMeasure& measure,
                              std::span<const TestFunction> family) {
  const double perimeter = measure.total_g();
  double worst = 0.0;
  for (const TestFunction& phi : family) {
    double r = 0.0;
    for (const LiftedSample& s : measure.samples) {
      const Vec2 tau = frame_tangent(s.theta);
      const Vec2 gp = phi.grad_y(s.y, s.theta);
      r += s.g_weight * (tau[0] * gp[0] + tau[1] * gp[1]);
      r += s.kappa_weight * phi.dtheta(s.y, s.theta);
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst / perimeter;
}

double transport_residual(std::span<const LiftedMeasure> trajectory,
                          const VelocityField& c, double t0, double dt,
                          int orientation,
                          std::span<const TestFunction> family) {
  if (trajectory.size() < 3) {
    throw ValidationError("transport_residual: need at least 3 snapshots");
  }
  if (!(dt > 0.0)) {
    throw ValidationError("transport_residual: dt > 0 required");
  }
  // The transport system lives in the n(theta) frame; evolve_curve moves
  // vertices along the outward normal, which is -n(theta) for a
  // counterclockwise curve. The frame velocity is therefore s * c.
  const double s = orientation > 0 ? -1.0 : 1.0;

  const auto pair_g = [](const LiftedMeasure& m, const TestFunction& phi) {
    double r = 0.0;
    for (const LiftedSample& x : m.samples) r += x.g_weight * phi.eval(x.y, x.theta);
    return r;
  };
  const auto pair_kappa = [](const LiftedMeasure& m, const TestFunction& phi) {
    double r = 0.0;
    for (const LiftedSample& x : m.samples) r += x.kappa_weight * phi.eval(x.y, x.theta);
    return r;
  };

  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < trajectory.size(); ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const LiftedMeasure& mid = trajectory[k];
    const double perimeter = mid.total_g();
    for (const TestFunction& phi : family) {
      const double dg = (pair_g(trajectory[k + 1], phi) -
                         pair_g(trajectory[k - 1], phi)) /
                        (2.0 * dt);
      const double dk = (pair_kappa(trajectory[k + 1], phi) -
                         pair_kappa(trajectory[k - 1], phi)) /
                        (2.0 * dt);
      double flux_g = 0.0, flux_k = 0.0, zero_g = 0.0, zero_k = 0.0;
      for (const LiftedSample& x : mid.samples) {
        const Vec2 n = frame_normal(x.theta);
        const Vec2 tau = frame_tangent(x.theta);
        const double ch = s * c.c(x.y, t);
        const Vec2 gr = c.grad(x.y, t);
        const Vec2 gh = {s * gr[0], s * gr[1]};
        const Mat2 he = c.hess(x.y, t);
        const double phi_v = phi.eval(x.y, x.theta);
        const Vec2 phi_g = phi.grad_y(x.y, x.theta);
        const double phi_t = phi.dtheta(x.y, x.theta);
        const double adv = ch * (n[0] * phi_g[0] + n[1] * phi_g[1]) +
                           (tau[0] * gh[0] + tau[1] * gh[1]) * phi_t;
        flux_g += x.g_weight * adv;
        flux_k += x.kappa_weight * adv;
        zero_g += x.kappa_weight * ch * phi_v;  // + c kappa term of the g equation
        const double tau_h_tau =
            s * (tau[0] * (he[0][0] * tau[0] + he[0][1] * tau[1]) +
                 tau[1] * (he[1][0] * tau[0] + he[1][1] * tau[1]));
        zero_k += x.kappa_weight * (n[0] * gh[0] + n[1] * gh[1]) * phi_v +
                  x.g_weight * tau_h_tau * phi_v;
      }
      const double r1 = dg - flux_g + zero_g;
      const double r2 = dk - flux_k - zero_k;
      worst = std::max({worst, std::abs(r1) / perimeter, std::abs(r2) / perimeter});
    }
  }
  return worst;
}

}  // namespace dislo
