#include "dislo/sub1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dislo/errors.hpp"
#include "dislo/rng.hpp"

namespace dislo {

void Sub1DState::validate() const {
  if (n < 2) {
    throw ValidationError("sub1d state: n >= 2 violated");
  }
  if (rho_plus.size() != static_cast<std::size_t>(n) ||
      rho_minus.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("sub1d state: sample count does not match n");
  }
  if (!(line_density_L > 0.0)) {
    throw ValidationError("sub1d state: L > 0 violated");
  }
  for (const std::vector<double>* f : {&rho_plus, &rho_minus}) {
    for (int j = 0; j < n; ++j) {
      // forward difference of the reconstructed primitive, wraparound picks
      // up the +L period jump
      const double d = (*f)[(j + 1) % n] - (*f)[j] + line_density_L / n;
      if (d < -1e-12) {
        throw ValidationError(
            "sub1d state: reconstructed rho must be nondecreasing, difference " +
            std::to_string(d) + " at j = " + std::to_string(j));
      }
    }
  }
}

std::vector<double> velocity_field(const Sub1DState& state,
                                   const ElasticConstants& ec,
                                   std::optional<double> c2_override,
                                   double forcing) {
  state.validate();
  const double c2 = c2_override.value_or(ec.c2);
  double q = 0.0;
  for (int j = 0; j < state.n; ++j) {
    q += state.rho_plus[j] - state.rho_minus[j];
  }
  q = q / state.n + forcing;  // periodic trapezoid = plain mean
  std::vector<double> v(state.n);
  for (int j = 0; j < state.n; ++j) {
    const double d = state.rho_plus[j] - state.rho_minus[j] + forcing;
    v[j] = ec.c1 * (d + c2 * q);
  }
  return v;
}

Sub1DState step(const Sub1DState& state, double dt, const ElasticConstants& ec,
                std::optional<double> c2_override, double forcing) {
  if (!(dt > 0.0)) {
    throw StepSizeError(0.0, "sub1d step: dt > 0 violated");
  }
  const std::vector<double> v = velocity_field(state, ec, c2_override, forcing);
  const int n = state.n;
  const double dy = 1.0 / n;
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  if (dt * vmax / dy > 1.0) {
    throw StepSizeError(dy / vmax,
                        "sub1d step: CFL violated, admissible dt = " +
                            std::to_string(dy / vmax));
  }

  // forward differences of the reconstructed primitives (one per field);
  // the upwind derivative at j is fd[j-1] or fd[j] depending on direction
  auto forward_diffs = [&](const std::vector<double>& p) {
    std::vector<double> fd(n);
    for (int j = 0; j < n; ++j) {
      fd[j] = (p[(j + 1) % n] - p[j] + state.line_density_L / n) / dy;
    }
    return fd;
  };
  const std::vector<double> fdp = forward_diffs(state.rho_plus);
  const std::vector<double> fdm = forward_diffs(state.rho_minus);

  Sub1DState out = state;
  for (int j = 0; j < n; ++j) {
    const int jm = (j + n - 1) % n;
    // rho+ moves with +v
    const double dp = v[j] >= 0.0 ? fdp[jm] : fdp[j];
    out.rho_plus[j] = state.rho_plus[j] - dt * v[j] * dp;
    // rho- moves with -v
    const double dm = -v[j] >= 0.0 ? fdm[jm] : fdm[j];
    out.rho_minus[j] = state.rho_minus[j] + dt * v[j] * dm;
  }
  out.time = state.time + dt;
  return out;
}

bool comparison_check(const Sub1DState& a, const Sub1DState& b, double t_final,
                      const ElasticConstants& ec, double cfl_factor,
                      double tol) {
  a.validate();
  b.validate();
  if (a.n != b.n || a.line_density_L != b.line_density_L) {
    throw ValidationError("comparison_check: states must share grid and L");
  }
  auto ordered = [&](const Sub1DState& lo, const Sub1DState& hi) {
    for (int j = 0; j < lo.n; ++j) {
      if (lo.rho_plus[j] > hi.rho_plus[j] + tol) return false;
      if (lo.rho_minus[j] > hi.rho_minus[j] + tol) return false;
    }
    return true;
  };
  if (!ordered(a, b)) {
    throw ValidationError("comparison_check: initial ordering a <= b violated");
  }

  Sub1DState sa = a;
  Sub1DState sb = b;
  const double dy = 1.0 / a.n;
  double t = 0.0;
  while (t < t_final) {
    const std::vector<double> va = velocity_field(sa, ec, 0.0);
    const std::vector<double> vb = velocity_field(sb, ec, 0.0);
    double vmax = 0.0;
    for (double x : va) vmax = std::max(vmax, std::abs(x));
    for (double x : vb) vmax = std::max(vmax, std::abs(x));
    double dt = vmax > 0.0 ? cfl_factor * dy / vmax : t_final - t;
    dt = std::min(dt, t_final - t);
    sa = step(sa, dt, ec, 0.0);
    sb = step(sb, dt, ec, 0.0);
    t += dt;
    if (!ordered(sa, sb)) return false;
  }
  return true;
}

Sub1DState random_monotone_state(int n, double line_density_L, double roughness,
                                 std::uint64_t seed) {
  if (!(roughness >= 0.0 && roughness < 1.0)) {
    throw ValidationError("random_monotone_state: roughness must lie in [0, 1)");
  }
  Rng rng(seed);
  auto make_part = [&]() {
    std::vector<double> inc(n);
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      inc[j] = 1.0 + roughness * rng.uniform(-1.0, 1.0);
      total += inc[j];
    }
    const double offset = rng.uniform(-0.5, 0.5);
    std::vector<double> part(n);
    double run = 0.0;
    for (int j = 0; j < n; ++j) {
      part[j] = offset + run - line_density_L * j / n;
      run += line_density_L * inc[j] / total;
    }
    return part;
  };
  Sub1DState s;
  s.n = n;
  s.line_density_L = line_density_L;
  s.rho_plus = make_part();
  s.rho_minus = make_part();
  s.validate();
  return s;
}

}  // namespace dislo
