#include "dislo/gb2d.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dislo/errors.hpp"
#include "dislo/rng.hpp"
#include "dislo/spectral.hpp"

namespace dislo {

namespace {

void validate_state(const GBState& s, double row_tol) {
  s.theta_plus.validate();
  s.theta_minus.validate();
  if (s.theta_plus.n1 != s.theta_minus.n1 || s.theta_plus.n2 != s.theta_minus.n2) {
    throw ValidationError("gb2d state: theta+ and theta- grids differ");
  }
  if (!(s.line_density_L > 0.0)) {
    throw ValidationError("gb2d state: line density L > 0 violated");
  }
  for (const PeriodicField2D* f : {&s.theta_plus, &s.theta_minus}) {
    if (f->min_value() < -1e-12) {
      throw ValidationError("gb2d state: densities must be nonnegative");
    }
    // row-wise line density: x1 quadrature at fixed x2
    for (int j = 0; j < f->n2; ++j) {
      double row = 0.0;
      for (int i = 0; i < f->n1; ++i) row += f->at(i, j);
      row /= f->n1;
      if (std::abs(row - s.line_density_L) > row_tol * s.line_density_L) {
        throw ValidationError(
            "gb2d state: row line density off by " +
            std::to_string(row - s.line_density_L) + " at row " +
            std::to_string(j));
      }
    }
  }
}

}  // namespace

GBState make_gb_state(PeriodicField2D theta_plus, PeriodicField2D theta_minus,
                      double line_density_L, double row_tol) {
  GBState s;
  s.theta_plus = std::move(theta_plus);
  s.theta_minus = std::move(theta_minus);
  s.line_density_L = line_density_L;
  validate_state(s, row_tol);
  return s;
}

PeriodicField2D stress_from_densities(const PeriodicField2D& theta_plus,
                                      const PeriodicField2D& theta_minus,
                                      const ElasticConstants& ec) {
  return sigma12_from_rho_diff(antiderivative_x1(theta_plus - theta_minus), ec);
}

PeriodicField2D compute_stress(const GBState& state, const ElasticConstants& ec) {
  return stress_from_densities(state.theta_plus, state.theta_minus, ec);
}

GBState step(const GBState& state, double dt, const ElasticConstants& ec) {
  if (!(dt > 0.0)) {
    throw StepSizeError(0.0, "gb2d step: dt > 0 violated");
  }
  const PeriodicField2D sigma = compute_stress(state, ec);
  const int n1 = sigma.n1;
  const int n2 = sigma.n2;
  const double dx1 = 1.0 / n1;
  const double smax = sigma.max_abs();
  if (dt * smax / dx1 > 1.0) {
    throw StepSizeError(dx1 / smax,
                        "gb2d step: CFL violated, admissible dt = " +
                            std::to_string(dx1 / smax));
  }
  const double lambda = dt / dx1;

  GBState out = state;
  // face velocity at i+1/2 is the average of adjacent cell-centred stresses;
  // theta+ sees +sigma12, theta- sees -sigma12
  std::vector<double> flux(static_cast<std::size_t>(n1));
  for (int sign = 0; sign < 2; ++sign) {
    const PeriodicField2D& th =
        sign == 0 ? state.theta_plus : state.theta_minus;
    PeriodicField2D& next = sign == 0 ? out.theta_plus : out.theta_minus;
    const double dir = sign == 0 ? 1.0 : -1.0;
    for (int j = 0; j < n2; ++j) {
      for (int i = 0; i < n1; ++i) {
        const int ip = (i + 1) % n1;
        const double u = dir * 0.5 * (sigma.at(i, j) + sigma.at(ip, j));
        flux[i] = u >= 0.0 ? u * th.at(i, j) : u * th.at(ip, j);
      }
      for (int i = 0; i < n1; ++i) {
        const int im = (i + n1 - 1) % n1;
        next.at(i, j) = th.at(i, j) - lambda * (flux[i] - flux[im]);
      }
    }
  }
  out.time = state.time + dt;
  return out;
}

double entropy(const GBState& state) {
  double s = 0.0;
  for (const PeriodicField2D* f : {&state.theta_plus, &state.theta_minus}) {
    for (double v : f->values) {
      if (v < -1e-12) {
        throw InvalidStateError("entropy: density " + std::to_string(v) +
                                " below -1e-12");
      }
      if (v > 0.0) s += v * std::log(v);
    }
  }
  return s * state.theta_plus.cell_area();
}

std::vector<double> entropy_budget(std::span<const GBState> trajectory,
                                   const ElasticConstants& ec) {
  std::vector<double> budget;
  if (trajectory.empty()) return budget;
  const double s0 = entropy(trajectory.front());
  double time_integral = 0.0;
  double prev_d = 0.0;
  double prev_t = trajectory.front().time;
  budget.reserve(trajectory.size());
  for (std::size_t k = 0; k < trajectory.size(); ++k) {
    const GBState& st = trajectory[k];
    const PeriodicField2D r12 = riesz_transform(
        riesz_transform(st.theta_plus - st.theta_minus, 2), 1);
    double d = 0.0;
    for (double v : r12.values) d += v * v;
    d *= r12.cell_area();
    if (k > 0) {
      time_integral += 0.5 * (st.time - prev_t) * (d + prev_d);
    }
    prev_d = d;
    prev_t = st.time;
    budget.push_back(entropy(st) - s0 + ec.a_bar * time_integral);
  }
  return budget;
}

GBState random_smooth_state(int n1, int n2, double line_density_L,
                            double amplitude, int max_mode,
                            std::uint64_t seed) {
  if (!(amplitude >= 0.0 && amplitude < 1.0)) {
    throw ValidationError("random_smooth_state: amplitude must lie in [0, 1)");
  }
  Rng rng(seed);
  struct Mode {
    int k1, k2;
    double coef, phase;
  };
  std::vector<Mode> modes[2];
  for (int f = 0; f < 2; ++f) {
    for (int k1 = 1; k1 <= max_mode; ++k1) {
      for (int k2 = -max_mode; k2 <= max_mode; ++k2) {
        modes[f].push_back({k1, k2, rng.uniform(-1.0, 1.0), rng.uniform(0.0, 1.0)});
      }
    }
  }
  auto build = [&](const std::vector<Mode>& ms) {
    PeriodicField2D pert = PeriodicField2D::sample(n1, n2, [&](double x1, double x2) {
      double s = 0.0;
      for (const Mode& m : ms) {
        s += m.coef * std::cos(2.0 * std::numbers::pi *
                               (m.k1 * x1 + m.k2 * x2 + m.phase));
      }
      return s;
    });
    const double scale = pert.max_abs();
    if (scale > 0.0) pert = (amplitude / scale) * pert;
    PeriodicField2D out = pert;
    for (double& v : out.values) v = line_density_L * (1.0 + v);
    return out;
  };
  return make_gb_state(build(modes[0]), build(modes[1]), line_density_L);
}

}  // namespace dislo
