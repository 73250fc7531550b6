#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dislo/errors.hpp"
#include "dislo/rng.hpp"
#include "dislo/sub1d.hpp"

using namespace dislo;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const ElasticConstants kEc = derive_constants(1.0, 1.0);

Sub1DState flat_state(int n, double L) {
  Sub1DState s;
  s.n = n;
  s.line_density_L = L;
  s.rho_plus.assign(n, 0.0);
  s.rho_minus.assign(n, 0.0);
  return s;
}

double min_forward_diff(const Sub1DState& s) {
  double m = std::numeric_limits<double>::infinity();
  for (const std::vector<double>* f : {&s.rho_plus, &s.rho_minus}) {
    for (int j = 0; j < s.n; ++j) {
      m = std::min(m, (*f)[(j + 1) % s.n] - (*f)[j] + s.line_density_L / s.n);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("velocity_field") {
  SUBCASE("equal primitives give zero velocity") {
    const Sub1DState s = flat_state(32, 1.0);
    for (double v : velocity_field(s, kEc)) CHECK(v == 0.0);
  }
  SUBCASE("constant difference d gives c1 d (1 + c2)") {
    Sub1DState s = flat_state(32, 1.0);
    const double d = 0.4;
    for (double& v : s.rho_plus) v = d;
    for (double v : velocity_field(s, kEc)) {
      CHECK(v == doctest::Approx(kEc.c1 * d * (1.0 + kEc.c2)).epsilon(1e-14));
    }
  }
  SUBCASE("sine difference: the integral term vanishes") {
    const int n = 64;
    Sub1DState s = flat_state(n, 1.0);
    const double alpha = 0.1;
    for (int j = 0; j < n; ++j) {
      s.rho_plus[j] = alpha * std::sin(kTwoPi * j / n);
    }
    const std::vector<double> v = velocity_field(s, kEc);
    for (int j = 0; j < n; ++j) {
      CHECK(v[j] == doctest::Approx(kEc.c1 * alpha * std::sin(kTwoPi * j / n))
                        .epsilon(1e-12));
    }
  }
  SUBCASE("c2 override replaces the material value") {
    Sub1DState s = flat_state(16, 1.0);
    for (double& v : s.rho_plus) v = 0.3;
    const std::vector<double> v0 = velocity_field(s, kEc, 0.0);
    for (double v : v0) CHECK(v == doctest::Approx(kEc.c1 * 0.3).epsilon(1e-14));
  }
}

TEST_CASE("sub1d step") {
  SUBCASE("equal primitives are stationary") {
    Sub1DState s = random_monotone_state(32, 1.0, 0.6, 5);
    s.rho_minus = s.rho_plus;  // same monotone periodic part on both fields
    s.validate();
    const Sub1DState next = step(s, 1e-3, kEc);
    for (int j = 0; j < 32; ++j) {
      CHECK(next.rho_plus[j] == s.rho_plus[j]);
      CHECK(next.rho_minus[j] == s.rho_minus[j]);
    }
  }
  SUBCASE("constant difference: hand-executed 8-point update") {
    const int n = 8;
    const double L = 1.0, d = 0.25, dt = 0.01;
    Sub1DState s = flat_state(n, L);
    Rng rng(9);
    for (int j = 0; j < n; ++j) {
      s.rho_plus[j] = d + 0.02 * std::sin(kTwoPi * j / n);
      s.rho_minus[j] = 0.02 * std::sin(kTwoPi * j / n);
    }
    s.validate();
    // independent oracle: v is constant c1 d (1 + c2) > 0, rho+ advected
    // rightwards (backward difference), rho- leftwards (forward difference)
    const double v = kEc.c1 * d * (1.0 + kEc.c2);
    const double dy = 1.0 / n;
    std::vector<double> expect_p(n), expect_m(n);
    for (int j = 0; j < n; ++j) {
      const int jm = (j + n - 1) % n;
      const int jp = (j + 1) % n;
      const double back = (s.rho_plus[j] - s.rho_plus[jm] + L / n) / dy;
      const double fwd = (s.rho_minus[jp] - s.rho_minus[j] + L / n) / dy;
      expect_p[j] = s.rho_plus[j] - dt * v * back;
      expect_m[j] = s.rho_minus[j] + dt * v * fwd;
    }
    const Sub1DState next = step(s, dt, kEc);
    for (int j = 0; j < n; ++j) {
      CHECK(next.rho_plus[j] == doctest::Approx(expect_p[j]).epsilon(1e-13));
      CHECK(next.rho_minus[j] == doctest::Approx(expect_m[j]).epsilon(1e-13));
    }
  }
  SUBCASE("CFL violation raises with the admissible dt") {
    Sub1DState s = flat_state(16, 1.0);
    for (double& v : s.rho_plus) v = 1.0;
    CHECK_THROWS_AS(step(s, 10.0, kEc), StepSizeError);
  }
  SUBCASE("monotonicity preserved over 1000 random-data steps") {
    Sub1DState s = random_monotone_state(64, 1.0, 0.6, 2024);
    const double dy = 1.0 / 64;
    for (int k = 0; k < 1000; ++k) {
      const std::vector<double> v = velocity_field(s, kEc);
      double vmax = 0.0;
      for (double x : v) vmax = std::max(vmax, std::abs(x));
      if (vmax == 0.0) break;
      s = step(s, 0.45 * dy / vmax, kEc);
      CHECK(min_forward_diff(s) >= -1e-12);
    }
  }
}

TEST_CASE("comparison_check (c2 = 0)") {
  SUBCASE("identical states stay ordered") {
    const Sub1DState a = random_monotone_state(64, 1.0, 0.5, 1);
    CHECK(comparison_check(a, a, 0.2, kEc));
  }
  SUBCASE("constant offset persists") {
    const Sub1DState a = random_monotone_state(64, 1.0, 0.5, 2);
    Sub1DState b = a;
    for (double& v : b.rho_plus) v += 0.1;
    for (double& v : b.rho_minus) v += 0.1;
    CHECK(comparison_check(a, b, 0.3, kEc));
  }
  SUBCASE("random ordered pairs stay ordered") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Sub1DState a = random_monotone_state(64, 1.0, 0.5, 100 + seed);
      Sub1DState b = a;
      Rng rng(200 + seed);
      const double c = rng.uniform(0.05, 0.15);
      const double eps = 0.03;
      const double phase = rng.uniform();
      for (int j = 0; j < b.n; ++j) {
        const double delta = c + eps * std::sin(kTwoPi * (double(j) / b.n + phase));
        b.rho_plus[j] += delta;
        b.rho_minus[j] += delta;
      }
      b.validate();
      CHECK(comparison_check(a, b, 0.25, kEc));
    }
  }
  SUBCASE("violated initial ordering rejected") {
    const Sub1DState a = random_monotone_state(32, 1.0, 0.5, 7);
    Sub1DState b = a;
    b.rho_plus[3] -= 0.2;
    // may also break monotonicity; rebuild something ordered the wrong way
    Sub1DState lo = a;
    for (double& v : lo.rho_plus) v += 0.1;
    CHECK_THROWS_AS(comparison_check(lo, a, 0.1, kEc), ValidationError);
  }
}

TEST_CASE("sub1d state validation") {
  SUBCASE("decreasing reconstructed primitive rejected") {
    Sub1DState s = flat_state(16, 1.0);
    s.rho_plus[5] = 1.0;  // creates a big drop at j = 5 -> 6
    CHECK_THROWS_AS(s.validate(), ValidationError);
  }
  SUBCASE("steady forcing shifts the velocity uniformly") {
    const Sub1DState s = flat_state(16, 1.0);
    const std::vector<double> v = velocity_field(s, kEc, {}, 0.2);
    for (double x : v) {
      CHECK(x == doctest::Approx(kEc.c1 * 0.2 * (1.0 + kEc.c2)).epsilon(1e-14));
    }
  }
}
