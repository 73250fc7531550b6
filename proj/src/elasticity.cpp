#include "dislo/elasticity.hpp"

#include <cmath>
#include <numbers>

#include "dislo/errors.hpp"

namespace dislo {

ElasticConstants derive_constants(double lambda, double mu) {
  if (!(mu > 0.0)) {
    throw ValidationError("elastic constants: mu > 0 violated");
  }
  if (!(3.0 * lambda + 2.0 * mu > 0.0)) {
    throw ValidationError("elastic constants: 3*lambda + 2*mu > 0 violated");
  }
  ElasticConstants ec{};
  ec.lambda = lambda;
  ec.mu = mu;
  ec.nu = lambda / (2.0 * (lambda + mu));
  ec.a = mu / (2.0 * std::numbers::pi * (1.0 - ec.nu));
  ec.a_bar = 4.0 * mu * (lambda + mu) / (lambda + 2.0 * mu);
  ec.c1 = mu * (lambda + mu) / (lambda + 2.0 * mu);
  ec.c2 = mu / (lambda + mu);
  return ec;
}

double kernel_sigma0(double x1, double x2, const ElasticConstants& ec) noexcept {
  const double r2 = x1 * x1 + x2 * x2;
  if (r2 == 0.0) {
    return 0.0;  // self-stress convention
  }
  return ec.a * x1 * (x1 * x1 - x2 * x2) / (r2 * r2);
}

StressMatrix kernel_full_stress(double x1, double x2,
                                const ElasticConstants& ec) {
  const double r2 = x1 * x1 + x2 * x2;
  if (r2 == 0.0) {
    throw SingularPointError("full stress evaluated at the dislocation core");
  }
  const double s11 = -ec.a * x2 * (3.0 * x1 * x1 + x2 * x2) / (r2 * r2);
  const double s12 = kernel_sigma0(x1, x2, ec);  // shared closed form
  const double s22 = ec.a * x2 * (x1 * x1 - x2 * x2) / (r2 * r2);
  return StressMatrix{{{s11, s12, 0.0}, {s12, s22, 0.0}, {0.0, 0.0, 0.0}}};
}

}  // namespace dislo
