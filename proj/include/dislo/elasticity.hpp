#pragma once

#include <array>

namespace dislo {

/// Isotropic material constants plus every derived scalar the models share.
/// All fields are plain doubles; derived fields are pure functions of
/// (lambda, mu).
struct ElasticConstants {
  double lambda;  ///< Lame first parameter
  double mu;      ///< shear modulus, > 0
  double nu;      ///< Poisson ratio  lambda / (2 (lambda + mu))
  double a;       ///< kernel prefactor  mu / (2 pi (1 - nu))
  double a_bar;   ///< spectral prefactor  4 mu (lambda + mu) / (lambda + 2 mu)
  double c1;      ///< mu (lambda + mu) / (lambda + 2 mu)
  double c2;      ///< mu / (lambda + mu)
};

/// Builds the full constant set from the Lame pair.
/// Requires mu > 0 and 3 lambda + 2 mu > 0; throws ValidationError naming the
/// violated inequality otherwise.
ElasticConstants derive_constants(double lambda, double mu);

/// Shear stress created at x by a single positive edge dislocation at the
/// origin:  a x1 (x1^2 - x2^2) / (x1^2 + x2^2)^2.
/// Returns exactly 0 at the origin (self-stress convention).
double kernel_sigma0(double x1, double x2, const ElasticConstants& ec) noexcept;

using StressMatrix = std::array<std::array<double, 3>, 3>;

/// Full planar stress matrix of the edge dislocation (Volterra solution).
/// Symmetric; the (1,3), (2,3) and (3,3) entries are zero.
/// Throws SingularPointError at x = (0,0): the zero convention only covers
/// the scalar interaction kernel.
StressMatrix kernel_full_stress(double x1, double x2,
                                const ElasticConstants& ec);

}  // namespace dislo
