#pragma once

#include "dislo/elasticity.hpp"
#include "dislo/field2d.hpp"

namespace dislo {

/// Riesz transform along the given axis (1 or 2) on the unit torus.
///
/// Modes carry the signed integer frequencies k in {-n/2, ..., n/2 - 1}.
/// The zero mode is annihilated. Ordinary modes use the odd symbol
/// -i k_axis / |k|, which is conjugate-symmetric, so real fields map to real
/// fields; on an even-n Nyquist plane of the axis the symbol is taken real,
/// k_axis / |k| with k_axis = -n/2, which keeps the output real there too.
/// The composite R1^2 R2^2 is identical to the plain k-multiplier convention.
PeriodicField2D riesz_transform(const PeriodicField2D& f, int axis);

/// Stress representation on the torus: coefficient at k != 0 becomes
/// a_bar * k1^2 k2^2 / |k|^4 times the coefficient of rho_plus - rho_minus;
/// the zero mode is annihilated, so the output has zero mean.
PeriodicField2D sigma12_from_rho_diff(const PeriodicField2D& rho_diff,
                                      const ElasticConstants& ec);

/// Spectral antiderivative along x1: divides coefficients by 2 pi i k1.
/// Modes with k1 = 0 (and the even-n Nyquist plane k1 = -n1/2, which has no
/// odd inverse) are set to zero. Downstream this loss is harmless: the
/// sigma12 multiplier vanishes on k1 = 0 and smooth densities carry no
/// Nyquist energy.
PeriodicField2D antiderivative_x1(const PeriodicField2D& theta_diff);

/// Luxemburg norm of the Zygmund space L ln L on the torus: the gamma > 0
/// at which the grid quadrature of (|f|/gamma) ln(e + |f|/gamma) equals 1,
/// located by bisection in log space (the integrand is strictly decreasing
/// in gamma). Returns 0 for the zero field. tol is relative.
double zygmund_norm(const PeriodicField2D& f, double tol = 1e-10);

}  // namespace dislo
