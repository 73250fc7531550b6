#pragma once

#include <functional>
#include <vector>

namespace dislo {

/// Real scalar field sampled on a uniform grid over the unit torus.
/// values[i * n2 + j] is the sample at (x1, x2) = (i / n1, j / n2).
struct PeriodicField2D {
  int n1 = 0;
  int n2 = 0;
  std::vector<double> values;

  static PeriodicField2D zeros(int n1, int n2);

  /// Samples f(x1, x2) on the grid.
  static PeriodicField2D sample(int n1, int n2,
                                const std::function<double(double, double)>& f);

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n2 + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n2 + j]; }

  double cell_area() const { return 1.0 / (static_cast<double>(n1) * n2); }

  /// Torus quadrature: sum of samples times cell area.
  double quadrature() const;
  double mean() const { return quadrature(); }
  double l2_norm() const;
  double max_abs() const;
  double min_value() const;

  /// Throws ValidationError unless n1, n2 >= 2 and all samples are finite.
  void validate() const;
};

PeriodicField2D operator+(const PeriodicField2D& a, const PeriodicField2D& b);
PeriodicField2D operator-(const PeriodicField2D& a, const PeriodicField2D& b);
PeriodicField2D operator*(double s, const PeriodicField2D& f);

}  // namespace dislo
