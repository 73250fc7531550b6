#include "dislo/field2d.hpp"

#include <cmath>
#include <string>

#include "dislo/errors.hpp"

namespace dislo {

PeriodicField2D PeriodicField2D::zeros(int n1, int n2) {
  PeriodicField2D f;
  f.n1 = n1;
  f.n2 = n2;
  f.values.assign(static_cast<std::size_t>(n1) * n2, 0.0);
  f.validate();
  return f;
}

PeriodicField2D PeriodicField2D::sample(
    int n1, int n2, const std::function<double(double, double)>& f) {
  PeriodicField2D out = zeros(n1, n2);
  for (int i = 0; i < n1; ++i) {
    const double x1 = static_cast<double>(i) / n1;
    for (int j = 0; j < n2; ++j) {
      out.at(i, j) = f(x1, static_cast<double>(j) / n2);
    }
  }
  out.validate();
  return out;
}

double PeriodicField2D::quadrature() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * cell_area();
}

double PeriodicField2D::l2_norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s * cell_area());
}

double PeriodicField2D::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double PeriodicField2D::min_value() const {
  double m = values.empty() ? 0.0 : values.front();
  for (double v : values) m = std::min(m, v);
  return m;
}

void PeriodicField2D::validate() const {
  if (n1 < 2 || n2 < 2) {
    throw ValidationError("field grid: n1, n2 >= 2 violated");
  }
  if (values.size() != static_cast<std::size_t>(n1) * n2) {
    throw ValidationError("field grid: sample count does not match n1*n2");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw ValidationError("field samples must be finite");
    }
  }
}

namespace {
void require_same_grid(const PeriodicField2D& a, const PeriodicField2D& b) {
  if (a.n1 != b.n1 || a.n2 != b.n2) {
    throw ValidationError("field arithmetic: grids differ (" +
                          std::to_string(a.n1) + "x" + std::to_string(a.n2) +
                          " vs " + std::to_string(b.n1) + "x" +
                          std::to_string(b.n2) + ")");
  }
}
}  // namespace

PeriodicField2D operator+(const PeriodicField2D& a, const PeriodicField2D& b) {
  require_same_grid(a, b);
  PeriodicField2D out = a;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += b.values[k];
  return out;
}

PeriodicField2D operator-(const PeriodicField2D& a, const PeriodicField2D& b) {
  require_same_grid(a, b);
  PeriodicField2D out = a;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] -= b.values[k];
  return out;
}

PeriodicField2D operator*(double s, const PeriodicField2D& f) {
  PeriodicField2D out = f;
  for (double& v : out.values) v *= s;
  return out;
}

}  // namespace dislo
