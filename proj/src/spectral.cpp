#include "dislo/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <numbers>

#include "dislo/errors.hpp"

namespace dislo {

namespace {

// FFTW plan creation is not thread safe; executing a plan on its own buffers
// is. Plans are created per call under a global lock (FFTW_ESTIMATE makes
// this cheap and deterministic), so callers observe pure-function semantics.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

struct FftBuffers {
  fftw_complex* data = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  int n1 = 0, n2 = 0;

  FftBuffers(int n1_, int n2_) : n1(n1_), n2(n2_) {
    const std::size_t n = static_cast<std::size_t>(n1) * n2;
    data = fftw_alloc_complex(n);
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fwd = fftw_plan_dft_2d(n1, n2, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_2d(n1, n2, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftBuffers() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(data);
  }
  FftBuffers(const FftBuffers&) = delete;
  FftBuffers& operator=(const FftBuffers&) = delete;
};

int signed_freq(int idx, int n) { return 2 * idx < n ? idx : idx - n; }

bool is_self_conjugate(int idx, int n) {
  return idx == 0 || (n % 2 == 0 && 2 * idx == n);
}

// Applies a Fourier multiplier given as a function of the signed integer
// frequencies. The supplied symbol must be conjugate-symmetric on the modes
// it is called for; self-conjugate axis handling is the caller's business.
PeriodicField2D apply_multiplier(
    const PeriodicField2D& f,
    const std::function<std::complex<double>(int, int, int, int)>& symbol) {
  f.validate();
  FftBuffers fft(f.n1, f.n2);
  const std::size_t n = f.values.size();
  for (std::size_t k = 0; k < n; ++k) {
    fft.data[k][0] = f.values[k];
    fft.data[k][1] = 0.0;
  }
  fftw_execute(fft.fwd);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int i = 0; i < f.n1; ++i) {
    const int k1 = signed_freq(i, f.n1);
    for (int j = 0; j < f.n2; ++j) {
      const int k2 = signed_freq(j, f.n2);
      const std::complex<double> m = symbol(k1, k2, i, j);
      const std::size_t idx = static_cast<std::size_t>(i) * f.n2 + j;
      const std::complex<double> c(fft.data[idx][0], fft.data[idx][1]);
      const std::complex<double> out = m * c * inv_n;
      fft.data[idx][0] = out.real();
      fft.data[idx][1] = out.imag();
    }
  }
  fftw_execute(fft.bwd);
  PeriodicField2D out = f;
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = fft.data[k][0];  // imaginary parts cancel to roundoff
  }
  return out;
}

}  // namespace

PeriodicField2D riesz_transform(const PeriodicField2D& f, int axis) {
  if (axis != 1 && axis != 2) {
    throw ValidationError("riesz_transform: axis must be 1 or 2");
  }
  return apply_multiplier(f, [&f, axis](int k1, int k2, int i, int j) {
    if (k1 == 0 && k2 == 0) return std::complex<double>(0.0, 0.0);
    const double ka = axis == 1 ? k1 : k2;
    const double mag = ka / std::sqrt(double(k1) * k1 + double(k2) * k2);
    const int idx = axis == 1 ? i : j;
    const int n = axis == 1 ? f.n1 : f.n2;
    if (is_self_conjugate(idx, n)) {
      return std::complex<double>(mag, 0.0);  // real by convention at Nyquist
    }
    return std::complex<double>(0.0, -mag);
  });
}

PeriodicField2D sigma12_from_rho_diff(const PeriodicField2D& rho_diff,
                                      const ElasticConstants& ec) {
  return apply_multiplier(rho_diff, [&ec](int k1, int k2, int, int) {
    if (k1 == 0 && k2 == 0) return std::complex<double>(0.0, 0.0);
    const double kk1 = double(k1) * k1;
    const double kk2 = double(k2) * k2;
    const double norm2 = kk1 + kk2;
    return std::complex<double>(ec.a_bar * kk1 * kk2 / (norm2 * norm2), 0.0);
  });
}

PeriodicField2D antiderivative_x1(const PeriodicField2D& theta_diff) {
  const int n1 = theta_diff.n1;
  return apply_multiplier(theta_diff, [n1](int k1, int, int i, int) {
    if (k1 == 0 || is_self_conjugate(i, n1)) {
      return std::complex<double>(0.0, 0.0);
    }
    return std::complex<double>(0.0, -1.0 / (2.0 * std::numbers::pi * k1));
  });
}

double zygmund_norm(const PeriodicField2D& f, double tol) {
  f.validate();
  if (!(tol > 0.0)) {
    throw ValidationError("zygmund_norm: tol > 0 violated");
  }
  const double fmax = f.max_abs();
  if (fmax == 0.0) return 0.0;

  const double area = f.cell_area();
  const auto quad = [&](double gamma) {
    double s = 0.0;
    for (double v : f.values) {
      const double r = std::abs(v) / gamma;
      s += r * std::log(std::numbers::e + r);
    }
    return s * area;
  };

  double lo = 1e-300;
  double hi = fmax * 10.0;  // quad(hi) <= 0.1 * ln(e + 0.1) < 1
  for (int it = 0; it < 300 && (hi - lo) > tol * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    if (quad(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace dislo
