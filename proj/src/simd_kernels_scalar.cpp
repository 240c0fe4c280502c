#include <cmath>

#include "simd_backend.hpp"

// Reference kernels. Plain loops, libm trig; the vector backends must agree
// with these within the tolerances pinned in the equivalence tests.

namespace sphsum::kernels::detail {
namespace {

double sum_scalar(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += a[j];
  return acc;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += a[j] * b[j];
  return acc;
}

void sincos_scalar(const double* t, double* c, double* s, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = std::cos(t[j]);
    s[j] = std::sin(t[j]);
  }
}

std::complex<double> phase_sum_scalar(const double* a, const double* x, double scale,
                                      std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = scale * x[j];
    re += a[j] * std::cos(t);
    im += a[j] * std::sin(t);
  }
  return {re, im};
}

TrigMoments trig_moments_scalar(const double* t, std::size_t n) {
  TrigMoments m;
  for (std::size_t j = 0; j < n; ++j) {
    const double c = std::cos(t[j]);
    const double s = std::sin(t[j]);
    m.c += c;
    m.s += s;
    m.c2 += c * c;
    m.s2 += s * s;
  }
  return m;
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend backend = {
      "scalar", sum_scalar, dot_scalar, sincos_scalar, phase_sum_scalar, trig_moments_scalar,
  };
  return backend;
}

}  // namespace sphsum::kernels::detail
