#pragma once

#include <complex>
#include <cstddef>

// Data-parallel inner loops shared by the quadrature and Monte Carlo paths.
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant selected at runtime. The two are
// equivalence-tested; the SPHSUM_SIMD environment variable ("scalar",
// "avx2", "auto") pins the backend for reproducibility experiments.

namespace sphsum::kernels {

/// Sums of cos t_j, sin t_j, cos^2 t_j, sin^2 t_j over a phase array.
struct TrigMoments {
  double c = 0.0;
  double s = 0.0;
  double c2 = 0.0;
  double s2 = 0.0;
};

double sum(const double* a, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);

/// cos_out[j] = cos(t[j]), sin_out[j] = sin(t[j]).
void sincos(const double* t, double* cos_out, double* sin_out, std::size_t n);

/// sum_j a[j] * exp(i * scale * x[j]).
std::complex<double> phase_sum(const double* a, const double* x, double scale, std::size_t n);

TrigMoments trig_moments(const double* t, std::size_t n);

/// Name of the backend currently serving the kernels ("scalar" or "avx2").
const char* active_backend();

/// Force a backend by name ("scalar", "avx2", "auto"). Returns false if the
/// requested backend is unavailable on this machine.
bool set_backend(const char* name);

}  // namespace sphsum::kernels
