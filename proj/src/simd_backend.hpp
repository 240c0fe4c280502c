#pragma once

#include <complex>
#include <cstddef>

#include "sphsum/simd_kernels.hpp"

// Internal dispatch table. Each backend fills one of these.
namespace sphsum::kernels::detail {

struct Backend {
  const char* name;
  double (*sum)(const double*, std::size_t);
  double (*dot)(const double*, const double*, std::size_t);
  void (*sincos)(const double*, double*, double*, std::size_t);
  std::complex<double> (*phase_sum)(const double*, const double*, double, std::size_t);
  TrigMoments (*trig_moments)(const double*, std::size_t);
};

const Backend& scalar_backend();

#if defined(__x86_64__) || defined(_M_X64)
#define SPHSUM_X86_64 1
const Backend& avx2_backend();  // only call if avx2_supported()
bool avx2_supported();
#endif

}  // namespace sphsum::kernels::detail
