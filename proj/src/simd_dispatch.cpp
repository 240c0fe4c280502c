#include <atomic>
#include <cstdlib>
#include <cstring>

#include "simd_backend.hpp"

namespace sphsum::kernels {
namespace {

using detail::Backend;

const Backend* pick_auto() {
#ifdef SPHSUM_X86_64
  if (detail::avx2_supported()) return &detail::avx2_backend();
#endif
  return &detail::scalar_backend();
}

const Backend* pick_by_name(const char* name) {
  if (std::strcmp(name, "scalar") == 0) return &detail::scalar_backend();
#ifdef SPHSUM_X86_64
  if (std::strcmp(name, "avx2") == 0 && detail::avx2_supported()) return &detail::avx2_backend();
#endif
  if (std::strcmp(name, "auto") == 0) return pick_auto();
  return nullptr;
}

std::atomic<const Backend*>& active_slot() {
  static std::atomic<const Backend*> slot = [] {
    if (const char* env = std::getenv("SPHSUM_SIMD")) {
      if (const Backend* b = pick_by_name(env)) return b;
    }
    return pick_auto();
  }();
  return slot;
}

const Backend& active() { return *active_slot().load(std::memory_order_relaxed); }

}  // namespace

double sum(const double* a, std::size_t n) { return active().sum(a, n); }

double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }

void sincos(const double* t, double* cos_out, double* sin_out, std::size_t n) {
  active().sincos(t, cos_out, sin_out, n);
}

std::complex<double> phase_sum(const double* a, const double* x, double scale, std::size_t n) {
  return active().phase_sum(a, x, scale, n);
}

TrigMoments trig_moments(const double* t, std::size_t n) { return active().trig_moments(t, n); }

const char* active_backend() { return active().name; }

bool set_backend(const char* name) {
  const Backend* b = pick_by_name(name);
  if (b == nullptr) return false;
  active_slot().store(b, std::memory_order_relaxed);
  return true;
}

}  // namespace sphsum::kernels
