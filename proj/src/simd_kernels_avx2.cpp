#include "simd_backend.hpp"

#ifdef SPHSUM_X86_64

#include <immintrin.h>

#include <cmath>

// AVX2+FMA variants. The sincos core is the classic Cephes double-precision
// scheme: octant reduction with a three-part Cody-Waite pi/4 and degree-6
// minimax polynomials on [-pi/4, pi/4]. Arguments beyond |t| = 3e7 (where the
// reduction quotient would outgrow the exact-product range) fall back to
// libm lane-wise.
//
// This translation unit is compiled with -mavx2 -mfma; it must only be
// entered after a cpuid check.

namespace sphsum::kernels::detail {
namespace {

constexpr double kFourOverPi = 1.27323954473516268615107010698;
constexpr double kDP1 = 7.85398125648498535156e-1;
constexpr double kDP2 = 3.77489470793079817668e-8;
constexpr double kDP3 = 2.69515142907905952645e-15;
constexpr double kMaxVectorArg = 3.0e7;

const double kSinCoeff[6] = {
    1.58962301576546568060e-10, -2.50507477628578072866e-8, 2.75573136213857245213e-6,
    -1.98412698295895385996e-4, 8.33333333332211858878e-3,  -1.66666666666666307295e-1,
};
const double kCosCoeff[6] = {
    -1.13585365213876817300e-11, 2.08757008419747316778e-9, -2.75573141792967388112e-7,
    2.48015872888517179954e-5,   -1.38888888888730564116e-3, 4.16666666666665929218e-2,
};

inline __m256d poly6(const double* coeff, __m256d zz) {
  __m256d p = _mm256_set1_pd(coeff[0]);
  for (int k = 1; k < 6; ++k) p = _mm256_fmadd_pd(p, zz, _mm256_set1_pd(coeff[k]));
  return p;
}

struct SinCos4 {
  __m256d s;
  __m256d c;
};

// Valid for |x| <= kMaxVectorArg and finite x only.
inline SinCos4 sincos4(__m256d x) {
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d xa = _mm256_andnot_pd(sign_bit, x);
  const __m256d xsign = _mm256_and_pd(sign_bit, x);

  // octant index, forced even so the residual stays in [-pi/4, pi/4]
  __m256d y = _mm256_floor_pd(_mm256_mul_pd(xa, _mm256_set1_pd(kFourOverPi)));
  __m128i j = _mm256_cvtpd_epi32(y);
  const __m128i odd = _mm_and_si128(j, _mm_set1_epi32(1));
  j = _mm_add_epi32(j, odd);
  y = _mm256_add_pd(y, _mm256_cvtepi32_pd(odd));
  j = _mm_and_si128(j, _mm_set1_epi32(7));

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP1), xa);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP2), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(kDP3), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d sinp =
      _mm256_fmadd_pd(_mm256_mul_pd(poly6(kSinCoeff, zz), zz), z, z);
  __m256d cosp = _mm256_fnmadd_pd(zz, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0));
  cosp = _mm256_fmadd_pd(_mm256_mul_pd(poly6(kCosCoeff, zz), zz), zz, cosp);

  // j in {0,2,4,6}: swap sin/cos when j&2, negate per quadrant.
  const __m128i zero = _mm_setzero_si128();
  const __m128i swap32 = _mm_cmpgt_epi32(_mm_and_si128(j, _mm_set1_epi32(2)), zero);
  const __m128i sneg32 = _mm_cmpgt_epi32(_mm_and_si128(j, _mm_set1_epi32(4)), zero);
  const __m128i cneg32 = _mm_xor_si128(swap32, sneg32);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(swap32));
  const __m256d sneg = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(sneg32));
  const __m256d cneg = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(cneg32));

  __m256d s = _mm256_blendv_pd(sinp, cosp, swap);
  __m256d c = _mm256_blendv_pd(cosp, sinp, swap);
  s = _mm256_xor_pd(s, _mm256_and_pd(sneg, sign_bit));
  c = _mm256_xor_pd(c, _mm256_and_pd(cneg, sign_bit));
  s = _mm256_xor_pd(s, xsign);
  return {s, c};
}

// True when every lane is finite and within the vector-path range.
inline bool lanes_in_range(__m256d t) {
  const __m256d xa = _mm256_andnot_pd(_mm256_set1_pd(-0.0), t);
  const __m256d bad = _mm256_cmp_pd(xa, _mm256_set1_pd(kMaxVectorArg), _CMP_NLE_UQ);
  return _mm256_movemask_pd(bad) == 0;
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double sum_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + j));
  double total = hsum(acc);
  for (; j < n; ++j) total += a[j];
  return total;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j), acc);
  double total = hsum(acc);
  for (; j < n; ++j) total += a[j] * b[j];
  return total;
}

void sincos_avx2(const double* t, double* c, double* s, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_loadu_pd(t + j);
    if (lanes_in_range(v)) {
      const SinCos4 sc = sincos4(v);
      _mm256_storeu_pd(c + j, sc.c);
      _mm256_storeu_pd(s + j, sc.s);
    } else {
      for (int l = 0; l < 4; ++l) {
        c[j + l] = std::cos(t[j + l]);
        s[j + l] = std::sin(t[j + l]);
      }
    }
  }
  for (; j < n; ++j) {
    c[j] = std::cos(t[j]);
    s[j] = std::sin(t[j]);
  }
}

std::complex<double> phase_sum_avx2(const double* a, const double* x, double scale,
                                    std::size_t n) {
  const __m256d vscale = _mm256_set1_pd(scale);
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d t = _mm256_mul_pd(vscale, _mm256_loadu_pd(x + j));
    const __m256d va = _mm256_loadu_pd(a + j);
    if (lanes_in_range(t)) {
      const SinCos4 sc = sincos4(t);
      re = _mm256_fmadd_pd(va, sc.c, re);
      im = _mm256_fmadd_pd(va, sc.s, im);
    } else {
      double rr = 0.0, ii = 0.0;
      for (int l = 0; l < 4; ++l) {
        const double tt = scale * x[j + l];
        rr += a[j + l] * std::cos(tt);
        ii += a[j + l] * std::sin(tt);
      }
      re = _mm256_add_pd(re, _mm256_set_pd(0.0, 0.0, 0.0, rr));
      im = _mm256_add_pd(im, _mm256_set_pd(0.0, 0.0, 0.0, ii));
    }
  }
  double total_re = hsum(re);
  double total_im = hsum(im);
  for (; j < n; ++j) {
    const double t = scale * x[j];
    total_re += a[j] * std::cos(t);
    total_im += a[j] * std::sin(t);
  }
  return {total_re, total_im};
}

TrigMoments trig_moments_avx2(const double* t, std::size_t n) {
  __m256d c1 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  __m256d c2 = _mm256_setzero_pd(), s2 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_loadu_pd(t + j);
    if (!lanes_in_range(v)) break;
    const SinCos4 sc = sincos4(v);
    c1 = _mm256_add_pd(c1, sc.c);
    s1 = _mm256_add_pd(s1, sc.s);
    c2 = _mm256_fmadd_pd(sc.c, sc.c, c2);
    s2 = _mm256_fmadd_pd(sc.s, sc.s, s2);
  }
  TrigMoments m;
  m.c = hsum(c1);
  m.s = hsum(s1);
  m.c2 = hsum(c2);
  m.s2 = hsum(s2);
  for (; j < n; ++j) {
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

bool avx2_supported() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Backend& avx2_backend() {
  static const Backend backend = {
      "avx2", sum_avx2, dot_avx2, sincos_avx2, phase_sum_avx2, trig_moments_avx2,
  };
  return backend;
}

}  // namespace sphsum::kernels::detail

#endif  // SPHSUM_X86_64
