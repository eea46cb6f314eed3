#include "sispace/kernels.hpp"

#include <cmath>

#if defined(__x86_64__) || defined(_M_X64)
#define SISPACE_X86 1
#include <immintrin.h>
#else
#define SISPACE_X86 0
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define SISPACE_NEON 1
#include <arm_neon.h>
#else
#define SISPACE_NEON 0
#endif

namespace sispace::kernels {

// ---------------------------------------------------------------------------
// scalar reference
// ---------------------------------------------------------------------------
namespace scalar {

double weighted_norm_sq(const cplx* z, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += (z[i].real() * z[i].real() + z[i].imag() * z[i].imag()) * w[i];
  return acc;
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

cplx weighted_cdot(const cplx* a, const cplx* b, const double* w, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // a * conj(b)
    double r = a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    double j = a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    re += r * w[i];
    im += j * w[i];
  }
  return {re, im};
}

double weighted_abs_sum(const cplx* z, const double* w, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(z[i]) * w[i];
  return acc;
}

}  // namespace scalar

// ---------------------------------------------------------------------------
// AVX2 variants. Complex arrays are interleaved [re0 im0 re1 im1 ...]; one
// 256-bit lane carries two complex numbers.
// ---------------------------------------------------------------------------
#if SISPACE_X86

__attribute__((target("avx2,fma"))) static double avx2_weighted_norm_sq(
    const cplx* z, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(p + 2 * i);      // r0 i0 r1 i1
    __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);  // r2 i2 r3 i3
    __m256d s0 = _mm256_mul_pd(v0, v0);
    __m256d s1 = _mm256_mul_pd(v1, v1);
    // hadd within 128-bit lanes: [r0²+i0², r2²+i2², r1²+i1², r3²+i3²]
    __m256d mags = _mm256_hadd_pd(_mm256_permute2f128_pd(s0, s1, 0x20),
                                  _mm256_permute2f128_pd(s0, s1, 0x31));
    __m256d wv = _mm256_setr_pd(w[i], w[i + 1], w[i + 2], w[i + 3]);
    acc = _mm256_fmadd_pd(mags, wv, acc);
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i)
    total += (z[i].real() * z[i].real() + z[i].imag() * z[i].imag()) * w[i];
  return total;
}

__attribute__((target("avx2,fma"))) static void avx2_cmul(const cplx* a, const cplx* b,
                                                          cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);  // ar0 ai0 ar1 ai1
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    __m256d br = _mm256_movedup_pd(vb);                  // br0 br0 br1 br1
    __m256d bi = _mm256_permute_pd(vb, 0xF);             // bi0 bi0 bi1 bi1
    __m256d aswap = _mm256_permute_pd(va, 0x5);          // ai0 ar0 ai1 ar1
    __m256d t = _mm256_mul_pd(aswap, bi);                // ai*bi ar*bi ...
    __m256d res = _mm256_fmaddsub_pd(va, br, t);         // ar*br-ai*bi, ai*br+ar*bi
    _mm256_storeu_pd(po + 2 * i, res);
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

__attribute__((target("avx2,fma"))) static cplx avx2_weighted_cdot(
    const cplx* a, const cplx* b, const double* w, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();  // re0 im0 re1 im1 accumulators
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    __m256d br = _mm256_movedup_pd(vb);
    __m256d bi = _mm256_permute_pd(vb, 0xF);
    __m256d aswap = _mm256_permute_pd(va, 0x5);
    // a * conj(b): re = ar*br + ai*bi, im = ai*br - ar*bi
    __m256d t = _mm256_mul_pd(aswap, bi);                // ai*bi ar*bi
    __m256d prod = _mm256_fmsubadd_pd(va, br, t);        // ar*br+ai*bi, ai*br-ar*bi
    __m256d wv = _mm256_setr_pd(w[i], w[i], w[i + 1], w[i + 1]);
    acc = _mm256_fmadd_pd(prod, wv, acc);
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double re = lanes[0] + lanes[2];
  double im = lanes[1] + lanes[3];
  for (; i < n; ++i) {
    double r = a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    double j = a[i].imag() * b[i].real() - a[i].real() * b[i].imag();
    re += r * w[i];
    im += j * w[i];
  }
  return {re, im};
}

__attribute__((target("avx2,fma"))) static double avx2_weighted_abs_sum(
    const cplx* z, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v0 = _mm256_loadu_pd(p + 2 * i);
    __m256d v1 = _mm256_loadu_pd(p + 2 * i + 4);
    __m256d s0 = _mm256_mul_pd(v0, v0);
    __m256d s1 = _mm256_mul_pd(v1, v1);
    __m256d mags = _mm256_hadd_pd(_mm256_permute2f128_pd(s0, s1, 0x20),
                                  _mm256_permute2f128_pd(s0, s1, 0x31));
    __m256d wv = _mm256_setr_pd(w[i], w[i + 1], w[i + 2], w[i + 3]);
    acc = _mm256_fmadd_pd(_mm256_sqrt_pd(mags), wv, acc);
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) total += std::abs(z[i]) * w[i];
  return total;
}

#endif  // SISPACE_X86

// ---------------------------------------------------------------------------
// NEON variants (two doubles per 128-bit lane, one complex per load).
// ---------------------------------------------------------------------------
#if SISPACE_NEON

static double neon_weighted_norm_sq(const cplx* z, const double* w, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(z);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v0 = vld1q_f64(p + 2 * i);
    float64x2_t v1 = vld1q_f64(p + 2 * i + 2);
    float64x2_t mags = {vaddvq_f64(vmulq_f64(v0, v0)), vaddvq_f64(vmulq_f64(v1, v1))};
    float64x2_t wv = {w[i], w[i + 1]};
    acc = vfmaq_f64(acc, mags, wv);
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i)
    total += (z[i].real() * z[i].real() + z[i].imag() * z[i].imag()) * w[i];
  return total;
}

static void neon_cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t va = vld1q_f64(reinterpret_cast<const double*>(a + i));
    float64x2_t vb = vld1q_f64(reinterpret_cast<const double*>(b + i));
    float64x2_t br = vdupq_laneq_f64(vb, 0);
    float64x2_t bi = vdupq_laneq_f64(vb, 1);
    float64x2_t aswap = vextq_f64(va, va, 1);
    float64x2_t t = vmulq_f64(aswap, bi);
    float64x2_t sign = {-1.0, 1.0};
    float64x2_t res = vfmaq_f64(vmulq_f64(t, sign), va, br);
    vst1q_f64(reinterpret_cast<double*>(out + i), res);
  }
}

static cplx neon_weighted_cdot(const cplx* a, const cplx* b, const double* w,
                               std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t va = vld1q_f64(reinterpret_cast<const double*>(a + i));
    float64x2_t vb = vld1q_f64(reinterpret_cast<const double*>(b + i));
    float64x2_t br = vdupq_laneq_f64(vb, 0);
    float64x2_t bi = vdupq_laneq_f64(vb, 1);
    float64x2_t aswap = vextq_f64(va, va, 1);
    float64x2_t sign = {1.0, -1.0};
    float64x2_t prod = vfmaq_f64(vmulq_f64(vmulq_f64(aswap, bi), sign), va, br);
    acc = vfmaq_f64(acc, prod, vdupq_n_f64(w[i]));
  }
  return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

static double neon_weighted_abs_sum(const cplx* z, const double* w, std::size_t n) {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::abs(z[i]) * w[i];
  return total;
}

#endif  // SISPACE_NEON

// ---------------------------------------------------------------------------
// runtime dispatch
// ---------------------------------------------------------------------------
namespace {

struct Dispatch {
  double (*weighted_norm_sq)(const cplx*, const double*, std::size_t);
  void (*cmul)(const cplx*, const cplx*, cplx*, std::size_t);
  cplx (*weighted_cdot)(const cplx*, const cplx*, const double*, std::size_t);
  double (*weighted_abs_sum)(const cplx*, const double*, std::size_t);
  const char* name;
};

Dispatch resolve() {
#if SISPACE_X86
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return {avx2_weighted_norm_sq, avx2_cmul, avx2_weighted_cdot,
            avx2_weighted_abs_sum, "avx2"};
  }
#endif
#if SISPACE_NEON
  return {neon_weighted_norm_sq, neon_cmul, neon_weighted_cdot,
          neon_weighted_abs_sum, "neon"};
#endif
  return {scalar::weighted_norm_sq, scalar::cmul, scalar::weighted_cdot,
          scalar::weighted_abs_sum, "scalar"};
}

const Dispatch& table() {
  static const Dispatch d = resolve();
  return d;
}

}  // namespace

double weighted_norm_sq(const cplx* z, const double* w, std::size_t n) {
  return table().weighted_norm_sq(z, w, n);
}
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  table().cmul(a, b, out, n);
}
cplx weighted_cdot(const cplx* a, const cplx* b, const double* w, std::size_t n) {
  return table().weighted_cdot(a, b, w, n);
}
double weighted_abs_sum(const cplx* z, const double* w, std::size_t n) {
  return table().weighted_abs_sum(z, w, n);
}
const char* backend_name() { return table().name; }

}  // namespace sispace::kernels
