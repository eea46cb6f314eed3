#pragma once
// Data-parallel inner loops shared by the quadrature and sequence code:
// scalar reference implementations plus SIMD variants (AVX2 on x86-64,
// NEON on aarch64) selected once at runtime. The scalar kernels are the
// semantic reference; the SIMD paths are equivalence-tested against them.

#include <complex>
#include <cstddef>

namespace sispace::kernels {

using cplx = std::complex<double>;

// sum_i (re(z_i)^2 + im(z_i)^2) * w_i
double weighted_norm_sq(const cplx* z, const double* w, std::size_t n);

// out_i = a_i * b_i (complex pointwise product)
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);

// sum_i a_i * conj(b_i) * w_i
cplx weighted_cdot(const cplx* a, const cplx* b, const double* w, std::size_t n);

// sum_i |z_i| * w_i  (weighted l^1 accumulation)
double weighted_abs_sum(const cplx* z, const double* w, std::size_t n);

// Name of the dispatched backend: "avx2", "neon" or "scalar".
const char* backend_name();

// Scalar reference kernels, always available (used by equivalence tests).
namespace scalar {
double weighted_norm_sq(const cplx* z, const double* w, std::size_t n);
void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n);
cplx weighted_cdot(const cplx* a, const cplx* b, const double* w, std::size_t n);
double weighted_abs_sum(const cplx* z, const double* w, std::size_t n);
}  // namespace scalar

}  // namespace sispace::kernels
