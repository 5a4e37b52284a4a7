#include "tsw/simd/kernels.hpp"

#if defined(TSW_HAVE_AVX2)
#include <immintrin.h>

namespace tsw::simd {
namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
  }
  for (; i + 4 <= n; i += 4)
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpby(const double* x, double beta, double* y, std::size_t n) {
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void spmv(int nrows, const int* row_ptr, const int* cols, const double* vals, const double* x,
          double* y) {
  for (int r = 0; r < nrows; ++r) {
    int p = row_ptr[r];
    const int end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; p + 4 <= end; p += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + p));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(vals + p), xv, acc);
    }
    double s = hsum(acc);
    for (; p < end; ++p) s += vals[p] * x[cols[p]];
    y[r] = s;
  }
}

void matmul(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b,
            double* c) {
  for (std::size_t i = 0; i < m; ++i) {
    double* ci = c + i * n;
    const double* ai = a + i * k;
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
      __m256d c0 = _mm256_setzero_pd(), c1 = _mm256_setzero_pd();
      for (std::size_t l = 0; l < k; ++l) {
        const __m256d al = _mm256_set1_pd(ai[l]);
        c0 = _mm256_fmadd_pd(al, _mm256_loadu_pd(b + l * n + j), c0);
        c1 = _mm256_fmadd_pd(al, _mm256_loadu_pd(b + l * n + j + 4), c1);
      }
      _mm256_storeu_pd(ci + j, c0);
      _mm256_storeu_pd(ci + j + 4, c1);
    }
    for (; j + 4 <= n; j += 4) {
      __m256d c0 = _mm256_setzero_pd();
      for (std::size_t l = 0; l < k; ++l)
        c0 = _mm256_fmadd_pd(_mm256_set1_pd(ai[l]), _mm256_loadu_pd(b + l * n + j), c0);
      _mm256_storeu_pd(ci + j, c0);
    }
    for (; j < n; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < k; ++l) s += ai[l] * b[l * n + j];
      ci[j] = s;
    }
  }
}

void mul3(const double* a, const double* b, const double* w, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                          _mm256_loadu_pd(b + i)),
                                            _mm256_loadu_pd(w + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i] * w[i];
}

const KernelTable table{"avx2", dot, axpy, xpby, spmv, matmul, mul3};

}  // namespace

const KernelTable* avx2_kernels() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &table : nullptr;
}

}  // namespace tsw::simd

#else

namespace tsw::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace tsw::simd

#endif
