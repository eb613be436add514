// AVX2 + FMA kernels. This file is compiled with -mavx2 -mfma; nothing in it
// may run before dispatch.cpp has confirmed the CPU supports both.

#include <immintrin.h>

#include "pairwise.hpp"
#include "skl/simd.hpp"

namespace skl::simd::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swapped = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum_avx2(const double* x, std::size_t n) {
  return pairwise_reduce(0, n, [x](std::size_t begin, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = begin;
    const std::size_t end = begin + len;
    for (; i + 4 <= end; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double s = hsum(acc);
    for (; i < end; ++i) s += x[i];
    return s;
  });
}

void add_squares_avx2(const double* x, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(v, v, _mm256_loadu_pd(acc + i)));
  }
  for (; i < n; ++i) acc[i] += x[i] * x[i];
}

double weighted_sum_avx2(const double* w, const double* x, std::size_t n) {
  return pairwise_reduce(0, n, [w, x](std::size_t begin, std::size_t len) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = begin;
    const std::size_t end = begin + len;
    for (; i + 4 <= end; i += 4) {
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i), acc);
    }
    double s = hsum(acc);
    for (; i < end; ++i) s += w[i] * x[i];
    return s;
  });
}

}  // namespace

const Ops kAvx2Ops{Backend::Avx2, dot_avx2, axpy_avx2, sum_avx2, add_squares_avx2, weighted_sum_avx2};

}  // namespace skl::simd::detail
