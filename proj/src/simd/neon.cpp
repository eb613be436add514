// NEON kernels for aarch64, where Advanced SIMD is architecturally guaranteed.

#include <arm_neon.h>

#include "pairwise.hpp"
#include "skl/simd.hpp"

namespace skl::simd::detail {

namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sum_neon(const double* x, std::size_t n) {
  return pairwise_reduce(0, n, [x](std::size_t begin, std::size_t len) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = begin;
    const std::size_t end = begin + len;
    for (; i + 2 <= end; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double s = vaddvq_f64(acc);
    for (; i < end; ++i) s += x[i];
    return s;
  });
}

void add_squares_neon(const double* x, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t v = vld1q_f64(x + i);
    vst1q_f64(acc + i, vfmaq_f64(vld1q_f64(acc + i), v, v));
  }
  for (; i < n; ++i) acc[i] += x[i] * x[i];
}

double weighted_sum_neon(const double* w, const double* x, std::size_t n) {
  return pairwise_reduce(0, n, [w, x](std::size_t begin, std::size_t len) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = begin;
    const std::size_t end = begin + len;
    for (; i + 2 <= end; i += 2) acc = vfmaq_f64(acc, vld1q_f64(w + i), vld1q_f64(x + i));
    double s = vaddvq_f64(acc);
    for (; i < end; ++i) s += w[i] * x[i];
    return s;
  });
}

}  // namespace

const Ops kNeonOps{Backend::Neon, dot_neon, axpy_neon, sum_neon, add_squares_neon, weighted_sum_neon};

}  // namespace skl::simd::detail
