// Reference kernels. Plain loops, no reassociation beyond the shared
// pairwise tree.

#include "pairwise.hpp"
#include "skl/simd.hpp"

namespace skl::simd::detail {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sum_scalar(const double* x, std::size_t n) {
  return pairwise_reduce(0, n, [x](std::size_t begin, std::size_t len) {
    double s = 0.0;
    for (std::size_t i = begin; i < begin + len; ++i) s += x[i];
    return s;
  });
}

void add_squares_scalar(const double* x, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i] * x[i];
}

double weighted_sum_scalar(const double* w, const double* x, std::size_t n) {
  return pairwise_reduce(0, n, [w, x](std::size_t begin, std::size_t len) {
    double s = 0.0;
    for (std::size_t i = begin; i < begin + len; ++i) s += w[i] * x[i];
    return s;
  });
}

}  // namespace

const Ops kScalarOps{Backend::Scalar, dot_scalar, axpy_scalar, sum_scalar, add_squares_scalar,
                     weighted_sum_scalar};

}  // namespace skl::simd::detail
