#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Data-parallel inner loops used by the grid reductions and the lattice
// convolution. Each backend implements the same table of kernels; the scalar
// one is the reference. The active backend is picked once at runtime from the
// CPU features, or forced with SKL_SIMD=scalar|avx2|neon.

namespace skl::simd {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b);

struct Ops {
  Backend backend;
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// sum_i x[i], blocked pairwise order
  double (*sum)(const double* x, std::size_t n);
  /// acc[i] += x[i] * x[i]
  void (*add_squares)(const double* x, double* acc, std::size_t n);
  /// sum_i w[i] * x[i]
  double (*weighted_sum)(const double* w, const double* x, std::size_t n);
};

/// Compiled in and supported by this CPU.
bool supported(Backend b);
std::vector<Backend> available_backends();

const Ops& ops_for(Backend b);
const Ops& active();
/// Switches the active backend for the whole process (tests, benchmarks).
/// Throws InputError when the backend is not available.
void use_backend(Backend b);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline void add_squares(std::span<const double> x, std::span<double> acc) {
  active().add_squares(x.data(), acc.data(), x.size());
}
inline double weighted_sum(std::span<const double> w, std::span<const double> x) {
  return active().weighted_sum(w.data(), x.data(), x.size());
}

namespace detail {
extern const Ops kScalarOps;
#if defined(SKL_HAVE_AVX2_BACKEND)
extern const Ops kAvx2Ops;
#endif
#if defined(SKL_HAVE_NEON_BACKEND)
extern const Ops kNeonOps;
#endif
}  // namespace detail

}  // namespace skl::simd
