#include <atomic>
#include <cstdlib>
#include <string>

#include "skl/errors.hpp"
#include "skl/simd.hpp"

namespace skl::simd {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

bool supported(Backend b) {
  switch (b) {
    case Backend::Scalar:
      return true;
    case Backend::Avx2:
#if defined(SKL_HAVE_AVX2_BACKEND)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::Neon:
#if defined(SKL_HAVE_NEON_BACKEND)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out;
  for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
    if (supported(b)) out.push_back(b);
  }
  return out;
}

const Ops& ops_for(Backend b) {
  if (!supported(b)) {
    throw InputError("SIMD backend '" + std::string(to_string(b)) + "' is not available");
  }
  switch (b) {
#if defined(SKL_HAVE_AVX2_BACKEND)
    case Backend::Avx2: return detail::kAvx2Ops;
#endif
#if defined(SKL_HAVE_NEON_BACKEND)
    case Backend::Neon: return detail::kNeonOps;
#endif
    default: return detail::kScalarOps;
  }
}

namespace {

const Ops& select() {
  if (const char* forced = std::getenv("SKL_SIMD")) {
    std::string name(forced);
    for (Backend b : {Backend::Scalar, Backend::Avx2, Backend::Neon}) {
      if (name == to_string(b) && supported(b)) return ops_for(b);
    }
  }
  if (supported(Backend::Avx2)) return ops_for(Backend::Avx2);
  if (supported(Backend::Neon)) return ops_for(Backend::Neon);
  return detail::kScalarOps;
}

std::atomic<const Ops*>& slot() {
  static std::atomic<const Ops*> chosen{&select()};
  return chosen;
}

}  // namespace

const Ops& active() { return *slot().load(std::memory_order_acquire); }

void use_backend(Backend b) { slot().store(&ops_for(b), std::memory_order_release); }

}  // namespace skl::simd
