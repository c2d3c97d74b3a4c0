#include "mirrorcov/simd/dispatch.hpp"

namespace mirrorcov::simd {

#if MIRRORCOV_HAVE_AVX2
KernelInfo avx2_kernel_impl();
#endif

bool avx2_compiled_in() {
#if MIRRORCOV_HAVE_AVX2
  return true;
#else
  return false;
#endif
}

KernelInfo avx2_kernel() {
#if MIRRORCOV_HAVE_AVX2
  if (avx2_runtime_supported()) return avx2_kernel_impl();
#endif
  return {};
}

}  // namespace mirrorcov::simd
