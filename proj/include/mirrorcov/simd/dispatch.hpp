#pragma once

#include "mirrorcov/simd/ensemble_kernel.hpp"

namespace mirrorcov::simd {

struct KernelInfo {
  const char* name = "scalar";
  KernelFn run = nullptr;
};

KernelInfo scalar_kernel();
bool avx2_compiled_in();
bool avx2_runtime_supported();
// nullptr kernel when AVX2 is unavailable at build or run time
KernelInfo avx2_kernel();

}  // namespace mirrorcov::simd
