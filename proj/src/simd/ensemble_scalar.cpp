#include "mirrorcov/simd/dispatch.hpp"

namespace mirrorcov::simd {

namespace {

void run_block_scalar(const StepParams& sp, const BlockArrays& b, std::uint64_t seed,
                      std::uint32_t traj0, std::int64_t step0, std::int64_t n_steps,
                      bool accumulate) {
  run_block<ScalarTag>(sp, b, seed, traj0, step0, n_steps, accumulate);
}

}  // namespace

KernelInfo scalar_kernel() { return {"scalar", &run_block_scalar}; }

bool avx2_runtime_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace mirrorcov::simd
