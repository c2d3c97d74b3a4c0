#include "mirrorcov/simd/dispatch.hpp"
#include "mirrorcov/simd/lanes_avx2.hpp"

namespace mirrorcov::simd {

namespace {

void run_block_avx2(const StepParams& sp, const BlockArrays& b, std::uint64_t seed,
                    std::uint32_t traj0, std::int64_t step0, std::int64_t n_steps,
                    bool accumulate) {
  run_block<Avx2Tag>(sp, b, seed, traj0, step0, n_steps, accumulate);
}

}  // namespace

KernelInfo avx2_kernel_impl() { return {"avx2", &run_block_avx2}; }

}  // namespace mirrorcov::simd
