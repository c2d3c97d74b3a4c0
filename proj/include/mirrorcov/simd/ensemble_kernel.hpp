#pragma once

#include <cstdint>

#include "mirrorcov/simd/det_math.hpp"
#include "mirrorcov/simd/philox.hpp"

namespace mirrorcov::simd {

// Per-step constants of the Euler-Maruyama update, all premultiplied by dt
// (or sqrt(dt) for the noise rows).
struct StepParams {
  double omega_dt = 0;
  double gamma_dt = 0;
  double c1_dt = 0;
  double K1 = 0;
  double K2 = 0;
  double sw = 0;   // process noise:      dW_w = sw z0
  double sv0 = 0;  // measurement noise:  dW_v = sv0 z0 + sv1 z1
  double sv1 = 0;
};

// One block of trajectories, structure-of-arrays. n is padded to the widest
// lane count; entries past the real trajectory count are ignored on output.
// a* accumulate per-trajectory error moments (with c* their Kahan carries):
// squares and cross terms of e = r - r_hat plus plain sums of its entries.
struct BlockArrays {
  double* q = nullptr;
  double* p = nullptr;
  double* qh = nullptr;
  double* ph = nullptr;
  double* a11 = nullptr;
  double* a12 = nullptr;
  double* a22 = nullptr;
  double* aq = nullptr;
  double* ap = nullptr;
  double* c11 = nullptr;
  double* c12 = nullptr;
  double* c22 = nullptr;
  double* cq = nullptr;
  double* cp = nullptr;
  int n = 0;
};

using KernelFn = void (*)(const StepParams&, const BlockArrays&, std::uint64_t seed,
                          std::uint32_t traj0, std::int64_t step0, std::int64_t n_steps,
                          bool accumulate);

// Advances every trajectory of the block through n_steps updates. The noise
// for (trajectory, step) comes from one Philox block keyed on the global
// indices alone, and per-trajectory accumulators are folded in lane-local
// order, so results do not depend on lane width, blocking, or thread count.
template <class Tag>
void run_block(const StepParams& sp, const BlockArrays& b, std::uint64_t seed,
               std::uint32_t traj0, std::int64_t step0, std::int64_t n_steps,
               bool accumulate) {
  using L = Lanes<Tag>;
  constexpr int W = L::width;

  const auto omega_dt = L::set1(sp.omega_dt);
  const auto m_omega_dt = L::set1(-sp.omega_dt);
  const auto m_gamma_dt = L::set1(-sp.gamma_dt);
  const auto c1_dt = L::set1(sp.c1_dt);
  const auto gainK1 = L::set1(sp.K1);
  const auto gainK2 = L::set1(sp.K2);
  const auto sw = L::set1(sp.sw);
  const auto sv0 = L::set1(sp.sv0);
  const auto sv1 = L::set1(sp.sv1);

  std::uint64_t bits1[W];
  std::uint64_t bits2[W];

  for (std::int64_t k = 0; k < n_steps; ++k) {
    const std::uint64_t step = static_cast<std::uint64_t>(step0 + k);
    for (int i = 0; i < b.n; i += W) {
      for (int l = 0; l < W; ++l) {
        Philox4x32::Block blk =
            Philox4x32::at(seed, step, traj0 + static_cast<std::uint32_t>(i + l), 0);
        bits1[l] = blk.lo64();
        bits2[l] = blk.hi64();
      }
      typename L::D z0, z1;
      normal_pair<Tag>(L::load_bits(bits1), L::load_bits(bits2), z0, z1);
      const auto dww = L::mul(sw, z0);
      const auto dwv = L::fma(sv0, z0, L::mul(sv1, z1));

      const auto q = L::load(b.q + i);
      const auto p = L::load(b.p + i);
      const auto qh = L::load(b.qh + i);
      const auto ph = L::load(b.ph + i);

      const auto inno = L::fma(L::sub(q, qh), c1_dt, dwv);
      const auto qn = L::fma(p, omega_dt, q);
      const auto pn = L::add(p, L::fma(q, m_omega_dt, L::fma(p, m_gamma_dt, dww)));
      const auto qhn = L::add(qh, L::fma(ph, omega_dt, L::mul(gainK1, inno)));
      const auto phn =
          L::add(ph, L::fma(qh, m_omega_dt, L::fma(ph, m_gamma_dt, L::mul(gainK2, inno))));

      L::store(b.q + i, qn);
      L::store(b.p + i, pn);
      L::store(b.qh + i, qhn);
      L::store(b.ph + i, phn);

      if (accumulate) {
        const auto eq = L::sub(qn, qhn);
        const auto ep = L::sub(pn, phn);
        auto fold = [i](double* acc, double* comp, typename L::D term) {
          auto a = L::load(acc + i);
          auto c = L::load(comp + i);
          auto y = L::sub(term, c);
          auto t = L::add(a, y);
          L::store(comp + i, L::sub(L::sub(t, a), y));
          L::store(acc + i, t);
        };
        fold(b.a11, b.c11, L::mul(eq, eq));
        fold(b.a12, b.c12, L::mul(eq, ep));
        fold(b.a22, b.c22, L::mul(ep, ep));
        fold(b.aq, b.cq, eq);
        fold(b.ap, b.cp, ep);
      }
    }
  }
}

}  // namespace mirrorcov::simd
