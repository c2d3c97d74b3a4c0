#include "mirrorcov/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "mirrorcov/simd/dispatch.hpp"

namespace mirrorcov {

const char* to_string(KernelChoice k) {
  switch (k) {
    case KernelChoice::Scalar: return "scalar";
    case KernelChoice::Avx2: return "avx2";
    default: return "auto";
  }
}

namespace {

simd::KernelInfo pick_kernel(KernelChoice choice) {
  if (choice == KernelChoice::Scalar) return simd::scalar_kernel();
  simd::KernelInfo avx2 = simd::avx2_kernel();
  if (choice == KernelChoice::Avx2) {
    if (!avx2.run)
      throw DomainError(simd::avx2_compiled_in()
                            ? "avx2 kernel requested but this CPU does not support it"
                            : "avx2 kernel requested but it was not compiled in");
    return avx2;
  }
  return avx2.run ? avx2 : simd::scalar_kernel();
}

// Deterministic scalar mean over a fixed-order range (Kahan).
double kahan_mean(const double* v, int n) {
  double acc = 0, comp = 0;
  for (int i = 0; i < n; ++i) {
    double y = v[i] - comp;
    double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return acc / n;
}

double scatter_se(const double* v, int n, double mean) {
  if (n < 2) return 0;
  double acc = 0, comp = 0;
  for (int i = 0; i < n; ++i) {
    double d = v[i] - mean;
    double y = d * d - comp;
    double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
  }
  return std::sqrt(acc / (static_cast<double>(n) * (n - 1)));
}

constexpr int kBlockTrajectories = 256;

}  // namespace

EnsembleResult run_ensemble(const SystemMatrices& s, const KalmanGain& gain,
                            double init_sd_q, double init_sd_p, int n_traj, double dt,
                            std::int64_t steps_burn, std::int64_t steps_collect,
                            std::uint64_t seed, int jobs, KernelChoice kernel) {
  if (n_traj < 2) throw DomainError("run_ensemble needs at least 2 trajectories");
  if (!(dt > 0)) throw DomainError("run_ensemble needs dt > 0");
  if (steps_collect < 1) throw DomainError("run_ensemble needs steps_collect >= 1");

  // Correlated increments: cov [[nbar, l2], [l2, m_noise]] dt via Cholesky.
  // Zero process noise (nbar = 0 with l2 = 0) is a valid degenerate case.
  bool psd = s.nbar >= 0 && s.m_noise > 0 &&
             s.l2 * s.l2 <= s.nbar * s.m_noise * (1.0 + 1e-12);
  if (!psd) {
    std::ostringstream os;
    os << "noise covariance not factorable: nbar = " << s.nbar << ", l2 = " << s.l2
       << ", m_noise = " << s.m_noise << " violate the correlation bound";
    throw IllConditionedNoise(os.str());
  }
  double a11 = std::sqrt(s.nbar);
  double a21 = a11 > 0 ? s.l2 / a11 : 0.0;
  double rem = std::max(0.0, s.m_noise - a21 * a21);

  simd::KernelInfo ki = pick_kernel(kernel);
  double sqdt = std::sqrt(dt);
  simd::StepParams sp;
  sp.omega_dt = s.omega * dt;
  sp.gamma_dt = s.gamma * dt;
  sp.c1_dt = s.c1 * dt;
  sp.K1 = gain.k1;
  sp.K2 = gain.k2;
  sp.sw = a11 * sqdt;
  sp.sv0 = a21 * sqdt;
  sp.sv1 = std::sqrt(rem) * sqdt;

  constexpr int kWidest = 4;
  int n_blocks = (n_traj + kBlockTrajectories - 1) / kBlockTrajectories;
  std::vector<double> a11v(n_traj), a12v(n_traj), a22v(n_traj), aqv(n_traj), apv(n_traj);

  auto run_blocks = [&](int block_begin, int block_end) {
    std::vector<double> mem;
    for (int blk = block_begin; blk < block_end; ++blk) {
      int t0 = blk * kBlockTrajectories;
      int count = std::min(kBlockTrajectories, n_traj - t0);
      int padded = (count + kWidest - 1) / kWidest * kWidest;
      mem.assign(static_cast<size_t>(padded) * 14, 0.0);
      simd::BlockArrays ba;
      ba.n = padded;
      double* base = mem.data();
      ba.q = base;
      ba.p = base + padded;
      ba.qh = base + 2 * padded;
      ba.ph = base + 3 * padded;
      ba.a11 = base + 4 * padded;
      ba.a12 = base + 5 * padded;
      ba.a22 = base + 6 * padded;
      ba.aq = base + 7 * padded;
      ba.ap = base + 8 * padded;
      ba.c11 = base + 9 * padded;
      ba.c12 = base + 10 * padded;
      ba.c22 = base + 11 * padded;
      ba.cq = base + 12 * padded;
      ba.cp = base + 13 * padded;

      for (int i = 0; i < count; ++i) {
        auto draw = simd::Philox4x32::at(seed, 0, static_cast<std::uint32_t>(t0 + i), 1);
        using L = simd::Lanes<simd::ScalarTag>;
        L::D z0, z1;
        simd::normal_pair<simd::ScalarTag>(draw.lo64(), draw.hi64(), z0, z1);
        ba.q[i] = init_sd_q * z0;
        ba.p[i] = init_sd_p * z1;
      }

      auto u32 = static_cast<std::uint32_t>(t0);
      if (steps_burn > 0) ki.run(sp, ba, seed, u32, 0, steps_burn, false);
      ki.run(sp, ba, seed, u32, steps_burn, steps_collect, true);

      double inv = 1.0 / static_cast<double>(steps_collect);
      for (int i = 0; i < count; ++i) {
        a11v[t0 + i] = ba.a11[i] * inv;
        a12v[t0 + i] = ba.a12[i] * inv;
        a22v[t0 + i] = ba.a22[i] * inv;
        aqv[t0 + i] = ba.aq[i] * inv;
        apv[t0 + i] = ba.ap[i] * inv;
      }
    }
  };

  int workers = std::max(1, std::min(jobs, n_blocks));
  if (workers == 1) {
    run_blocks(0, n_blocks);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      int b0 = n_blocks * w / workers;
      int b1 = n_blocks * (w + 1) / workers;
      pool.emplace_back(run_blocks, b0, b1);
    }
    for (auto& th : pool) th.join();
  }

  EnsembleResult res;
  res.n_traj = n_traj;
  res.dt = dt;
  res.steps_burn = steps_burn;
  res.steps_collect = steps_collect;
  res.seed = seed;
  res.kernel = ki.name;
  res.noise_algorithm = simd::kNoiseAlgorithm;
  res.moments.second.v11 = kahan_mean(a11v.data(), n_traj);
  res.moments.second.v12 = kahan_mean(a12v.data(), n_traj);
  res.moments.second.v22 = kahan_mean(a22v.data(), n_traj);
  res.moments.mean_q = kahan_mean(aqv.data(), n_traj);
  res.moments.mean_p = kahan_mean(apv.data(), n_traj);
  res.moments.second_se.v11 = scatter_se(a11v.data(), n_traj, res.moments.second.v11);
  res.moments.second_se.v12 = scatter_se(a12v.data(), n_traj, res.moments.second.v12);
  res.moments.second_se.v22 = scatter_se(a22v.data(), n_traj, res.moments.second.v22);
  res.moments.mean_q_se = scatter_se(aqv.data(), n_traj, res.moments.mean_q);
  res.moments.mean_p_se = scatter_se(apv.data(), n_traj, res.moments.mean_p);
  return res;
}

EnsembleResult simulate_ensemble(const TrajectoryConfig& cfg) {
  SystemMatrices s = SystemMatrices::from_mode(cfg.mode, cfg.channel);
  FilterCoefficients fc = filter_coefficients(cfg.mode, cfg.channel);
  Cov2 V = steady_state_analytic(fc, cfg.mode.Q);
  KalmanGain gain = kalman_gain(V, s);
  double relax = error_relaxation_rate(s, gain);

  double dt = cfg.dt;
  if (!(dt > 0)) {
    double rate = std::max({s.omega, s.gamma, fc.gamma_p});
    dt = cfg.dt_scale / rate;
  }
  double t_burn = cfg.t_burn > 0 ? cfg.t_burn : cfg.burn_factor / relax;
  double t_collect = cfg.t_collect > 0 ? cfg.t_collect : cfg.collect_factor / relax;
  auto steps_burn = static_cast<std::int64_t>(std::ceil(t_burn / dt));
  auto steps_collect = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t_collect / dt)));

  double init_sd = std::sqrt(2.0 * cfg.mode.n_th + 1.0);
  EnsembleResult res = run_ensemble(s, gain, init_sd, init_sd, cfg.n_traj, dt, steps_burn,
                                    steps_collect, cfg.seed, cfg.jobs, cfg.kernel);
  res.analytic = V;
  return res;
}

}  // namespace mirrorcov
