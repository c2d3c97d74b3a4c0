#pragma once

#include <cstdint>
#include <string>

#include "mirrorcov/riccati.hpp"

namespace mirrorcov {

enum class KernelChoice { Auto, Scalar, Avx2 };

const char* to_string(KernelChoice k);

struct TrajectoryConfig {
  ModeSpec mode;
  MeasurementChannel channel = MeasurementChannel::AmplitudeX;
  int n_traj = 2000;
  double dt = 0;               // gamma_m units; 0 picks dt_scale / fastest rate
  double dt_scale = 0.005;
  double t_burn = 0;           // 0 picks burn_factor / error relaxation rate
  double burn_factor = 20;
  double t_collect = 0;        // 0 picks collect_factor / error relaxation rate
  double collect_factor = 40;
  std::uint64_t seed = 1;
  int jobs = 1;
  KernelChoice kernel = KernelChoice::Auto;
};

// Time-and-ensemble averaged second moments of the estimation error
// e = r - r_hat, with standard errors from the trajectory-to-trajectory
// scatter of the per-trajectory time averages.
struct EnsembleMoments {
  Cov2 second;
  Cov2 second_se;
  double mean_q = 0;
  double mean_p = 0;
  double mean_q_se = 0;
  double mean_p_se = 0;
};

struct EnsembleResult {
  EnsembleMoments moments;
  Cov2 analytic;               // steady conditional covariance it should match
  int n_traj = 0;
  double dt = 0;
  std::int64_t steps_burn = 0;
  std::int64_t steps_collect = 0;
  std::uint64_t seed = 0;
  std::string kernel;
  std::string noise_algorithm;
};

// Synthetic-dynamics entry point: explicit matrices, gain, and step counts.
// init_sd_q/p are the initial true-state standard deviations (the filter
// state starts at the origin).
EnsembleResult run_ensemble(const SystemMatrices& s, const KalmanGain& gain,
                            double init_sd_q, double init_sd_p, int n_traj, double dt,
                            std::int64_t steps_burn, std::int64_t steps_collect,
                            std::uint64_t seed, int jobs, KernelChoice kernel);

// Physical entry point: builds matrices and the steady-state gain from the
// mode, picks dt and horizons from the rates, runs, and attaches the
// analytic covariance for comparison.
EnsembleResult simulate_ensemble(const TrajectoryConfig& cfg);

}  // namespace mirrorcov
