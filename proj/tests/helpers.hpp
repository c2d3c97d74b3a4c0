#pragma once

#include <random>

#include "mirrorcov/constants.hpp"
#include "mirrorcov/model.hpp"

namespace testutil {

// The repository's reference parameter point (the default configuration).
inline mirrorcov::PhysicalParams reference_point() {
  using mirrorcov::kTwoPi;
  mirrorcov::PhysicalParams p;
  p.mass = 7.71e-6;
  p.Omega = kTwoPi * 2.2;
  p.Gamma = kTwoPi * 1e-6;
  p.temperature = 300.0;
  p.gamma_m = kTwoPi * 6.9e-3;
  p.kappa_minus = kTwoPi * 1.64e6;
  p.zeta = 3.0;
  p.delta_minus = 0.2;
  p.g = kTwoPi * 2.68e5;
  p.eta = 0.92;
  p.N_th = 0.0;
  return p;
}

// Small, well-conditioned mode used by the stochastic-ensemble tests.
inline mirrorcov::ModeSpec small_mode() {
  mirrorcov::ModeSpec m;
  m.label = mirrorcov::ModeLabel::Single;
  m.gamma_m = 1.0;
  m.omega_m = 50.0;
  m.Q = 50.0;
  m.C = 200.0;
  m.n_th = 10.0;
  m.delta = 0.3;
  m.eta = 0.8;
  m.N_th = 0.0;
  return m;
}

// Random filter-level parameter sets over the validated domain. Draws are
// rejected unless they correspond to a realizable mode, i.e. a positive
// bare frequency: Q (1 + 4 delta^2) > 4 C delta.
class ModeSampler {
 public:
  explicit ModeSampler(std::uint64_t seed) : rng_(seed) {}

  mirrorcov::ModeSpec next() {
    for (;;) {
      double Q = log_uniform(1e1, 1e6);
      double C = log_uniform(1e0, 1e7);
      double delta = uniform(0.01, 1.0);
      if (!(Q * (1.0 + 4.0 * delta * delta) > 4.0 * C * delta)) continue;
      mirrorcov::ModeSpec m;
      m.label = mirrorcov::ModeLabel::Single;
      m.gamma_m = 1.0;
      m.omega_m = Q;
      m.Q = Q;
      m.C = C;
      m.n_th = log_uniform(1e-2, 1e7);
      m.delta = delta;
      m.eta = uniform(0.3, 1.0);
      m.N_th = rng_() & 1 ? 0.0 : uniform(0.0, 5.0);
      return m;
    }
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testutil
