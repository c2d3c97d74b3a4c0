#pragma once

#include <utility>
#include <vector>

#include "mirrorcov/model.hpp"

namespace mirrorcov {

// Symmetric 2x2 second-moment matrix in a (q, p) quadrature basis. For
// vacuum-normalized covariances the ground state is the identity. The struct
// itself is unit-agnostic; several routines also use it for dimensional
// matrices and say so.
struct Cov2 {
  double v11 = 0;
  double v12 = 0;
  double v22 = 0;

  double det() const { return v11 * v22 - v12 * v12; }
  double trace() const { return v11 + v22; }
  double max_abs() const;
  bool physical(double tol = 1e-9) const;  // positive and det >= 1 - tol
};

Cov2 operator+(const Cov2& a, const Cov2& b);
Cov2 operator-(const Cov2& a, const Cov2& b);
Cov2 operator*(double s, const Cov2& a);

enum class RateUnits { GammaNormalized, RadPerSec };

// Conditional dynamics of one mode under one homodyne channel:
//   dr = A r dt + (0, dW_w),          A = [[0, omega], [-omega, -gamma]]
//   dy = c1 q dt + dW_v
//   cov[(dW_w, dW_v)] = [[nbar, l2], [l2, m_noise]] dt
// gamma_ref records the gamma_m (rad/s) behind the normalization so the two
// unit systems convert both ways.
struct SystemMatrices {
  double omega = 0;
  double gamma = 1;
  double nbar = 0;
  double c1 = 0;
  double l2 = 0;
  double m_noise = 1;
  RateUnits units = RateUnits::GammaNormalized;
  double gamma_ref = 1;

  static SystemMatrices from_mode(const ModeSpec& mode, MeasurementChannel channel,
                                  RateUnits units = RateUnits::GammaNormalized);
  SystemMatrices with_units(RateUnits target) const;

  double lambda_rate() const { return c1 * c1 / m_noise; }
  double Lambda_rate() const { return c1 * l2 / m_noise; }
};

struct RiccatiOptions {
  double dt = 0;                // fixed step; 0 picks the rate-scaled schedule
  double dt_scale = 0.01;       // rate-scaled step = dt_scale / local rate bound
  double t_end = 0;             // 0 picks 30 / (conditional relaxation rate)
  double stop_residual = 1e-10; // on max|dV/dt| relative to max(nbar, 1)
  int sample_stride = 0;        // keep every k-th step; 0 keeps endpoints only
};

struct RiccatiResult {
  Cov2 V;
  double t = 0;
  long steps = 0;
  bool converged = false;  // residual stop reached before t_end
  std::vector<std::pair<double, Cov2>> samples;
};

// dV/dt = AV + VA^T + N - (VC^T + L)(VC^T + L)^T / m_noise
Cov2 riccati_rhs(const Cov2& V, const SystemMatrices& s);

// Steady conditional covariance in gamma_m units, closed form.
Cov2 steady_state_analytic(const FilterCoefficients& fc, double Q);

// Classical RK4 on the three independent entries. Throws StepSizeTooLarge
// when a caller-fixed step lets det V fall below -tol.
RiccatiResult integrate_riccati(const Cov2& V0, const SystemMatrices& s,
                                const RiccatiOptions& opt = {});

// Steady covariance of the same dynamics with the measurement record
// discarded. Diagonal nbar/(2 gamma) for the oscillator drift used here.
Cov2 lyapunov_steady_state(const SystemMatrices& s);

// Generic 2x2 Lyapunov steady state A V + V A^T + N = 0 via the direct
// 3x3 linear solve. Throws NotHurwitz when A is not strictly stable.
Cov2 lyapunov_generic(const double A[2][2], const double N[2][2]);

struct KalmanGain {
  double k1 = 0;
  double k2 = 0;
};

KalmanGain kalman_gain(const Cov2& V, const SystemMatrices& s);

// Slowest covariance relaxation rate of the gain-closed error dynamics
// A - K C; sets default burn-in and integration horizons.
double error_relaxation_rate(const SystemMatrices& s, const KalmanGain& K);

}  // namespace mirrorcov
