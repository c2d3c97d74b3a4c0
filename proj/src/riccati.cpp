#include "mirrorcov/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mirrorcov {

double Cov2::max_abs() const {
  return std::max({std::abs(v11), std::abs(v12), std::abs(v22)});
}

bool Cov2::physical(double tol) const {
  return v11 > 0 && v22 > 0 && det() >= 1.0 - tol;
}

Cov2 operator+(const Cov2& a, const Cov2& b) {
  return {a.v11 + b.v11, a.v12 + b.v12, a.v22 + b.v22};
}

Cov2 operator-(const Cov2& a, const Cov2& b) {
  return {a.v11 - b.v11, a.v12 - b.v12, a.v22 - b.v22};
}

Cov2 operator*(double s, const Cov2& a) {
  return {s * a.v11, s * a.v12, s * a.v22};
}

SystemMatrices SystemMatrices::from_mode(const ModeSpec& mode, MeasurementChannel channel,
                                         RateUnits units) {
  double d = mode.delta;
  double den = 1.0 + 4.0 * d * d;
  double root = std::sqrt(mode.C * mode.eta);
  double two_n1 = 2.0 * mode.N_th + 1.0;

  SystemMatrices s;
  s.units = RateUnits::GammaNormalized;
  s.gamma_ref = mode.gamma_m;
  s.omega = mode.Q;
  s.gamma = 1.0;
  s.m_noise = 2.0 * mode.eta * mode.N_th + 1.0;
  s.nbar = 4.0 * mode.n_th + 2.0 + 4.0 * mode.C * two_n1 / den;
  if (channel == MeasurementChannel::AmplitudeX) {
    s.c1 = -4.0 * d * root / den;
    s.l2 = 2.0 * root * two_n1 / den;
  } else {
    s.c1 = 2.0 * root / den;
    s.l2 = 4.0 * d * root * two_n1 / den;
  }
  return s.with_units(units);
}

SystemMatrices SystemMatrices::with_units(RateUnits target) const {
  if (target == units) return *this;
  SystemMatrices s = *this;
  s.units = target;
  // Rates scale with gamma_ref, the measurement row with its square root
  // (white-noise scaling keeps lambda = c1^2 / m_noise a rate).
  double f = target == RateUnits::RadPerSec ? gamma_ref : 1.0 / gamma_ref;
  double rf = std::sqrt(f);
  s.omega *= f;
  s.gamma *= f;
  s.nbar *= f;
  s.c1 *= rf;
  s.l2 *= rf;
  return s;
}

Cov2 riccati_rhs(const Cov2& V, const SystemMatrices& s) {
  double g1 = V.v11 * s.c1;
  double g2 = V.v12 * s.c1 + s.l2;
  double m = s.m_noise;
  Cov2 r;
  r.v11 = 2.0 * s.omega * V.v12 - g1 * g1 / m;
  r.v12 = s.omega * V.v22 - s.omega * V.v11 - s.gamma * V.v12 - g1 * g2 / m;
  r.v22 = -2.0 * s.omega * V.v12 - 2.0 * s.gamma * V.v22 + s.nbar - g2 * g2 / m;
  return r;
}

Cov2 steady_state_analytic(const FilterCoefficients& fc, double Q) {
  if (!(Q > 0)) throw DomainError("steady_state_analytic needs Q > 0");
  if (!(fc.lambda_p > 0)) {
    std::ostringstream os;
    os << "channel " << to_string(fc.channel)
       << " carries no position information (lambda_p = " << fc.lambda_p
       << "); the conditional steady state is the unconditional one";
    throw ZeroMeasurementRate(os.str());
  }
  double gm1 = fc.gamma_p - 1.0;
  Cov2 V;
  V.v11 = gm1 / fc.lambda_p;
  V.v12 = gm1 * gm1 / (2.0 * fc.lambda_p * Q);
  V.v22 = gm1 * (2.0 * Q * (Q + fc.Lambda_p) + fc.gamma_p * fc.gamma_p - fc.gamma_p) /
          (2.0 * fc.lambda_p * Q * Q);
  return V;
}

namespace {

Cov2 rk4_step(const Cov2& V, const SystemMatrices& s, double dt) {
  Cov2 k1 = riccati_rhs(V, s);
  Cov2 k2 = riccati_rhs(V + (0.5 * dt) * k1, s);
  Cov2 k3 = riccati_rhs(V + (0.5 * dt) * k2, s);
  Cov2 k4 = riccati_rhs(V + dt * k3, s);
  return V + (dt / 6.0) * (k1 + (2.0 * k2) + (2.0 * k3) + k4);
}

}  // namespace

RiccatiResult integrate_riccati(const Cov2& V0, const SystemMatrices& s,
                                const RiccatiOptions& opt) {
  double lambda = s.lambda_rate();
  double absLam = std::abs(s.Lambda_rate());

  double t_end = opt.t_end;
  if (t_end <= 0) {
    // Horizon from the conditional relaxation rate; fall back to the
    // mechanical damping time when the measurement is off.
    double excess = s.nbar * lambda - absLam * absLam;
    double QL = s.omega + s.c1 * s.l2 / s.m_noise;
    double sr = std::sqrt(std::max(QL * QL + excess, 0.0));
    double diff = QL > 0 ? excess / (sr + QL) : sr - QL;
    double g2 = s.gamma * s.gamma + 2.0 * s.omega * diff;
    double rate = std::sqrt(std::max(g2, 0.0)) - s.gamma;
    if (!(rate > 0)) rate = s.gamma;
    t_end = 30.0 / rate;
  }

  bool fixed = opt.dt > 0;
  double det_floor = -1e-9 * std::max(1.0, V0.max_abs());

  RiccatiResult res;
  res.V = V0;
  if (opt.sample_stride > 0) res.samples.emplace_back(0.0, V0);
  double stop = opt.stop_residual * std::max(s.nbar, 1.0);

  while (res.t < t_end) {
    double dt = opt.dt;
    if (!fixed) {
      double vmax = std::max(res.V.max_abs(), 1.0);
      double rate = std::max({s.omega, s.gamma, 1.0, lambda * vmax + absLam});
      dt = opt.dt_scale / rate;
    }
    if (res.t + dt > t_end) dt = t_end - res.t;

    res.V = rk4_step(res.V, s, dt);
    res.t += dt;
    ++res.steps;

    if (res.V.det() < det_floor || !std::isfinite(res.V.max_abs())) {
      std::ostringstream os;
      os << "covariance left the physical cone at t = " << res.t
         << " (det = " << res.V.det() << "); reduce dt";
      throw StepSizeTooLarge(os.str());
    }
    if (opt.sample_stride > 0 && res.steps % opt.sample_stride == 0)
      res.samples.emplace_back(res.t, res.V);

    if (riccati_rhs(res.V, s).max_abs() <= stop) {
      res.converged = true;
      break;
    }
  }
  if (opt.sample_stride > 0 &&
      (res.samples.empty() || res.samples.back().first != res.t))
    res.samples.emplace_back(res.t, res.V);
  return res;
}

Cov2 lyapunov_steady_state(const SystemMatrices& s) {
  if (!(s.gamma > 0)) throw NotHurwitz("unconditional dynamics needs gamma > 0");
  double half = s.nbar / (2.0 * s.gamma);
  return {half, 0.0, half};
}

Cov2 lyapunov_generic(const double A[2][2], const double N[2][2]) {
  double tr = A[0][0] + A[1][1];
  double det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  if (!(tr < 0) || !(det > 0)) {
    std::ostringstream os;
    os << "drift is not Hurwitz (trace = " << tr << ", det = " << det << ")";
    throw NotHurwitz(os.str());
  }
  // Unknowns x = (V11, V12, V22); rows are the (1,1), (1,2), (2,2) equations.
  double m[3][4] = {
      {2 * A[0][0], 2 * A[0][1], 0, -N[0][0]},
      {A[1][0], A[0][0] + A[1][1], A[0][1], -N[0][1]},
      {0, 2 * A[1][0], 2 * A[1][1], -N[1][1]},
  };
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (m[piv][col] == 0) throw NotHurwitz("singular Lyapunov system");
    std::swap(m[piv], m[col]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

KalmanGain kalman_gain(const Cov2& V, const SystemMatrices& s) {
  return {V.v11 * s.c1 / s.m_noise, (V.v12 * s.c1 + s.l2) / s.m_noise};
}

double error_relaxation_rate(const SystemMatrices& s, const KalmanGain& K) {
  // A - K C = [[-k1 c1, omega], [-omega - k2 c1, -gamma]]
  double a11 = -K.k1 * s.c1;
  double a12 = s.omega;
  double a21 = -s.omega - K.k2 * s.c1;
  double a22 = -s.gamma;
  double tr = a11 + a22;
  double det = a11 * a22 - a12 * a21;
  if (!(tr < 0) || !(det > 0)) {
    std::ostringstream os;
    os << "closed-loop error dynamics unstable (trace = " << tr << ", det = " << det << ")";
    throw ConditionalInstability(os.str());
  }
  double disc = tr * tr - 4.0 * det;
  if (disc <= 0) return -tr;            // complex pair: both real parts tr/2
  return -tr - std::sqrt(disc);         // slow real pole at (tr + sqrt)/2
}

}  // namespace mirrorcov
