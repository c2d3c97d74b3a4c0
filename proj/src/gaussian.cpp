#include "mirrorcov/gaussian.hpp"

#include <cmath>
#include <sstream>

#include "mirrorcov/constants.hpp"

namespace mirrorcov {

void require_physical(const Cov2& V, double tol) {
  if (!V.physical(tol)) {
    std::ostringstream os;
    os << "covariance violates the uncertainty bound: diag = (" << V.v11 << ", " << V.v22
       << "), det = " << V.det();
    throw NonPhysicalState(os.str());
  }
}

Cov2 renormalize_covariance(const Cov2& V, double omega_own, double omega_ref) {
  if (!(omega_own > 0) || !(omega_ref > 0))
    throw DomainError("renormalize_covariance needs positive frequencies");
  double f = omega_ref / omega_own;
  return {V.v11 * f, V.v12, V.v22 / f};
}

std::array<double, 3> dimensional_covariance(const Cov2& V, double mass, double omega_m) {
  if (!(mass > 0) || !(omega_m > 0))
    throw DomainError("dimensional_covariance needs positive mass and frequency");
  double x2 = kHbar / (2.0 * mass * omega_m);
  double p2 = kHbar * mass * omega_m / 2.0;
  double xp = kHbar / 2.0;
  return {V.v11 * x2, V.v12 * xp, V.v22 * p2};
}

Cov4 combine_modes(const Cov2& plus, const Cov2& minus, double omega_ref) {
  Cov2 d = 0.5 * (plus + minus);   // both output modes
  Cov2 o = 0.5 * (plus - minus);   // cross block
  Cov4 V;
  V.omega_ref = omega_ref;
  V.m = {{{d.v11, d.v12, o.v11, o.v12},
          {d.v12, d.v22, o.v12, o.v22},
          {o.v11, o.v12, d.v11, d.v12},
          {o.v12, o.v22, d.v12, d.v22}}};
  return V;
}

namespace {

double det2(double a, double b, double c, double d) { return a * d - b * c; }

double det4x4(const std::array<std::array<double, 4>, 4>& a) {
  // Cofactor expansion via 2x2 minors of the first two rows.
  double m01 = det2(a[0][0], a[0][1], a[1][0], a[1][1]);
  double m02 = det2(a[0][0], a[0][2], a[1][0], a[1][2]);
  double m03 = det2(a[0][0], a[0][3], a[1][0], a[1][3]);
  double m12 = det2(a[0][1], a[0][2], a[1][1], a[1][2]);
  double m13 = det2(a[0][1], a[0][3], a[1][1], a[1][3]);
  double m23 = det2(a[0][2], a[0][3], a[1][2], a[1][3]);
  double n01 = det2(a[2][0], a[2][1], a[3][0], a[3][1]);
  double n02 = det2(a[2][0], a[2][2], a[3][0], a[3][2]);
  double n03 = det2(a[2][0], a[2][3], a[3][0], a[3][3]);
  double n12 = det2(a[2][1], a[2][2], a[3][1], a[3][2]);
  double n13 = det2(a[2][1], a[2][3], a[3][1], a[3][3]);
  double n23 = det2(a[2][2], a[2][3], a[3][2], a[3][3]);
  return m01 * n23 - m02 * n13 + m03 * n12 + m12 * n03 - m13 * n02 + m23 * n01;
}

}  // namespace

EntanglementReport entanglement_from_matrix(const Cov4& V) {
  const auto& a = V.m;
  double detV1 = det2(a[0][0], a[0][1], a[1][0], a[1][1]);
  double detV2 = det2(a[2][2], a[2][3], a[3][2], a[3][3]);
  double detV12 = det2(a[0][2], a[0][3], a[1][2], a[1][3]);
  EntanglementReport r;
  r.Sigma = detV1 + detV2 - 2.0 * detV12;
  r.det4 = det4x4(a);
  double disc = r.Sigma * r.Sigma - 4.0 * r.det4;
  if (disc < 0) disc = 0;  // symmetric physical input: negative only by rounding
  r.nu_tilde2 = 2.0 * r.det4 / (r.Sigma + std::sqrt(disc));
  if (!(r.nu_tilde2 > 0)) {
    std::ostringstream os;
    os << "partial transpose has no positive symplectic eigenvalue (Sigma = " << r.Sigma
       << ", det = " << r.det4 << ")";
    throw NonPhysicalState(os.str());
  }
  r.epsilon_cr = -0.5 * std::log2(r.nu_tilde2);
  r.E_N = std::max(0.0, r.epsilon_cr);
  return r;
}

double epsilon_cr_closed_form(const FilterCoefficients& plus, double Q_plus,
                              const FilterCoefficients& minus, double Q_minus) {
  if (!(plus.lambda_p > 0) || !(minus.lambda_p > 0))
    throw ZeroMeasurementRate("closed-form entanglement needs both measurement rates positive");
  double gp = plus.gamma_p, gm = minus.gamma_p;
  double Lp = plus.Lambda_p, Lm = minus.Lambda_p;
  double k4 = (gp - 1.0) * (gm - 1.0) / (4.0 * plus.lambda_p * minus.lambda_p);
  double B1 = (gp * gp + gm * gm - gp * gm - 1.0) / (Q_plus * Q_minus) +
              2.0 * (Lp + Q_plus) / Q_minus + 2.0 * (Lm + Q_minus) / Q_plus;
  double B2 = (gp * gp - 1.0) / (Q_plus * Q_plus) + 4.0 * Lp / Q_plus + 4.0;
  double B3 = (gm * gm - 1.0) / (Q_minus * Q_minus) + 4.0 * Lm / Q_minus + 4.0;
  double disc = B1 * B1 - B2 * B3;
  if (disc < 0) disc = 0;
  // B1 - sqrt(disc) rewritten to avoid cancellation when nu2 is small.
  double nu2 = k4 * (B2 * B3) / (B1 + std::sqrt(disc));
  if (!(nu2 > 0)) throw NonPhysicalState("closed-form symplectic eigenvalue not positive");
  return -0.5 * std::log2(nu2);
}

SqueezeEigs squeeze_eigenvalues(const Cov2& V) {
  double half_tr = 0.5 * (V.v11 + V.v22);
  double half_d = 0.5 * std::hypot(V.v11 - V.v22, 2.0 * V.v12);
  return {half_tr - half_d, half_tr + half_d};
}

SqueezeAngle squeezing_angle(const Cov2& V) {
  SqueezeEigs e = squeeze_eigenvalues(V);
  SqueezeAngle a;
  double spread = e.e_max - e.e_min;
  if (spread <= 1e-14 * std::max(1.0, e.e_max)) {
    a.degenerate = true;
    return a;
  }
  double num = std::max(V.v11 - e.e_min, 0.0);
  double den = std::max(e.e_max - V.v11, 0.0);
  a.theta = den == 0 ? kPi / 2.0 : std::atan(std::sqrt(num / den));
  a.rotation = V.v12 < 0 ? -a.theta : a.theta;
  return a;
}

double purity(const Cov2& V) {
  double d = V.det();
  if (!(d > 0)) throw NonPhysicalState("purity of a non-positive covariance");
  return 1.0 / std::sqrt(d);
}

double purity4(const Cov4& V) {
  double d = det4x4(V.m);
  if (!(d > 0)) throw NonPhysicalState("purity of a non-positive covariance");
  return 1.0 / std::sqrt(d);
}

WignerEllipse wigner_ellipse(const Cov2& V, int n_points) {
  require_physical(V, 1e-6);
  SqueezeEigs e = squeeze_eigenvalues(V);
  SqueezeAngle a = squeezing_angle(V);
  WignerEllipse w;
  w.semi_minor = std::sqrt(std::max(e.e_min, 0.0));
  w.semi_major = std::sqrt(e.e_max);
  w.degenerate = a.degenerate;
  // Minor-axis direction in [0, pi). For V12 <= 0 the short axis sits at
  // theta, otherwise mirrored to pi - theta.
  w.angle = a.degenerate ? 0.0 : (V.v12 <= 0 ? a.theta : kPi - a.theta);
  if (n_points > 0) {
    w.points.reserve(static_cast<size_t>(n_points));
    double ca = std::cos(w.angle), sa = std::sin(w.angle);
    for (int k = 0; k < n_points; ++k) {
      double ph = kTwoPi * k / n_points;
      double u = w.semi_minor * std::cos(ph);
      double v = w.semi_major * std::sin(ph);
      w.points.push_back({u * ca - v * sa, u * sa + v * ca});
    }
  }
  return w;
}

}  // namespace mirrorcov
