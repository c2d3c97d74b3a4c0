#include "mirrorcov/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mirrorcov/constants.hpp"

namespace mirrorcov {

const char* to_string(MeasurementChannel c) {
  return c == MeasurementChannel::AmplitudeX ? "x" : "y";
}

const char* to_string(ModeLabel l) {
  switch (l) {
    case ModeLabel::Common: return "common";
    case ModeLabel::Differential: return "differential";
    default: return "single";
  }
}

const char* to_string(DampingModel d) {
  return d == DampingModel::Structural ? "structural" : "velocity";
}

namespace {

[[noreturn]] void fail(const char* what, double value) {
  std::ostringstream os;
  os << what << " (got " << value << ")";
  throw DomainError(os.str());
}

}  // namespace

void PhysicalParams::validate() const {
  if (!(mass > 0)) fail("mass must be positive", mass);
  if (!(Omega > 0)) fail("Omega must be positive", Omega);
  if (!(Gamma >= 0)) fail("Gamma must be nonnegative", Gamma);
  if (!(temperature >= 0)) fail("temperature must be nonnegative", temperature);
  if (!(gamma_m > 0)) fail("gamma_m must be positive", gamma_m);
  if (!(kappa_minus > 0)) fail("kappa_minus must be positive", kappa_minus);
  if (!(zeta >= 1)) fail("zeta must be >= 1", zeta);
  if (!(delta_minus >= 0)) fail("delta_minus must be nonnegative", delta_minus);
  if (!(eta >= 0 && eta <= 1)) fail("eta must lie in [0, 1]", eta);
  if (!(N_th >= 0)) fail("N_th must be nonnegative", N_th);
  if (!(g >= 0)) fail("g must be nonnegative", g);
  if (g == 0 && !abar) throw DomainError("coupling missing: give g or abar with cavity geometry");
  if (abar) {
    if (!(*abar > 0)) fail("abar must be positive", *abar);
    if (!cavity_length || !(*cavity_length > 0))
      throw DomainError("abar given without a positive cavity_length");
    if (!laser_omega || !(*laser_omega > 0))
      throw DomainError("abar given without a positive laser_omega");
  }
}

double PhysicalParams::coupling() const {
  if (g > 0) return g;
  if (abar && cavity_length && laser_omega)
    return coupling_from_cavity(*abar, *laser_omega, *cavity_length, mass, Omega);
  throw DomainError("coupling missing: give g or abar with cavity geometry");
}

double effective_frequency(double Omega, double g, double kappa, double Delta) {
  if (!(Omega > 0)) fail("Omega must be positive", Omega);
  if (!(kappa > 0)) fail("kappa must be positive", kappa);
  double r = Omega * Omega + 16.0 * Delta * g * g * Omega / (kappa * kappa + 4.0 * Delta * Delta);
  if (!(r > 0)) {
    std::ostringstream os;
    os << "anti-spring drives omega_m^2 to " << r << " at Delta = " << Delta;
    throw NonPositiveFrequency(os.str());
  }
  return std::sqrt(r);
}

double zeta_from_reflectivity(double R) {
  if (!(R >= 0 && R < 1)) fail("recycling reflectivity must lie in [0, 1)", R);
  double r = std::sqrt(R);
  return (1.0 + r) / (1.0 - r);
}

double coupling_from_cavity(double abar, double laser_omega, double cavity_length,
                            double mass, double Omega) {
  if (!(abar > 0)) fail("abar must be positive", abar);
  if (!(laser_omega > 0)) fail("laser_omega must be positive", laser_omega);
  if (!(cavity_length > 0)) fail("cavity_length must be positive", cavity_length);
  if (!(mass > 0)) fail("mass must be positive", mass);
  if (!(Omega > 0)) fail("Omega must be positive", Omega);
  return abar * (laser_omega / cavity_length) * std::sqrt(kHbar / (2.0 * mass * Omega));
}

double thermal_occupation(double temperature, double omega_m, double Omega,
                          double Gamma, double gamma_m, DampingModel damping) {
  if (!(omega_m > 0)) fail("omega_m must be positive", omega_m);
  if (!(gamma_m > 0)) fail("gamma_m must be positive", gamma_m);
  double kT = kBoltzmann * temperature / kHbar;
  if (damping == DampingModel::Structural)
    return kT * Gamma * Omega / (gamma_m * omega_m * omega_m);
  return kT * Gamma / (gamma_m * omega_m);
}

ModeSpec mode_quantities(const PhysicalParams& p, ModeLabel label) {
  p.validate();
  double g = p.coupling();
  double kappa = p.kappa_minus;
  double delta = p.delta_minus;
  if (label == ModeLabel::Common) {
    kappa = p.kappa_minus / p.zeta;
    delta = p.zeta * p.delta_minus;
  }
  double Delta = delta * kappa;
  ModeSpec m;
  m.label = label;
  m.kappa = kappa;
  m.delta = delta;
  m.omega_m = effective_frequency(p.Omega, g, kappa, Delta);
  m.gamma_m = p.gamma_m;
  m.g_m = g * std::sqrt(p.Omega / m.omega_m);
  m.Q = m.omega_m / p.gamma_m;
  m.C = 4.0 * m.g_m * m.g_m / (p.gamma_m * kappa);
  m.n_th = thermal_occupation(p.temperature, m.omega_m, p.Omega, p.Gamma, p.gamma_m, p.damping);
  m.eta = p.eta;
  m.N_th = p.N_th;
  return m;
}

double ModeSpec::quantum_cooperativity() const {
  if (!(n_th > 0)) return std::numeric_limits<double>::infinity();
  return C / (n_th * (1.0 + 2.0 * N_th));
}

FilterCoefficients filter_coefficients(const ModeSpec& mode, MeasurementChannel channel) {
  if (!(mode.C >= 0)) fail("cooperativity must be nonnegative", mode.C);
  if (!(mode.Q > 0)) fail("Q must be positive", mode.Q);
  if (!(mode.eta >= 0 && mode.eta <= 1)) fail("eta must lie in [0, 1]", mode.eta);
  if (!(mode.n_th >= 0)) fail("n_th must be nonnegative", mode.n_th);
  if (!(mode.N_th >= 0)) fail("N_th must be nonnegative", mode.N_th);
  double d = mode.delta;
  double den = 1.0 + 4.0 * d * d;
  double M = 2.0 * mode.eta * mode.N_th + 1.0;
  double Ceta = mode.C * mode.eta;
  double two_n1 = 2.0 * mode.N_th + 1.0;

  FilterCoefficients fc;
  fc.channel = channel;
  if (channel == MeasurementChannel::AmplitudeX) {
    fc.lambda_p = 16.0 * Ceta * d * d / (M * den * den);
    fc.Lambda_p = -8.0 * Ceta * d * two_n1 / (M * den * den);
  } else {
    fc.lambda_p = 4.0 * Ceta / (M * den * den);
    fc.Lambda_p = 8.0 * Ceta * d * two_n1 / (M * den * den);
  }
  fc.nbar_p = 4.0 * mode.n_th + 2.0 + 4.0 * mode.C * two_n1 / den;

  // gamma_p = sqrt(1 + 2Q (s - Q - Lambda_p)) with s^2 = (Q + Lambda_p)^2 +
  // nbar_p lambda_p - Lambda_p^2, evaluated so that s - Q - Lambda_p never
  // cancels. Detection noise bounds Lambda_p^2 <= nbar_p lambda_p, hence the
  // radicand and gamma_p - 1 stay nonnegative.
  double QL = mode.Q + fc.Lambda_p;
  double excess = fc.nbar_p * fc.lambda_p - fc.Lambda_p * fc.Lambda_p;
  double s = std::sqrt(QL * QL + excess);
  double diff = QL > 0 ? excess / (s + QL) : s - QL;
  fc.gamma_p = std::sqrt(1.0 + 2.0 * mode.Q * diff);
  if (fc.gamma_p < 1.0) fc.gamma_p = 1.0;
  return fc;
}

}  // namespace mirrorcov
