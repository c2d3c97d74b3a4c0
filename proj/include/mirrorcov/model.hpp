#pragma once

#include <optional>

#include "mirrorcov/errors.hpp"

namespace mirrorcov {

enum class MeasurementChannel { AmplitudeX, PhaseY };
enum class ModeLabel { Common, Differential, Single };
enum class DampingModel { Structural, Velocity };

const char* to_string(MeasurementChannel c);
const char* to_string(ModeLabel l);
const char* to_string(DampingModel d);

// Interferometer-level inputs. Frequencies and rates are angular (rad/s),
// everything else SI. Common- and differential-mode quantities are derived
// from these, not stored.
struct PhysicalParams {
  double mass = 0;           // suspended mirror mass, kg
  double Omega = 0;          // bare pendulum frequency, rad/s
  double Gamma = 0;          // intrinsic loss rate at Omega, rad/s
  double temperature = 0;    // bath temperature, K
  double gamma_m = 0;        // damping rate in the quadrature dynamics, rad/s
  double kappa_minus = 0;    // differential-mode cavity linewidth, rad/s
  double zeta = 1;           // linewidth ratio kappa_minus / kappa_plus
  double delta_minus = 0;    // cavity detuning over kappa_minus
  double g = 0;              // light-mirror coupling at Omega, rad/s
  double eta = 1;            // homodyne detection efficiency
  double N_th = 0;           // input-field thermal photon number
  DampingModel damping = DampingModel::Structural;

  // Optional cavity geometry; lets g be derived from the circulating
  // amplitude instead of being given directly.
  std::optional<double> abar;          // steady intracavity field amplitude
  std::optional<double> cavity_length; // m
  std::optional<double> laser_omega;   // rad/s
  std::optional<double> input_power;   // W, recorded only

  void validate() const;  // throws DomainError on out-of-range entries
  // Returns g, deriving it from (abar, cavity_length, laser_omega) when a
  // direct value was not supplied.
  double coupling() const;
};

// One collective mode, ready for filter construction.
struct ModeSpec {
  ModeLabel label = ModeLabel::Single;
  double omega_m = 0;   // spring-shifted frequency, rad/s
  double gamma_m = 0;   // damping entering the quadrature dynamics, rad/s
  double kappa = 0;     // cavity linewidth seen by this mode, rad/s
  double delta = 0;     // detuning over this mode's kappa
  double g_m = 0;       // mode coupling g sqrt(Omega / omega_m), rad/s
  double Q = 0;         // omega_m / gamma_m
  double C = 0;         // 4 g_m^2 / (gamma_m kappa)
  double n_th = 0;      // thermal phonon occupation feeding the force noise
  double eta = 1;
  double N_th = 0;

  double quantum_cooperativity() const;  // C / (n_th (1 + 2 N_th))
};

// Dimensionless filter coefficients for one mode and one homodyne channel,
// all rates divided by gamma_m. gamma_p >= 1 always; gamma_p = 1 only when
// the channel carries no position information (lambda_p = 0).
struct FilterCoefficients {
  MeasurementChannel channel = MeasurementChannel::AmplitudeX;
  double lambda_p = 0;  // measurement rate
  double Lambda_p = 0;  // force-measurement noise correlation rate
  double nbar_p = 0;    // force noise intensity
  double gamma_p = 1;   // conditional decay rate
};

// Spring-shifted mechanical frequency. Throws NonPositiveFrequency when the
// anti-spring (Delta < 0) drives omega^2 <= 0.
double effective_frequency(double Omega, double g, double kappa, double Delta);

// Recycling linewidth ratio from the recycling-mirror power reflectivity.
double zeta_from_reflectivity(double R);

// Light-mirror coupling from the circulating amplitude and cavity geometry.
double coupling_from_cavity(double abar, double laser_omega, double cavity_length,
                            double mass, double Omega);

// Thermal occupation at omega_m for the chosen damping model.
double thermal_occupation(double temperature, double omega_m, double Omega,
                          double Gamma, double gamma_m, DampingModel damping);

ModeSpec mode_quantities(const PhysicalParams& p, ModeLabel label);

FilterCoefficients filter_coefficients(const ModeSpec& mode, MeasurementChannel channel);

}  // namespace mirrorcov
