#pragma once

#include <array>
#include <vector>

#include "mirrorcov/riccati.hpp"

namespace mirrorcov {

// Symmetric 4x4 two-mode covariance, basis (q1, p1, q2, p2), with the
// normalization reference it was assembled at (0 marks dimensional entries).
struct Cov4 {
  std::array<std::array<double, 4>, 4> m{};
  double omega_ref = 0;
};

struct EntanglementReport {
  double epsilon_cr = 0;  // -log2(nu_tilde) ; positive iff entangled
  double E_N = 0;         // max(0, epsilon_cr)
  double nu_tilde2 = 0;   // squared partial-transpose symplectic eigenvalue
  double Sigma = 0;       // det V1 + det V2 - 2 det V12
  double det4 = 0;        // det of the full 4x4 matrix
};

struct SqueezeEigs {
  double e_min = 0;
  double e_max = 0;
};

// Principal-axis direction of the covariance ellipse. theta is the paper
// convention arctan sqrt((V11 - e_min)/(e_max - V11)) in [0, pi/2];
// rotation carries the sign that diagonalizes V, R(rotation) V R(rotation)^T
// = diag(e_min, e_max); degenerate flags an isotropic matrix where the
// direction is arbitrary.
struct SqueezeAngle {
  double theta = 0;
  double rotation = 0;
  bool degenerate = false;
};

// One-sigma Wigner contour of a single-mode Gaussian state.
struct WignerEllipse {
  double semi_minor = 0;
  double semi_major = 0;
  double angle = 0;  // minor-axis direction in [0, pi)
  bool degenerate = false;
  std::vector<std::array<double, 2>> points;
};

// Rescales a vacuum-normalized covariance from its own mode frequency to a
// common reference (a symplectic local squeeze, so entanglement quantities
// do not depend on the reference choice).
Cov2 renormalize_covariance(const Cov2& V, double omega_own, double omega_ref);

// Dimensional (q in m, p in kg m/s) covariance entries of a
// vacuum-normalized single-mode matrix.
std::array<double, 3> dimensional_covariance(const Cov2& V, double mass, double omega_m);

// Two same-frequency modes through a balanced beam splitter. Inputs must
// already share the normalization reference omega_ref.
Cov4 combine_modes(const Cov2& plus, const Cov2& minus, double omega_ref);

EntanglementReport entanglement_from_matrix(const Cov4& V);

// Same quantity from the filter coefficients alone, no matrix assembly.
double epsilon_cr_closed_form(const FilterCoefficients& plus, double Q_plus,
                              const FilterCoefficients& minus, double Q_minus);

SqueezeEigs squeeze_eigenvalues(const Cov2& V);
SqueezeAngle squeezing_angle(const Cov2& V);

double purity(const Cov2& V);   // 1/sqrt(det V), vacuum-normalized input
double purity4(const Cov4& V);  // 1/sqrt(det V), two-mode

WignerEllipse wigner_ellipse(const Cov2& V, int n_points = 256);

// Throws NonPhysicalState unless V is positive with det V >= 1 - tol.
void require_physical(const Cov2& V, double tol = 1e-9);

}  // namespace mirrorcov
