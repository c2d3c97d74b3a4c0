#pragma once

#include <string>
#include <vector>

#include "mirrorcov/gaussian.hpp"
#include "mirrorcov/model.hpp"

namespace mirrorcov {

enum class SweepParam { Gamma, DeltaMinus, Zeta };
enum class AxisScale { Linear, Log };

const char* to_string(SweepParam p);

struct SweepAxis {
  SweepParam param = SweepParam::Gamma;
  double min = 0;
  double max = 0;
  int n = 2;
  AxisScale scale = AxisScale::Linear;

  std::vector<double> values() const;  // throws DomainError on bad ranges
};

struct SweepSpec {
  PhysicalParams base;
  MeasurementChannel channel = MeasurementChannel::AmplitudeX;
  std::vector<SweepAxis> axes;                 // 1 or 2
  std::vector<std::string> outputs;            // empty = all cell fields
};

enum class CellStatus {
  Ok,
  ZeroMeasurementRate,
  NonPositiveFrequency,
  ConditionalInstability,
  NonPhysicalState,
  NumericalFailure,
};

const char* to_string(CellStatus s);

// Everything one grid point produces. Failed cells keep their axis values
// and status; numeric fields are NaN.
struct CellRecord {
  double axis1 = 0;
  double axis2 = 0;
  CellStatus status = CellStatus::Ok;
  std::string detail;  // failure message when status != Ok

  double Cq_minus = 0;
  double omega_m_plus = 0, omega_m_minus = 0;
  double Q_plus = 0, Q_minus = 0;
  double C_plus = 0, C_minus = 0;
  double nth_plus = 0, nth_minus = 0;
  double lambda_p_plus = 0, lambda_p_minus = 0;
  double Lambda_p_plus = 0, Lambda_p_minus = 0;
  double nbar_p_plus = 0, nbar_p_minus = 0;
  double gamma_p_plus = 0, gamma_p_minus = 0;
  double V11_plus = 0, V12_plus = 0, V22_plus = 0;
  double V11_minus = 0, V12_minus = 0, V22_minus = 0;
  double E_min_plus = 0, E_max_plus = 0;
  double E_min_minus = 0, E_max_minus = 0;
  double theta_plus = 0, theta_minus = 0;
  double angle_diff = 0;
  double purity_plus = 0, purity_minus = 0;
  double epsilon_cr = 0;
  double E_N = 0;
  double nu_tilde2 = 0;
  double epsilon_cr_closed = 0;
};

// Fixed emission order of the per-cell scalar fields.
const std::vector<std::string>& cell_field_names();
double cell_field(const CellRecord& c, const std::string& name);

struct GridResult {
  SweepSpec spec;
  std::vector<double> axis1;
  std::vector<double> axis2;            // {0} placeholder for 1-D sweeps
  std::vector<CellRecord> cells;        // row-major, axis1 outer
  std::string channel;
  std::string version;
};

// Full single-point evaluation used by cells, `point`, and `ellipse`.
struct PointResult {
  ModeSpec plus, minus;
  FilterCoefficients fc_plus, fc_minus;
  Cov2 V_plus, V_minus;                 // own-frequency vacuum normalization
  SqueezeEigs eigs_plus, eigs_minus;
  SqueezeAngle ang_plus, ang_minus;
  double purity_plus = 0, purity_minus = 0;
  double omega_ref = 0;                 // geometric mean, entanglement reference
  EntanglementReport ent;
  double epsilon_cr_closed = 0;
};

PointResult evaluate_point(const PhysicalParams& base, MeasurementChannel channel);

PhysicalParams apply_axis(PhysicalParams base, SweepParam param, double value);

CellRecord evaluate_cell(const PhysicalParams& base, MeasurementChannel channel,
                         const std::vector<SweepAxis>& axes, double a1, double a2);

GridResult run_sweep(const SweepSpec& spec, int jobs = 1);

// One threshold record per axis2 column: the axis1 crossing of `field`
// through `level`, bisection-refined between the bracketing grid cells to
// 1% in axis1. Columns without a sign change report found = false.
struct ThresholdRecord {
  double axis2 = 0;
  bool found = false;
  double axis1_lo = 0, axis1_hi = 0;    // final bracket
  double axis1_cross = 0;
  double Cq_minus_cross = 0;
  double field_lo = 0, field_hi = 0;    // field values at the original bracket
};

std::vector<ThresholdRecord> threshold_scan(const GridResult& grid, const std::string& field,
                                            double level);

}  // namespace mirrorcov
