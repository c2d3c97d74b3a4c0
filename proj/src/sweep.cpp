#include "mirrorcov/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace mirrorcov {

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::Gamma: return "Gamma";
    case SweepParam::DeltaMinus: return "delta_minus";
    default: return "zeta";
  }
}

const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::Ok: return "ok";
    case CellStatus::ZeroMeasurementRate: return "zero_measurement_rate";
    case CellStatus::NonPositiveFrequency: return "non_positive_frequency";
    case CellStatus::ConditionalInstability: return "conditional_instability";
    case CellStatus::NonPhysicalState: return "non_physical_state";
    default: return "numerical_failure";
  }
}

std::vector<double> SweepAxis::values() const {
  if (n < 2) throw DomainError("sweep axis needs at least 2 points");
  if (!(min < max)) throw DomainError("sweep axis needs min < max");
  std::vector<double> v(static_cast<size_t>(n));
  if (scale == AxisScale::Log) {
    if (!(min > 0)) throw DomainError("log axis needs positive bounds");
    double l0 = std::log(min), l1 = std::log(max);
    for (int i = 0; i < n; ++i) v[i] = std::exp(l0 + (l1 - l0) * i / (n - 1));
  } else {
    for (int i = 0; i < n; ++i) v[i] = min + (max - min) * i / (n - 1);
  }
  return v;
}

PhysicalParams apply_axis(PhysicalParams base, SweepParam param, double value) {
  switch (param) {
    case SweepParam::Gamma: base.Gamma = value; break;
    case SweepParam::DeltaMinus: base.delta_minus = value; break;
    case SweepParam::Zeta: base.zeta = value; break;
  }
  return base;
}

PointResult evaluate_point(const PhysicalParams& base, MeasurementChannel channel) {
  PointResult r;
  r.plus = mode_quantities(base, ModeLabel::Common);
  r.minus = mode_quantities(base, ModeLabel::Differential);
  r.fc_plus = filter_coefficients(r.plus, channel);
  r.fc_minus = filter_coefficients(r.minus, channel);
  r.V_plus = steady_state_analytic(r.fc_plus, r.plus.Q);
  r.V_minus = steady_state_analytic(r.fc_minus, r.minus.Q);
  require_physical(r.V_plus);
  require_physical(r.V_minus);
  r.eigs_plus = squeeze_eigenvalues(r.V_plus);
  r.eigs_minus = squeeze_eigenvalues(r.V_minus);
  r.ang_plus = squeezing_angle(r.V_plus);
  r.ang_minus = squeezing_angle(r.V_minus);
  r.purity_plus = purity(r.V_plus);
  r.purity_minus = purity(r.V_minus);
  r.omega_ref = std::sqrt(r.plus.omega_m * r.minus.omega_m);
  Cov2 vp = renormalize_covariance(r.V_plus, r.plus.omega_m, r.omega_ref);
  Cov2 vm = renormalize_covariance(r.V_minus, r.minus.omega_m, r.omega_ref);
  r.ent = entanglement_from_matrix(combine_modes(vp, vm, r.omega_ref));
  r.epsilon_cr_closed =
      epsilon_cr_closed_form(r.fc_plus, r.plus.Q, r.fc_minus, r.minus.Q);
  return r;
}

namespace {

void mark_failure(CellRecord& c, CellStatus status, const std::string& what) {
  c.status = status;
  c.detail = what;
  double nan = std::numeric_limits<double>::quiet_NaN();
  c.Cq_minus = c.omega_m_plus = c.omega_m_minus = nan;
  c.Q_plus = c.Q_minus = c.C_plus = c.C_minus = nan;
  c.nth_plus = c.nth_minus = nan;
  c.lambda_p_plus = c.lambda_p_minus = c.Lambda_p_plus = c.Lambda_p_minus = nan;
  c.nbar_p_plus = c.nbar_p_minus = c.gamma_p_plus = c.gamma_p_minus = nan;
  c.V11_plus = c.V12_plus = c.V22_plus = nan;
  c.V11_minus = c.V12_minus = c.V22_minus = nan;
  c.E_min_plus = c.E_max_plus = c.E_min_minus = c.E_max_minus = nan;
  c.theta_plus = c.theta_minus = c.angle_diff = nan;
  c.purity_plus = c.purity_minus = nan;
  c.epsilon_cr = c.E_N = c.nu_tilde2 = c.epsilon_cr_closed = nan;
}

}  // namespace

CellRecord evaluate_cell(const PhysicalParams& base, MeasurementChannel channel,
                         const std::vector<SweepAxis>& axes, double a1, double a2) {
  CellRecord c;
  c.axis1 = a1;
  c.axis2 = a2;
  PhysicalParams p = base;
  if (!axes.empty()) p = apply_axis(p, axes[0].param, a1);
  if (axes.size() > 1) p = apply_axis(p, axes[1].param, a2);
  try {
    PointResult r = evaluate_point(p, channel);
    c.Cq_minus = r.minus.quantum_cooperativity();
    c.omega_m_plus = r.plus.omega_m;
    c.omega_m_minus = r.minus.omega_m;
    c.Q_plus = r.plus.Q;
    c.Q_minus = r.minus.Q;
    c.C_plus = r.plus.C;
    c.C_minus = r.minus.C;
    c.nth_plus = r.plus.n_th;
    c.nth_minus = r.minus.n_th;
    c.lambda_p_plus = r.fc_plus.lambda_p;
    c.lambda_p_minus = r.fc_minus.lambda_p;
    c.Lambda_p_plus = r.fc_plus.Lambda_p;
    c.Lambda_p_minus = r.fc_minus.Lambda_p;
    c.nbar_p_plus = r.fc_plus.nbar_p;
    c.nbar_p_minus = r.fc_minus.nbar_p;
    c.gamma_p_plus = r.fc_plus.gamma_p;
    c.gamma_p_minus = r.fc_minus.gamma_p;
    c.V11_plus = r.V_plus.v11;
    c.V12_plus = r.V_plus.v12;
    c.V22_plus = r.V_plus.v22;
    c.V11_minus = r.V_minus.v11;
    c.V12_minus = r.V_minus.v12;
    c.V22_minus = r.V_minus.v22;
    c.E_min_plus = r.eigs_plus.e_min;
    c.E_max_plus = r.eigs_plus.e_max;
    c.E_min_minus = r.eigs_minus.e_min;
    c.E_max_minus = r.eigs_minus.e_max;
    c.theta_plus = r.ang_plus.theta;
    c.theta_minus = r.ang_minus.theta;
    c.angle_diff = std::abs(r.ang_plus.theta - r.ang_minus.theta);
    c.purity_plus = r.purity_plus;
    c.purity_minus = r.purity_minus;
    c.epsilon_cr = r.ent.epsilon_cr;
    c.E_N = r.ent.E_N;
    c.nu_tilde2 = r.ent.nu_tilde2;
    c.epsilon_cr_closed = r.epsilon_cr_closed;
  } catch (const ZeroMeasurementRate& e) {
    mark_failure(c, CellStatus::ZeroMeasurementRate, e.what());
  } catch (const NonPositiveFrequency& e) {
    mark_failure(c, CellStatus::NonPositiveFrequency, e.what());
  } catch (const ConditionalInstability& e) {
    mark_failure(c, CellStatus::ConditionalInstability, e.what());
  } catch (const NonPhysicalState& e) {
    mark_failure(c, CellStatus::NonPhysicalState, e.what());
  } catch (const std::exception& e) {
    mark_failure(c, CellStatus::NumericalFailure, e.what());
  }
  return c;
}

GridResult run_sweep(const SweepSpec& spec, int jobs) {
  if (spec.axes.empty() || spec.axes.size() > 2)
    throw DomainError("sweep needs 1 or 2 axes");
  spec.base.validate();

  GridResult g;
  g.spec = spec;
  g.axis1 = spec.axes[0].values();
  g.axis2 = spec.axes.size() > 1 ? spec.axes[1].values() : std::vector<double>{0.0};
  g.channel = to_string(spec.channel);
  g.version = "1.0.0";

  size_t n1 = g.axis1.size(), n2 = g.axis2.size();
  g.cells.resize(n1 * n2);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t k = next.fetch_add(1);
      if (k >= n1 * n2) break;
      size_t i = k / n2, j = k % n2;
      g.cells[k] = evaluate_cell(spec.base, spec.channel, spec.axes, g.axis1[i], g.axis2[j]);
    }
  };
  int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n1 * n2)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return g;
}

const std::vector<std::string>& cell_field_names() {
  static const std::vector<std::string> names = {
      "Cq_minus", "omega_m_plus", "omega_m_minus", "Q_plus", "Q_minus", "C_plus",
      "C_minus", "nth_plus", "nth_minus", "lambda_p_plus", "lambda_p_minus",
      "Lambda_p_plus", "Lambda_p_minus", "nbar_p_plus", "nbar_p_minus",
      "gamma_p_plus", "gamma_p_minus", "V11_plus", "V12_plus", "V22_plus",
      "V11_minus", "V12_minus", "V22_minus", "E_min_plus", "E_max_plus",
      "E_min_minus", "E_max_minus", "theta_plus", "theta_minus", "angle_diff",
      "purity_plus", "purity_minus", "epsilon_cr", "E_N", "nu_tilde2",
      "epsilon_cr_closed"};
  return names;
}

double cell_field(const CellRecord& c, const std::string& name) {
  static const std::map<std::string, double CellRecord::*> fields = {
      {"Cq_minus", &CellRecord::Cq_minus},
      {"omega_m_plus", &CellRecord::omega_m_plus},
      {"omega_m_minus", &CellRecord::omega_m_minus},
      {"Q_plus", &CellRecord::Q_plus},
      {"Q_minus", &CellRecord::Q_minus},
      {"C_plus", &CellRecord::C_plus},
      {"C_minus", &CellRecord::C_minus},
      {"nth_plus", &CellRecord::nth_plus},
      {"nth_minus", &CellRecord::nth_minus},
      {"lambda_p_plus", &CellRecord::lambda_p_plus},
      {"lambda_p_minus", &CellRecord::lambda_p_minus},
      {"Lambda_p_plus", &CellRecord::Lambda_p_plus},
      {"Lambda_p_minus", &CellRecord::Lambda_p_minus},
      {"nbar_p_plus", &CellRecord::nbar_p_plus},
      {"nbar_p_minus", &CellRecord::nbar_p_minus},
      {"gamma_p_plus", &CellRecord::gamma_p_plus},
      {"gamma_p_minus", &CellRecord::gamma_p_minus},
      {"V11_plus", &CellRecord::V11_plus},
      {"V12_plus", &CellRecord::V12_plus},
      {"V22_plus", &CellRecord::V22_plus},
      {"V11_minus", &CellRecord::V11_minus},
      {"V12_minus", &CellRecord::V12_minus},
      {"V22_minus", &CellRecord::V22_minus},
      {"E_min_plus", &CellRecord::E_min_plus},
      {"E_max_plus", &CellRecord::E_max_plus},
      {"E_min_minus", &CellRecord::E_min_minus},
      {"E_max_minus", &CellRecord::E_max_minus},
      {"theta_plus", &CellRecord::theta_plus},
      {"theta_minus", &CellRecord::theta_minus},
      {"angle_diff", &CellRecord::angle_diff},
      {"purity_plus", &CellRecord::purity_plus},
      {"purity_minus", &CellRecord::purity_minus},
      {"epsilon_cr", &CellRecord::epsilon_cr},
      {"E_N", &CellRecord::E_N},
      {"nu_tilde2", &CellRecord::nu_tilde2},
      {"epsilon_cr_closed", &CellRecord::epsilon_cr_closed},
  };
  auto it = fields.find(name);
  if (it == fields.end()) throw DomainError("unknown cell field: " + name);
  return c.*(it->second);
}

std::vector<ThresholdRecord> threshold_scan(const GridResult& grid, const std::string& field,
                                            double level) {
  if (grid.axis2.size() < 1 || grid.axis1.size() < 2)
    throw DomainError("threshold scan needs a grid with at least 2 axis1 points");
  const SweepAxis& ax1 = grid.spec.axes[0];
  bool log_axis = ax1.scale == AxisScale::Log;

  std::vector<ThresholdRecord> out;
  size_t n2 = grid.axis2.size();
  for (size_t j = 0; j < n2; ++j) {
    ThresholdRecord rec;
    rec.axis2 = grid.axis2[j];
    for (size_t i = 0; i + 1 < grid.axis1.size(); ++i) {
      const CellRecord& a = grid.cells[i * n2 + j];
      const CellRecord& b = grid.cells[(i + 1) * n2 + j];
      if (a.status != CellStatus::Ok || b.status != CellStatus::Ok) continue;
      double fa = cell_field(a, field) - level;
      double fb = cell_field(b, field) - level;
      if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
      if (fa == 0) {
        rec.found = true;
        rec.axis1_lo = rec.axis1_hi = rec.axis1_cross = a.axis1;
        rec.field_lo = rec.field_hi = fa + level;
        rec.Cq_minus_cross = a.Cq_minus;
        break;
      }
      if (fa * fb < 0) {
        double lo = a.axis1, hi = b.axis1;
        rec.field_lo = fa + level;
        rec.field_hi = fb + level;
        double flo = fa;
        // bisection to 1% relative width in axis1
        CellRecord last = a;
        while ((hi - lo) > 0.01 * std::min(std::abs(lo), std::abs(hi))) {
          double mid = log_axis ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
          CellRecord m = evaluate_cell(grid.spec.base, grid.spec.channel, grid.spec.axes,
                                       mid, rec.axis2);
          if (m.status != CellStatus::Ok) break;
          last = m;
          double fm = cell_field(m, field) - level;
          if (fm == 0) { lo = hi = mid; break; }
          if (flo * fm < 0) {
            hi = mid;
          } else {
            lo = mid;
            flo = fm;
          }
        }
        rec.found = true;
        rec.axis1_lo = lo;
        rec.axis1_hi = hi;
        rec.axis1_cross = log_axis ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        CellRecord cross = evaluate_cell(grid.spec.base, grid.spec.channel, grid.spec.axes,
                                         rec.axis1_cross, rec.axis2);
        rec.Cq_minus_cross =
            cross.status == CellStatus::Ok ? cross.Cq_minus : last.Cq_minus;
        break;
      }
    }
    out.push_back(rec);
  }
  return out;
}

}  // namespace mirrorcov
