#include "mirrorcov/io/output.hpp"

#include <cstdio>
#include <fstream>

#include "mirrorcov/constants.hpp"

namespace mirrorcov::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string axis_column_name(SweepParam p) {
  switch (p) {
    case SweepParam::Gamma: return "Gamma_Hz";
    case SweepParam::DeltaMinus: return "delta_minus";
    case SweepParam::Zeta: return "zeta";
  }
  return "axis";
}

double axis_output_value(SweepParam p, double stored) {
  return p == SweepParam::Gamma ? stored / kTwoPi : stored;
}

namespace {

const std::vector<std::string>& grid_fields(const GridResult& grid) {
  return grid.spec.outputs.empty() ? cell_field_names() : grid.spec.outputs;
}

}  // namespace

std::string grid_csv(const GridResult& grid, bool coop_leading) {
  const auto& axes = grid.spec.axes;
  const bool two_d = axes.size() == 2;
  const auto& fields = grid_fields(grid);
  std::string out;
  if (coop_leading) out += "Cq_minus";
  else out += axis_column_name(axes[0].param);
  if (two_d) out += "," + axis_column_name(axes[1].param);
  out += ",status";
  for (const auto& name : fields) out += "," + name;
  out += "\n";
  for (const auto& c : grid.cells) {
    if (coop_leading) out += format_double(c.Cq_minus);
    else out += format_double(axis_output_value(axes[0].param, c.axis1));
    if (two_d) out += "," + format_double(axis_output_value(axes[1].param, c.axis2));
    out += ",";
    out += to_string(c.status);
    for (const auto& name : fields) out += "," + format_double(cell_field(c, name));
    out += "\n";
  }
  return out;
}

std::string thresholds_csv(const GridResult& grid, const std::vector<ThresholdRecord>& recs) {
  const auto& axes = grid.spec.axes;
  const SweepParam p1 = axes[0].param;
  const std::string a1 = axis_column_name(p1);
  const std::string a2 = axes.size() == 2 ? axis_column_name(axes[1].param) : "axis2";
  std::string out = a2 + ",found," + a1 + "_lo," + a1 + "_hi," + a1 +
                    "_cross,Cq_minus_cross,field_lo,field_hi\n";
  for (const auto& r : recs) {
    out += format_double(r.axis2);
    out += r.found ? ",1" : ",0";
    out += "," + format_double(axis_output_value(p1, r.axis1_lo));
    out += "," + format_double(axis_output_value(p1, r.axis1_hi));
    out += "," + format_double(axis_output_value(p1, r.axis1_cross));
    out += "," + format_double(r.Cq_minus_cross);
    out += "," + format_double(r.field_lo);
    out += "," + format_double(r.field_hi);
    out += "\n";
  }
  return out;
}

namespace {

void point_rows(std::string& out, const PointResult& pt) {
  auto row = [&](const char* key, double v) {
    out += key;
    out += ",";
    out += format_double(v);
    out += "\n";
  };
  auto mode_rows = [&](const char* suffix, const ModeSpec& m, const FilterCoefficients& fc,
                       const Cov2& V, const SqueezeEigs& e, const SqueezeAngle& a,
                       double pur) {
    auto key = [&](const char* base) { return std::string(base) + suffix; };
    row(key("omega_m").c_str(), m.omega_m);
    row(key("Q").c_str(), m.Q);
    row(key("C").c_str(), m.C);
    row(key("n_th").c_str(), m.n_th);
    row(key("g_m").c_str(), m.g_m);
    row(key("Cq").c_str(), m.quantum_cooperativity());
    row(key("lambda_p").c_str(), fc.lambda_p);
    row(key("Lambda_p").c_str(), fc.Lambda_p);
    row(key("nbar_p").c_str(), fc.nbar_p);
    row(key("gamma_p").c_str(), fc.gamma_p);
    row(key("V11").c_str(), V.v11);
    row(key("V12").c_str(), V.v12);
    row(key("V22").c_str(), V.v22);
    row(key("E_min").c_str(), e.e_min);
    row(key("E_max").c_str(), e.e_max);
    row(key("theta").c_str(), a.theta);
    row(key("purity").c_str(), pur);
  };
  mode_rows("_plus", pt.plus, pt.fc_plus, pt.V_plus, pt.eigs_plus, pt.ang_plus,
            pt.purity_plus);
  mode_rows("_minus", pt.minus, pt.fc_minus, pt.V_minus, pt.eigs_minus, pt.ang_minus,
            pt.purity_minus);
  row("omega_ref", pt.omega_ref);
  row("epsilon_cr", pt.ent.epsilon_cr);
  row("E_N", pt.ent.E_N);
  row("nu_tilde2", pt.ent.nu_tilde2);
  row("epsilon_cr_closed", pt.epsilon_cr_closed);
}

}  // namespace

std::string point_csv(const PointResult& pt) {
  std::string out = "quantity,value\n";
  point_rows(out, pt);
  return out;
}

std::string ellipse_csv(const std::vector<std::pair<std::string, WignerEllipse>>& contours) {
  std::string out = "contour,index,q,p\n";
  for (const auto& [name, e] : contours) {
    for (size_t i = 0; i < e.points.size(); ++i) {
      out += name;
      out += "," + std::to_string(i);
      out += "," + format_double(e.points[i][0]);
      out += "," + format_double(e.points[i][1]);
      out += "\n";
    }
  }
  return out;
}

std::string ensemble_csv(const EnsembleResult& r) {
  std::string out = "quantity,value\n";
  auto row = [&](const char* key, double v) {
    out += key;
    out += ",";
    out += format_double(v);
    out += "\n";
  };
  row("empirical_V11", r.moments.second.v11);
  row("empirical_V12", r.moments.second.v12);
  row("empirical_V22", r.moments.second.v22);
  row("se_V11", r.moments.second_se.v11);
  row("se_V12", r.moments.second_se.v12);
  row("se_V22", r.moments.second_se.v22);
  row("mean_q", r.moments.mean_q);
  row("mean_p", r.moments.mean_p);
  row("se_mean_q", r.moments.mean_q_se);
  row("se_mean_p", r.moments.mean_p_se);
  row("analytic_V11", r.analytic.v11);
  row("analytic_V12", r.analytic.v12);
  row("analytic_V22", r.analytic.v22);
  row("n_traj", static_cast<double>(r.n_traj));
  row("dt", r.dt);
  row("steps_burn", static_cast<double>(r.steps_burn));
  row("steps_collect", static_cast<double>(r.steps_collect));
  row("seed", static_cast<double>(r.seed));
  return out;
}

nlohmann::json config_json(const Config& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [section, kv] : cfg.sections) {
    nlohmann::json s = nlohmann::json::object();
    for (const auto& [k, v] : kv) s[k] = v;
    j[section] = s;
  }
  return j;
}

namespace {

nlohmann::json metadata_json(const Config& effective, const std::string& channel,
                             const std::string& version) {
  nlohmann::json m;
  m["version"] = version;
  m["channel"] = channel;
  m["config"] = config_json(effective);
  return m;
}

}  // namespace

nlohmann::json grid_json(const GridResult& grid, const Config& effective) {
  nlohmann::json j;
  j["metadata"] = metadata_json(effective, grid.channel, grid.version);
  const auto& axes = grid.spec.axes;
  nlohmann::json ax = nlohmann::json::array();
  for (size_t k = 0; k < axes.size(); ++k) {
    nlohmann::json a;
    a["param"] = axis_column_name(axes[k].param);
    const auto& vals = k == 0 ? grid.axis1 : grid.axis2;
    nlohmann::json v = nlohmann::json::array();
    for (double x : vals) v.push_back(axis_output_value(axes[k].param, x));
    a["values"] = v;
    ax.push_back(a);
  }
  j["axes"] = ax;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : grid.cells) {
    nlohmann::json cell;
    cell[axis_column_name(axes[0].param)] = axis_output_value(axes[0].param, c.axis1);
    if (axes.size() == 2)
      cell[axis_column_name(axes[1].param)] = axis_output_value(axes[1].param, c.axis2);
    cell["status"] = to_string(c.status);
    if (!c.detail.empty()) cell["detail"] = c.detail;
    for (const auto& name : grid_fields(grid)) cell[name] = cell_field(c, name);
    cells.push_back(cell);
  }
  j["cells"] = cells;
  return j;
}

nlohmann::json point_json(const PointResult& pt, const Config& effective,
                          const std::string& channel) {
  nlohmann::json j;
  j["metadata"] = metadata_json(effective, channel, "1.0.0");
  auto mode = [&](const ModeSpec& m, const FilterCoefficients& fc, const Cov2& V,
                  const SqueezeEigs& e, const SqueezeAngle& a, double pur) {
    nlohmann::json o;
    o["omega_m"] = m.omega_m;
    o["Q"] = m.Q;
    o["C"] = m.C;
    o["n_th"] = m.n_th;
    o["g_m"] = m.g_m;
    o["Cq"] = m.quantum_cooperativity();
    o["lambda_p"] = fc.lambda_p;
    o["Lambda_p"] = fc.Lambda_p;
    o["nbar_p"] = fc.nbar_p;
    o["gamma_p"] = fc.gamma_p;
    o["V"] = {V.v11, V.v12, V.v22};
    o["E_min"] = e.e_min;
    o["E_max"] = e.e_max;
    o["theta"] = a.theta;
    o["purity"] = pur;
    return o;
  };
  j["plus"] = mode(pt.plus, pt.fc_plus, pt.V_plus, pt.eigs_plus, pt.ang_plus, pt.purity_plus);
  j["minus"] =
      mode(pt.minus, pt.fc_minus, pt.V_minus, pt.eigs_minus, pt.ang_minus, pt.purity_minus);
  j["omega_ref"] = pt.omega_ref;
  j["epsilon_cr"] = pt.ent.epsilon_cr;
  j["E_N"] = pt.ent.E_N;
  j["nu_tilde2"] = pt.ent.nu_tilde2;
  j["epsilon_cr_closed"] = pt.epsilon_cr_closed;
  return j;
}

nlohmann::json ellipse_json(const std::vector<std::pair<std::string, WignerEllipse>>& contours,
                            const Config& effective, const std::string& channel,
                            const std::string& norm) {
  nlohmann::json j;
  j["metadata"] = metadata_json(effective, channel, "1.0.0");
  j["metadata"]["norm"] = norm;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& [name, e] : contours) {
    nlohmann::json c;
    c["name"] = name;
    c["semi_minor"] = e.semi_minor;
    c["semi_major"] = e.semi_major;
    c["angle"] = e.angle;
    c["degenerate"] = e.degenerate;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : e.points) pts.push_back({p[0], p[1]});
    c["points"] = pts;
    cs.push_back(c);
  }
  j["contours"] = cs;
  return j;
}

nlohmann::json ensemble_json(const EnsembleResult& r, const Config& effective,
                             const std::string& channel) {
  nlohmann::json j;
  j["metadata"] = metadata_json(effective, channel, "1.0.0");
  j["metadata"]["seed"] = r.seed;
  j["metadata"]["kernel"] = r.kernel;
  j["metadata"]["noise_algorithm"] = r.noise_algorithm;
  j["empirical"] = {r.moments.second.v11, r.moments.second.v12, r.moments.second.v22};
  j["standard_error"] = {r.moments.second_se.v11, r.moments.second_se.v12,
                         r.moments.second_se.v22};
  j["mean"] = {r.moments.mean_q, r.moments.mean_p};
  j["mean_standard_error"] = {r.moments.mean_q_se, r.moments.mean_p_se};
  j["analytic"] = {r.analytic.v11, r.analytic.v12, r.analytic.v22};
  j["n_traj"] = r.n_traj;
  j["dt"] = r.dt;
  j["steps_burn"] = r.steps_burn;
  j["steps_collect"] = r.steps_collect;
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open output file: " + path);
  f << text;
  if (!f) throw IoError("failed writing output file: " + path);
}

}  // namespace mirrorcov::io
