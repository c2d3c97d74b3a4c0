#include "mirrorcov/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mirrorcov/constants.hpp"
#include "mirrorcov/io/config.hpp"
#include "mirrorcov/io/output.hpp"
#include "mirrorcov/montecarlo.hpp"
#include "mirrorcov/sweep.hpp"

namespace mirrorcov {

namespace {

using io::Config;

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> sets;
  std::string channel;
  std::string format = "csv";
  std::string out;
  int jobs = 0;
  long long seed = -1;
  std::string preset = "black";
  std::string norm = "own";
  int points = 256;
  std::string threshold_field;
  double threshold_level = 0;
  bool dump = false;
};

void add_common(CLI::App* sub, CommonOpts& o) {
  sub->add_option("--config", o.config_path, "configuration file (key = value sections)");
  sub->add_option("--set", o.sets, "override one entry, section.key=value")
      ->type_name("KEY=VALUE");
  sub->add_option("--channel", o.channel, "homodyne channel, x or y")
      ->check(CLI::IsMember({"x", "y"}));
  sub->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "output path (stem for multi-file commands)");
  sub->add_option("--jobs", o.jobs, "worker threads (default: MIRRORCOV_JOBS or all cores)");
  sub->add_option("--preset", o.preset, "named parameter preset; black is the base point");
  sub->add_flag("--dump-config", o.dump, "print the effective configuration and exit");
}

// Flags fold into the configuration text so that re-running the dumped
// config (without the flags) reproduces the same bytes.
Config effective_config(const CommonOpts& o) {
  Config cfg = io::default_config();
  if (!o.config_path.empty()) io::merge(cfg, io::parse_config_file(o.config_path));
  for (const auto& s : o.sets) io::apply_override(cfg, s);
  if (!o.channel.empty()) cfg.sections["sweep"]["channel"] = o.channel;
  if (o.seed >= 0) cfg.sections["montecarlo"]["seed"] = std::to_string(o.seed);
  io::fold_preset(cfg, o.preset);
  io::validate_keys(cfg);
  return cfg;
}

MeasurementChannel channel_from(const Config& cfg) {
  const std::string& ch = cfg.get("sweep", "channel");
  if (ch == "x") return MeasurementChannel::AmplitudeX;
  if (ch == "y") return MeasurementChannel::PhaseY;
  throw ConfigError("channel must be x or y, got '" + ch + "'");
}

int resolve_jobs(int flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("MIRRORCOV_JOBS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void emit(const CommonOpts& o, const std::string& text) {
  if (o.out.empty()) std::cout << text;
  else io::write_text_file(o.out, text);
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// ---------------------------------------------------------------- derive

void derive_machine(const CommonOpts& o, const Config& cfg, const PhysicalParams& p,
                    const ModeSpec& plus, const ModeSpec& minus,
                    const FilterCoefficients& fp, const FilterCoefficients& fm) {
  auto rows = [&](auto&& add) {
    add("g_Hz", p.coupling() / kTwoPi);
    auto mode = [&](const char* sfx, const ModeSpec& m, const FilterCoefficients& f) {
      auto key = [&](const char* b) { return std::string(b) + sfx; };
      add(key("omega_m_Hz"), m.omega_m / kTwoPi);
      add(key("Q"), m.Q);
      add(key("C"), m.C);
      add(key("n_th"), m.n_th);
      add(key("g_m_Hz"), m.g_m / kTwoPi);
      add(key("Cq"), m.quantum_cooperativity());
      add(key("lambda_p"), f.lambda_p);
      add(key("Lambda_p"), f.Lambda_p);
      add(key("nbar_p"), f.nbar_p);
      add(key("gamma_p"), f.gamma_p);
    };
    mode("_plus", plus, fp);
    mode("_minus", minus, fm);
  };
  if (o.format == "json") {
    nlohmann::json j;
    j["metadata"]["version"] = "1.0.0";
    j["metadata"]["channel"] = cfg.get("sweep", "channel");
    j["metadata"]["config"] = io::config_json(cfg);
    rows([&](const std::string& k, double v) { j["derived"][k] = v; });
    emit(o, json_text(j));
  } else {
    std::string text = "quantity,value\n";
    rows([&](const std::string& k, double v) {
      text += k + "," + io::format_double(v) + "\n";
    });
    emit(o, text);
  }
}

int cmd_derive(const CommonOpts& o) {
  Config cfg = effective_config(o);
  if (o.dump) {
    std::cout << io::dump_config(cfg);
    return 0;
  }
  PhysicalParams p = io::physical_from_config(cfg);
  MeasurementChannel ch = channel_from(cfg);
  ModeSpec plus = mode_quantities(p, ModeLabel::Common);
  ModeSpec minus = mode_quantities(p, ModeLabel::Differential);
  FilterCoefficients fp = filter_coefficients(plus, ch);
  FilterCoefficients fm = filter_coefficients(minus, ch);

  auto line = [](const char* name, const std::string& a, const std::string& b) {
    std::printf("  %-22s %-18s %s\n", name, a.c_str(), b.c_str());
  };
  std::printf("inputs\n");
  line("mass [kg]", num(p.mass), "");
  line("Omega/2pi [Hz]", num(p.Omega / kTwoPi), "");
  line("Gamma/2pi [Hz]", num(p.Gamma / kTwoPi), "");
  line("temperature [K]", num(p.temperature), "");
  line("gamma_m/2pi [Hz]", num(p.gamma_m / kTwoPi), "");
  line("kappa_minus/2pi [Hz]", num(p.kappa_minus / kTwoPi), "");
  line("zeta", num(p.zeta), "");
  line("delta_minus", num(p.delta_minus), "");
  line("eta", num(p.eta), "");
  line("N_th", num(p.N_th), "");
  line("damping", to_string(p.damping), "");
  line("g/2pi [Hz]", num(p.coupling() / kTwoPi), p.g > 0 ? "(given)" : "(from abar)");
  std::printf("derived%17s %-18s %s\n", "", "common (+)", "differential (-)");
  line("omega_m/2pi [Hz]", num(plus.omega_m / kTwoPi), num(minus.omega_m / kTwoPi));
  line("Q", num(plus.Q), num(minus.Q));
  line("C", num(plus.C), num(minus.C));
  line("n_th", num(plus.n_th), num(minus.n_th));
  line("g_m/2pi [Hz]", num(plus.g_m / kTwoPi), num(minus.g_m / kTwoPi));
  line("Cq = C/n_th", num(plus.quantum_cooperativity()),
       num(minus.quantum_cooperativity()));
  std::printf("filter, channel %s%6s (rates in gamma_m units)\n",
              cfg.get("sweep", "channel").c_str(), "");
  line("lambda'", num(fp.lambda_p), num(fm.lambda_p));
  line("Lambda'", num(fp.Lambda_p), num(fm.Lambda_p));
  line("nbar'", num(fp.nbar_p), num(fm.nbar_p));
  line("gamma'", num(fp.gamma_p), num(fm.gamma_p));
  for (const auto* pair : {&fp, &fm}) {
    if (pair->lambda_p == 0)
      std::printf(
          "warning: ZeroMeasurementRate: channel %s carries no position "
          "information here (lambda' = 0); conditioning is inert\n",
          to_string(pair->channel));
  }
  if (!o.out.empty()) derive_machine(o, cfg, p, plus, minus, fp, fm);
  return 0;
}

// ----------------------------------------------------------------- point

int cmd_point(const CommonOpts& o) {
  Config cfg = effective_config(o);
  if (o.dump) {
    std::cout << io::dump_config(cfg);
    return 0;
  }
  PhysicalParams p = io::physical_from_config(cfg);
  MeasurementChannel ch = channel_from(cfg);
  PointResult pt = evaluate_point(p, ch);
  if (o.format == "json")
    emit(o, json_text(io::point_json(pt, cfg, cfg.get("sweep", "channel"))));
  else
    emit(o, io::point_csv(pt));
  return 0;
}

// ----------------------------------------------------------------- sweep

void emit_grid(const CommonOpts& o, const Config& cfg, const GridResult& grid,
               bool two_views) {
  if (o.format == "json") {
    std::string text = json_text(io::grid_json(grid, cfg));
    if (o.out.empty()) std::cout << text;
    else io::write_text_file(o.out + ".json", text);
    return;
  }
  if (o.out.empty()) {
    std::cout << io::grid_csv(grid);
    return;
  }
  io::write_text_file(o.out + ".csv", io::grid_csv(grid));
  if (two_views) io::write_text_file(o.out + ".coop.csv", io::grid_csv(grid, true));
}

int cmd_sweep(const CommonOpts& o, const std::vector<std::string>& outputs) {
  Config cfg = effective_config(o);
  if (o.dump) {
    std::cout << io::dump_config(cfg);
    return 0;
  }
  SweepSpec spec = io::sweep_from_config(cfg);
  spec.outputs = outputs;
  for (const auto& f : spec.outputs) cell_field(CellRecord{}, f);  // name check
  GridResult grid = run_sweep(spec, resolve_jobs(o.jobs));
  if (!o.threshold_field.empty()) {
    if (o.out.empty())
      throw ConfigError("--threshold-field needs --out to name the extra file");
    auto recs = threshold_scan(grid, o.threshold_field, o.threshold_level);
    io::write_text_file(o.out + ".thresholds.csv", io::thresholds_csv(grid, recs));
  }
  emit_grid(o, cfg, grid, false);
  return 0;
}

// ---------------------------------------------------------------- figure

int cmd_figure(const CommonOpts& o, const std::string& name) {
  struct FigureDef {
    const char* channel;
    bool zeta_axis;
    std::vector<std::string> outputs;
  };
  FigureDef def;
  if (name == "fig2") def = {"x", false, {"Cq_minus", "epsilon_cr", "E_N"}};
  else if (name == "fig3") def = {"x", false, {"Cq_minus", "E_min_plus", "E_min_minus"}};
  else if (name == "fig5") def = {"x", false, {"Cq_minus", "purity_plus", "purity_minus"}};
  else if (name == "fig6")
    def = {"x", false, {"Cq_minus", "angle_diff", "theta_plus", "theta_minus"}};
  else if (name == "fig7") def = {"y", false, {"Cq_minus", "epsilon_cr", "E_N"}};
  else if (name == "fig8") def = {"x", true, {"epsilon_cr", "E_N"}};
  else if (name == "fig9") def = {"x", true, {"purity_plus", "purity_minus", "E_N"}};
  else if (name == "fig4")
    throw ConfigError(
        "fig4 is the phase-space ellipse figure; use the ellipse command "
        "(see: mirrorcov ellipse --help)");
  else
    throw ConfigError("unknown figure '" + name +
                          "'; available: fig2 fig3 fig5 fig6 fig7 fig8 fig9");

  CommonOpts eff = o;
  eff.channel = def.channel;
  Config cfg = effective_config(eff);
  if (def.zeta_axis) {
    auto& sw = cfg.sections["sweep"];
    sw["axis1"] = "zeta";
    sw["axis1_min"] = "1";
    sw["axis1_max"] = "30";
    sw["axis1_n"] = "59";
    sw["axis1_scale"] = "linear";
    sw["axis2"] = "";
  }
  if (o.dump) {
    std::cout << io::dump_config(cfg);
    return 0;
  }
  if (o.out.empty()) throw ConfigError("figure needs --out to name its files");
  SweepSpec spec = io::sweep_from_config(cfg);
  spec.outputs = def.outputs;
  GridResult grid = run_sweep(spec, resolve_jobs(o.jobs));
  emit_grid(eff, cfg, grid, !def.zeta_axis && o.format == "csv");
  return 0;
}

// --------------------------------------------------------------- ellipse

int cmd_ellipse(const CommonOpts& o) {
  Config cfg = effective_config(o);
  if (o.dump) {
    std::cout << io::dump_config(cfg);
    return 0;
  }
  PhysicalParams p = io::physical_from_config(cfg);
  MeasurementChannel ch = channel_from(cfg);
  PointResult pt = evaluate_point(p, ch);
  Cov2 vp = pt.V_plus;
  Cov2 vm = pt.V_minus;
  if (o.norm == "mean") {
    double wref = 0.5 * (pt.plus.omega_m + pt.minus.omega_m);
    vp = renormalize_covariance(vp, pt.plus.omega_m, wref);
    vm = renormalize_covariance(vm, pt.minus.omega_m, wref);
  }
  std::vector<std::pair<std::string, WignerEllipse>> contours;
  contours.emplace_back("common", wigner_ellipse(vp, o.points));
  contours.emplace_back("differential", wigner_ellipse(vm, o.points));
  contours.emplace_back("ground", wigner_ellipse(Cov2{1.0, 0.0, 1.0}, o.points));
  if (o.format == "json")
    emit(o, json_text(io::ellipse_json(contours, cfg, cfg.get("sweep", "channel"), o.norm)));
  else
    emit(o, io::ellipse_csv(contours));
  return 0;
}

// -------------------------------------------------------------- validate

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RandomSet {
  double Q, C, n_th, delta, eta, N_th;
};

// Draws filter-level parameter sets that correspond to a realizable mode
// (positive bare frequency: Q (1 + 4 delta^2) > 4 C delta).
class SetSampler {
 public:
  explicit SetSampler(std::uint64_t seed) : rng_(seed) {}

  RandomSet next() {
    for (;;) {
      RandomSet s;
      s.Q = log_uniform(1e1, 1e6);
      s.C = log_uniform(1e0, 1e7);
      s.n_th = log_uniform(1e-2, 1e7);
      s.delta = uniform(0.01, 1.0);
      s.eta = uniform(0.3, 1.0);
      s.N_th = rng_() & 1 ? 0.0 : uniform(0.0, 5.0);
      if (s.Q * (1.0 + 4.0 * s.delta * s.delta) > 4.0 * s.C * s.delta) return s;
    }
  }

  ModeSpec mode(const RandomSet& s) {
    ModeSpec m;
    m.label = ModeLabel::Single;
    m.gamma_m = 1.0;
    m.omega_m = s.Q;
    m.Q = s.Q;
    m.C = s.C;
    m.n_th = s.n_th;
    m.delta = s.delta;
    m.eta = s.eta;
    m.N_th = s.N_th;
    return m;
  }

 private:
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::mt19937_64 rng_;
};

CheckResult check_fixed_point(MeasurementChannel ch) {
  SetSampler gen(0x5eed0001);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    ModeSpec m = gen.mode(gen.next());
    FilterCoefficients fc = filter_coefficients(m, ch);
    Cov2 V = steady_state_analytic(fc, m.Q);
    SystemMatrices s = SystemMatrices::from_mode(m, ch);
    Cov2 r = riccati_rhs(V, s);
    worst = std::max(worst, r.max_abs() / fc.nbar_p);
  }
  return {"riccati_fixed_point", worst <= 1e-9,
          "max residual / nbar' = " + io::format_double(worst) + " over 200 sets"};
}

CheckResult check_ode_convergence(MeasurementChannel ch) {
  SetSampler gen(0x5eed0002);
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    ModeSpec m = gen.mode(gen.next());
    FilterCoefficients fc = filter_coefficients(m, ch);
    Cov2 target = steady_state_analytic(fc, m.Q);
    SystemMatrices s = SystemMatrices::from_mode(m, ch);
    double t0 = 2.0 * m.n_th + 1.0;
    RiccatiResult r = integrate_riccati(Cov2{t0, 0.0, t0}, s);
    Cov2 d = r.V - target;
    double rel = std::sqrt((d.v11 * d.v11 + 2 * d.v12 * d.v12 + d.v22 * d.v22) /
                           (target.v11 * target.v11 + 2 * target.v12 * target.v12 +
                            target.v22 * target.v22));
    worst = std::max(worst, rel);
  }
  return {"ode_convergence", worst <= 1e-6,
          "max relative deviation " + io::format_double(worst) + " over 10 sets"};
}

CheckResult check_lyapunov_dominance(const PhysicalParams& p) {
  double worst = 0;
  for (ModeLabel label : {ModeLabel::Common, ModeLabel::Differential}) {
    ModeSpec m = mode_quantities(p, label);
    for (MeasurementChannel ch : {MeasurementChannel::AmplitudeX, MeasurementChannel::PhaseY}) {
      FilterCoefficients fc = filter_coefficients(m, ch);
      if (fc.lambda_p <= 0) continue;
      Cov2 cond = steady_state_analytic(fc, m.Q);
      SystemMatrices s = SystemMatrices::from_mode(m, ch);
      Cov2 lyap = lyapunov_steady_state(s);
      Cov2 d = lyap - cond;
      double mineig =
          0.5 * (d.trace() - std::sqrt((d.v11 - d.v22) * (d.v11 - d.v22) +
                                       4.0 * d.v12 * d.v12));
      worst = std::min(worst, mineig / std::max(1.0, lyap.max_abs()));
      if (worst < -1e-9) {
        return {"lyapunov_dominance", false,
                std::string("conditioning increased uncertainty for the ") +
                    to_string(label) + " mode, channel " + to_string(ch)};
      }
    }
  }
  return {"lyapunov_dominance", true,
          "V_lyap - V_cond stayed positive semidefinite (min scaled eigenvalue " +
              io::format_double(worst) + ")"};
}

CheckResult check_path_equality() {
  SetSampler gen(0x5eed0003);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    RandomSet a = gen.next();
    RandomSet b = gen.next();
    b.eta = a.eta;
    b.N_th = a.N_th;
    ModeSpec mp = gen.mode(a);
    ModeSpec mm = gen.mode(b);
    for (MeasurementChannel ch : {MeasurementChannel::AmplitudeX, MeasurementChannel::PhaseY}) {
      FilterCoefficients fp = filter_coefficients(mp, ch);
      FilterCoefficients fm = filter_coefficients(mm, ch);
      Cov2 vp = steady_state_analytic(fp, mp.Q);
      Cov2 vm = steady_state_analytic(fm, mm.Q);
      double ref = std::sqrt(mp.omega_m * mm.omega_m);
      Cov4 joint = combine_modes(renormalize_covariance(vp, mp.omega_m, ref),
                                 renormalize_covariance(vm, mm.omega_m, ref), ref);
      EntanglementReport ent = entanglement_from_matrix(joint);
      double closed = epsilon_cr_closed_form(fp, mp.Q, fm, mm.Q);
      worst = std::max(worst, std::abs(ent.epsilon_cr - closed));
    }
  }
  return {"path_equality", worst <= 1e-9,
          "max |matrix - closed form| = " + io::format_double(worst) + " over 100 pairs"};
}

CheckResult check_montecarlo(int jobs, nlohmann::json* report) {
  ModeSpec m;
  m.label = ModeLabel::Single;
  m.gamma_m = 1.0;
  m.omega_m = 50.0;
  m.Q = 50.0;
  m.C = 200.0;
  m.n_th = 10.0;
  m.delta = 0.3;
  m.eta = 0.8;
  TrajectoryConfig cfg;
  cfg.mode = m;
  cfg.channel = MeasurementChannel::AmplitudeX;
  cfg.n_traj = 400;
  cfg.seed = 2026;
  cfg.jobs = jobs;
  EnsembleResult r = simulate_ensemble(cfg);
  double emp[3] = {r.moments.second.v11, r.moments.second.v12, r.moments.second.v22};
  double se[3] = {r.moments.second_se.v11, r.moments.second_se.v12, r.moments.second_se.v22};
  double ana[3] = {r.analytic.v11, r.analytic.v12, r.analytic.v22};
  bool ok = true;
  double worst_rel = 0, worst_sigma = 0;
  for (int i = 0; i < 3; ++i) {
    double rel = std::abs(emp[i] - ana[i]) / std::abs(ana[i]);
    double sig = std::abs(emp[i] - ana[i]) / se[i];
    worst_rel = std::max(worst_rel, rel);
    worst_sigma = std::max(worst_sigma, sig);
    if (rel > 0.05 || sig > 3.0) ok = false;
  }
  if (report) {
    (*report)["kernel"] = r.kernel;
    (*report)["noise_algorithm"] = r.noise_algorithm;
    (*report)["seed"] = r.seed;
    (*report)["empirical"] = {emp[0], emp[1], emp[2]};
    (*report)["standard_error"] = {se[0], se[1], se[2]};
    (*report)["analytic"] = {ana[0], ana[1], ana[2]};
  }
  return {"montecarlo_agreement", ok,
          "max relative deviation " + io::format_double(worst_rel) + ", max " +
              io::format_double(worst_sigma) + " standard errors (" + r.kernel +
              " kernel, 400 trajectories)"};
}

int cmd_validate(const CommonOpts& o) {
  Config cfg = effective_config(o);
  if (o.dump) {
    std::cout << io::dump_config(cfg);
    return 0;
  }
  PhysicalParams p = io::physical_from_config(cfg);
  MeasurementChannel ch = channel_from(cfg);

  nlohmann::json mc_extra;
  std::vector<CheckResult> checks;
  checks.push_back(check_fixed_point(ch));
  checks.push_back(check_ode_convergence(ch));
  checks.push_back(check_lyapunov_dominance(p));
  checks.push_back(check_path_equality());
  checks.push_back(check_montecarlo(resolve_jobs(o.jobs), &mc_extra));

  bool all = true;
  for (const auto& c : checks) {
    std::printf("%s %-22s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
    all = all && c.pass;
  }
  if (!o.out.empty()) {
    nlohmann::json j;
    j["metadata"]["version"] = "1.0.0";
    j["metadata"]["channel"] = cfg.get("sweep", "channel");
    j["metadata"]["config"] = io::config_json(cfg);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks)
      arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = arr;
    j["montecarlo"] = mc_extra;
    j["pass"] = all;
    io::write_text_file(o.out, json_text(j));
  }
  return all ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"measurement-conditioned covariances of suspended-mirror modes"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string figure_name;
  std::vector<std::string> sweep_outputs;

  auto* derive = app.add_subcommand("derive", "derived mode and filter quantities");
  add_common(derive, opts);

  auto* point = app.add_subcommand("point", "single-point state, squeezing, entanglement");
  add_common(point, opts);

  auto* sweep = app.add_subcommand("sweep", "grid evaluation from the [sweep] section");
  add_common(sweep, opts);
  sweep->add_option("--output", sweep_outputs, "restrict emitted cell fields")
      ->type_name("FIELD");
  sweep->add_option("--threshold-field", opts.threshold_field,
                    "also extract per-column level crossings of this field");
  sweep->add_option("--threshold-level", opts.threshold_level, "crossing level");

  auto* figure = app.add_subcommand("figure", "named preset datasets");
  figure->add_option("name", figure_name, "fig2|fig3|fig5|fig6|fig7|fig8|fig9")
      ->required();
  add_common(figure, opts);

  auto* ellipse = app.add_subcommand("ellipse", "one-sigma phase-space contours");
  add_common(ellipse, opts);
  ellipse->add_option("--norm", opts.norm, "own: each mode's vacuum; mean: shared reference")
      ->check(CLI::IsMember({"own", "mean"}));
  ellipse->add_option("--points", opts.points, "points per contour")
      ->check(CLI::PositiveNumber);

  auto* validate = app.add_subcommand("validate", "internal consistency checks");
  add_common(validate, opts);
  validate->add_option("--seed", opts.seed, "ensemble seed override");

  int code = 0;
  derive->callback([&] { code = cmd_derive(opts); });
  point->callback([&] { code = cmd_point(opts); });
  sweep->callback([&] { code = cmd_sweep(opts, sweep_outputs); });
  figure->callback([&] { code = cmd_figure(opts, figure_name); });
  ellipse->callback([&] { code = cmd_ellipse(opts); });
  validate->callback([&] { code = cmd_validate(opts); });

  try {
    app.parse(argc, argv);
    return code;
  } catch (const CLI::ParseError& e) {
    int c = app.exit(e);
    return c == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 3;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "invalid parameters: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace mirrorcov
