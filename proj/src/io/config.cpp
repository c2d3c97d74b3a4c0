#include "mirrorcov/io/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "mirrorcov/constants.hpp"

namespace mirrorcov::io {

namespace {

const std::set<std::string> kPhysicalKeys = {
    "mass_kg", "Omega_Hz", "Gamma_Hz", "temperature_K", "gamma_m_Hz",
    "kappa_minus_Hz", "zeta", "recycling_R", "delta_minus", "eta", "N_th",
    "damping", "g_Hz", "abar", "cavity_length_m", "laser_freq_Hz",
    "input_power_W"};

const std::set<std::string> kMonteCarloKeys = {
    "n_traj", "seed", "dt", "dt_scale", "t_burn", "burn_factor", "t_collect",
    "collect_factor", "kernel"};

const std::set<std::string> kSweepKeys = {
    "channel", "axis1", "axis1_min", "axis1_max", "axis1_n", "axis1_scale",
    "axis2", "axis2_min", "axis2_max", "axis2_n", "axis2_scale"};

const std::set<std::string> kPresetKeys = {"Gamma_Hz", "delta_minus", "zeta"};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool Config::has(const std::string& section, const std::string& key) const {
  auto s = sections.find(section);
  return s != sections.end() && s->second.count(key) > 0;
}

const std::string& Config::get(const std::string& section, const std::string& key) const {
  auto s = sections.find(section);
  if (s != sections.end()) {
    auto k = s->second.find(key);
    if (k != s->second.end()) return k->second;
  }
  throw ConfigError("missing config key [" + section + "] " + key);
}

double parse_double(const std::string& text, const std::string& where) {
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (trim(text.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("not a number for " + where + ": '" + text + "'");
}

long long parse_int(const std::string& text, const std::string& where) {
  try {
    size_t pos = 0;
    long long v = std::stoll(text, &pos);
    if (trim(text.substr(pos)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("not an integer for " + where + ": '" + text + "'");
}

Config default_config() {
  Config c;
  auto& ph = c.sections["physical"];
  ph["mass_kg"] = "7.71e-6";
  ph["Omega_Hz"] = "2.2";
  ph["Gamma_Hz"] = "1e-6";
  ph["temperature_K"] = "300";
  ph["gamma_m_Hz"] = "6.9e-3";
  ph["kappa_minus_Hz"] = "1.64e6";
  ph["zeta"] = "3.0";
  ph["delta_minus"] = "0.2";
  ph["eta"] = "0.92";
  ph["N_th"] = "0";
  ph["damping"] = "structural";
  ph["g_Hz"] = "2.68e5";
  auto& mc = c.sections["montecarlo"];
  mc["n_traj"] = "2000";
  mc["seed"] = "1";
  mc["dt"] = "0";
  mc["dt_scale"] = "0.005";
  mc["t_burn"] = "0";
  mc["burn_factor"] = "20";
  mc["t_collect"] = "0";
  mc["collect_factor"] = "40";
  mc["kernel"] = "auto";
  auto& sw = c.sections["sweep"];
  sw["channel"] = "x";
  sw["axis1"] = "Gamma";
  sw["axis1_min"] = "1e-8";
  sw["axis1_max"] = "1e-2";
  sw["axis1_n"] = "40";
  sw["axis1_scale"] = "log";
  sw["axis2"] = "delta_minus";
  sw["axis2_min"] = "0.01";
  sw["axis2_max"] = "1.0";
  sw["axis2_n"] = "40";
  sw["axis2_scale"] = "linear";
  return c;
}

Config parse_config_text(const std::string& text) {
  Config c;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      c.sections[section];
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    c.sections[section][key] = value;
  }
  return c;
}

Config parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void apply_override(Config& cfg, const std::string& spec) {
  size_t eq = spec.find('=');
  if (eq == std::string::npos)
    throw ConfigError("--set needs section.key=value, got '" + spec + "'");
  std::string addr = trim(spec.substr(0, eq));
  std::string value = trim(spec.substr(eq + 1));
  size_t dot = addr.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == addr.size())
    throw ConfigError("--set needs section.key=value, got '" + spec + "'");
  cfg.sections[addr.substr(0, dot)][addr.substr(dot + 1)] = value;
}

void merge(Config& base, const Config& extra) {
  for (const auto& [section, kv] : extra.sections) {
    auto& dst = base.sections[section];
    for (const auto& [k, v] : kv) dst[k] = v;
  }
}

void validate_keys(const Config& cfg) {
  for (const auto& [section, kv] : cfg.sections) {
    const std::set<std::string>* allowed = nullptr;
    if (section == "physical") allowed = &kPhysicalKeys;
    else if (section == "montecarlo") allowed = &kMonteCarloKeys;
    else if (section == "sweep") allowed = &kSweepKeys;
    else if (section.rfind("preset.", 0) == 0) allowed = &kPresetKeys;
    else throw ConfigError("unknown config section [" + section + "]");
    for (const auto& [k, v] : kv)
      if (!allowed->count(k))
        throw ConfigError("unknown key '" + k + "' in section [" + section + "]");
  }
}

std::string dump_config(const Config& cfg) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [section, kv] : cfg.sections) {
    if (!first) os << "\n";
    first = false;
    os << "[" << section << "]\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
  }
  return os.str();
}

PhysicalParams physical_from_config(const Config& cfg) {
  const std::string sec = "physical";
  PhysicalParams p;
  auto hz = [&](const std::string& key) {
    return kTwoPi * parse_double(cfg.get(sec, key), "[physical] " + key);
  };
  p.mass = parse_double(cfg.get(sec, "mass_kg"), "[physical] mass_kg");
  p.Omega = hz("Omega_Hz");
  p.Gamma = hz("Gamma_Hz");
  p.temperature = parse_double(cfg.get(sec, "temperature_K"), "[physical] temperature_K");
  p.gamma_m = hz("gamma_m_Hz");
  p.kappa_minus = hz("kappa_minus_Hz");
  if (cfg.has(sec, "recycling_R")) {
    if (cfg.has(sec, "zeta"))
      throw ConfigError("give either zeta or recycling_R, not both");
    p.zeta = zeta_from_reflectivity(
        parse_double(cfg.get(sec, "recycling_R"), "[physical] recycling_R"));
  } else {
    p.zeta = parse_double(cfg.get(sec, "zeta"), "[physical] zeta");
  }
  p.delta_minus = parse_double(cfg.get(sec, "delta_minus"), "[physical] delta_minus");
  p.eta = parse_double(cfg.get(sec, "eta"), "[physical] eta");
  p.N_th = parse_double(cfg.get(sec, "N_th"), "[physical] N_th");
  std::string damping = cfg.get(sec, "damping");
  if (damping == "structural") p.damping = DampingModel::Structural;
  else if (damping == "velocity") p.damping = DampingModel::Velocity;
  else throw ConfigError("damping must be structural or velocity, got '" + damping + "'");
  if (cfg.has(sec, "g_Hz")) p.g = hz("g_Hz");
  if (cfg.has(sec, "abar"))
    p.abar = parse_double(cfg.get(sec, "abar"), "[physical] abar");
  if (cfg.has(sec, "cavity_length_m"))
    p.cavity_length = parse_double(cfg.get(sec, "cavity_length_m"), "[physical] cavity_length_m");
  if (cfg.has(sec, "laser_freq_Hz")) p.laser_omega = hz("laser_freq_Hz");
  if (cfg.has(sec, "input_power_W"))
    p.input_power = parse_double(cfg.get(sec, "input_power_W"), "[physical] input_power_W");
  try {
    p.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid [physical] values: ") + e.what());
  }
  return p;
}

TrajectoryConfig montecarlo_from_config(const Config& cfg) {
  const std::string sec = "montecarlo";
  TrajectoryConfig t;
  t.n_traj = static_cast<int>(parse_int(cfg.get(sec, "n_traj"), "[montecarlo] n_traj"));
  t.seed = static_cast<std::uint64_t>(parse_int(cfg.get(sec, "seed"), "[montecarlo] seed"));
  t.dt = parse_double(cfg.get(sec, "dt"), "[montecarlo] dt");
  t.dt_scale = parse_double(cfg.get(sec, "dt_scale"), "[montecarlo] dt_scale");
  t.t_burn = parse_double(cfg.get(sec, "t_burn"), "[montecarlo] t_burn");
  t.burn_factor = parse_double(cfg.get(sec, "burn_factor"), "[montecarlo] burn_factor");
  t.t_collect = parse_double(cfg.get(sec, "t_collect"), "[montecarlo] t_collect");
  t.collect_factor = parse_double(cfg.get(sec, "collect_factor"), "[montecarlo] collect_factor");
  std::string kernel = cfg.get(sec, "kernel");
  if (kernel == "auto") t.kernel = KernelChoice::Auto;
  else if (kernel == "scalar") t.kernel = KernelChoice::Scalar;
  else if (kernel == "avx2") t.kernel = KernelChoice::Avx2;
  else throw ConfigError("kernel must be auto, scalar, or avx2, got '" + kernel + "'");
  if (t.n_traj < 2) throw ConfigError("[montecarlo] n_traj must be at least 2");
  return t;
}

namespace {

SweepParam axis_param(const std::string& name) {
  if (name == "Gamma") return SweepParam::Gamma;
  if (name == "delta_minus") return SweepParam::DeltaMinus;
  if (name == "zeta") return SweepParam::Zeta;
  throw ConfigError("sweep axis must be Gamma, delta_minus, or zeta; got '" + name + "'");
}

AxisScale axis_scale(const std::string& name) {
  if (name == "log") return AxisScale::Log;
  if (name == "linear") return AxisScale::Linear;
  throw ConfigError("axis scale must be linear or log, got '" + name + "'");
}

}  // namespace

SweepSpec sweep_from_config(const Config& cfg) {
  const std::string sec = "sweep";
  SweepSpec s;
  s.base = physical_from_config(cfg);
  std::string ch = cfg.get(sec, "channel");
  if (ch == "x") s.channel = MeasurementChannel::AmplitudeX;
  else if (ch == "y") s.channel = MeasurementChannel::PhaseY;
  else throw ConfigError("channel must be x or y, got '" + ch + "'");

  for (int k = 1; k <= 2; ++k) {
    std::string pre = "axis" + std::to_string(k);
    if (k == 2 && (!cfg.has(sec, pre) || cfg.get(sec, pre).empty())) break;
    SweepAxis ax;
    ax.param = axis_param(cfg.get(sec, pre));
    ax.min = parse_double(cfg.get(sec, pre + "_min"), "[sweep] " + pre + "_min");
    ax.max = parse_double(cfg.get(sec, pre + "_max"), "[sweep] " + pre + "_max");
    ax.n = static_cast<int>(parse_int(cfg.get(sec, pre + "_n"), "[sweep] " + pre + "_n"));
    ax.scale = axis_scale(cfg.get(sec, pre + "_scale"));
    if (ax.param == SweepParam::Gamma) {
      // Gamma bounds are entered in Hz like every other frequency key.
      ax.min *= kTwoPi;
      ax.max *= kTwoPi;
    }
    s.axes.push_back(ax);
  }
  return s;
}

PhysicalParams apply_preset(const Config& cfg, const PhysicalParams& base,
                            const std::string& name) {
  if (name.empty() || name == "black") return base;
  std::string section = "preset." + name;
  auto it = cfg.sections.find(section);
  if (it == cfg.sections.end())
    throw ConfigError("preset '" + name + "' is not configured; add a [" + section +
                      "] section with its coordinates");
  PhysicalParams p = base;
  for (const auto& [k, v] : it->second) {
    if (k == "Gamma_Hz") p.Gamma = kTwoPi * parse_double(v, section + " Gamma_Hz");
    else if (k == "delta_minus") p.delta_minus = parse_double(v, section + " delta_minus");
    else if (k == "zeta") p.zeta = parse_double(v, section + " zeta");
  }
  return p;
}

void fold_preset(Config& cfg, const std::string& name) {
  if (name.empty() || name == "black") return;
  std::string section = "preset." + name;
  auto it = cfg.sections.find(section);
  if (it == cfg.sections.end())
    throw ConfigError("preset '" + name + "' is not configured; add a [" + section +
                      "] section with its coordinates");
  for (const auto& [k, v] : it->second) cfg.sections["physical"][k] = v;
}

}  // namespace mirrorcov::io
