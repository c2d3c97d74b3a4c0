#pragma once

#include <map>
#include <string>

#include "mirrorcov/model.hpp"
#include "mirrorcov/montecarlo.hpp"
#include "mirrorcov/sweep.hpp"

namespace mirrorcov::io {

// Sectioned key = value text. Section and key names are case-sensitive;
// '#' and ';' start comments. The stored form is the merged effective
// configuration: defaults first, then file, then --set overrides.
struct Config {
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& section, const std::string& key) const;
  const std::string& get(const std::string& section, const std::string& key) const;
};

// Built-in defaults: the reference parameter point every command starts from.
Config default_config();

Config parse_config_text(const std::string& text);
Config parse_config_file(const std::string& path);

// "section.key=value" override.
void apply_override(Config& cfg, const std::string& spec);

// Defaults <- file <- overrides, with unknown sections/keys rejected.
void merge(Config& base, const Config& extra);
void validate_keys(const Config& cfg);

std::string dump_config(const Config& cfg);

PhysicalParams physical_from_config(const Config& cfg);
TrajectoryConfig montecarlo_from_config(const Config& cfg);
SweepSpec sweep_from_config(const Config& cfg);

// Applies a named parameter preset ("black" is the base itself; any other
// name needs a [preset.<name>] section).
PhysicalParams apply_preset(const Config& cfg, const PhysicalParams& base,
                            const std::string& name);

// Config-level preset application: copies the [preset.<name>] keys into
// [physical] verbatim, so the effective config alone reproduces the run.
void fold_preset(Config& cfg, const std::string& name);

double parse_double(const std::string& text, const std::string& where);
long long parse_int(const std::string& text, const std::string& where);

}  // namespace mirrorcov::io
