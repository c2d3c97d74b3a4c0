#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mirrorcov/gaussian.hpp"
#include "mirrorcov/io/config.hpp"
#include "mirrorcov/montecarlo.hpp"
#include "mirrorcov/sweep.hpp"

namespace mirrorcov::io {

// Full-precision decimal rendering; round-trips a double exactly.
std::string format_double(double v);

// Column header and emitted value for a sweep axis. Frequencies go out in
// Hz, matching the config keys, so an emitted value can be fed back in.
std::string axis_column_name(SweepParam p);
double axis_output_value(SweepParam p, double stored);

// Grid CSV: axis columns, status, then the fixed cell-field order. The
// cooperativity view replaces the leading axis column with Cq_minus so the
// same rows plot against either parameterization.
std::string grid_csv(const GridResult& grid, bool coop_leading = false);

std::string thresholds_csv(const GridResult& grid, const std::vector<ThresholdRecord>& recs);

// Key,value listing of a single point evaluation.
std::string point_csv(const PointResult& pt);

// Rows contour,index,q,p for a set of named one-sigma contours.
std::string ellipse_csv(const std::vector<std::pair<std::string, WignerEllipse>>& contours);

std::string ensemble_csv(const EnsembleResult& r);

// JSON mirrors of the same records, each with a metadata block (version,
// channel, effective config; seed/kernel/noise algorithm where relevant).
nlohmann::json config_json(const Config& cfg);
nlohmann::json grid_json(const GridResult& grid, const Config& effective);
nlohmann::json point_json(const PointResult& pt, const Config& effective,
                          const std::string& channel);
nlohmann::json ellipse_json(const std::vector<std::pair<std::string, WignerEllipse>>& contours,
                            const Config& effective, const std::string& channel,
                            const std::string& norm);
nlohmann::json ensemble_json(const EnsembleResult& r, const Config& effective,
                             const std::string& channel);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace mirrorcov::io
