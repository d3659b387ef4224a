#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "steerkit/complex_matrix.hpp"
#include "steerkit/glsi.hpp"
#include "steerkit/scans.hpp"
#include "steerkit/shotsim.hpp"
#include "steerkit/states.hpp"
#include "steerkit/steering.hpp"

namespace steerkit {

// Insertion-ordered JSON keeps emitted documents stable across runs.
using json = nlohmann::ordered_json;

std::string family_name(Family family);
Family family_from_name(const std::string& name);

// Density matrices travel as {"dim": n, "entries": [[re, im], ...]} row-major.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);
ComplexMatrix load_state_file(const std::string& path);

json correlators_json(const Correlators& c);
json inequality_report_json(const InequalityReport& report);
json paradox_report_json(const ParadoxReport& report);
json threshold_json(const ThresholdResult& result);
json detection_json(const Detection& d);
json estimate_json(const EstimateReport& report);
json region_json(const RegionTable& table);
json curves_json(const std::vector<CurvePoint>& rows);

// Metadata block every emitted document carries: tool identity plus the
// invoking command and its parameters.
json make_metadata(const std::string& command, const json& parameters);

// CSV companions: metadata rides along as leading '#' comment lines and the
// data header is fixed to the nine-column region schema.
std::vector<std::string> csv_metadata_lines(const std::string& command,
                                            const json& parameters);
std::string region_csv(const RegionTable& table,
                       const std::vector<std::string>& metadata_lines);
std::string curves_csv(const std::vector<CurvePoint>& rows,
                       const std::vector<std::string>& metadata_lines);

// Shortest-precision stable rendering used by every CSV cell.
std::string format_double(double value);

}  // namespace steerkit
