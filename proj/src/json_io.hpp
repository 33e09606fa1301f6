#pragma once

#include <json.hpp>
#include <string>

#include "collapse.hpp"
#include "suites.hpp"

namespace wpc {

using Json = nlohmann::ordered_json;

Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j);

Json point_to_json(const SiegelPoint& tau);
SiegelPoint point_from_json(const Json& j);

Json spec_to_json(const DegenerationSpec& spec);
DegenerationSpec spec_from_json(const Json& j);

Json fit_to_json(const RateFit& fit);
Json report_to_json(const ExperimentReport& rep);
std::string report_to_csv(const ExperimentReport& rep);

Json suite_to_json(const SuiteReport& rep);

// fixed 17-significant-digit decimal rendering used by the CSV emitter
std::string render_double(double x);

void write_atomic(const std::string& path, const std::string& content);

}  // namespace wpc
