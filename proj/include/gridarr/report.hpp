#pragma once

#include "gridarr/constructions.hpp"
#include "gridarr/grid_extract.hpp"

#include <json.hpp>

#include <string>

namespace gridarr {

using Json = nlohmann::ordered_json;

Json to_json(const BoundReport& r);
Json to_json(const ExtractReport& r);

// Count report: one object with m, n, incidences, strategy, elapsed_ms.
Json count_report(std::size_t m, std::size_t n, std::uint64_t incidences,
                  const std::string& strategy, double elapsed_ms);

// Removes timing fields recursively; reports must be byte-identical across
// reruns apart from these.
Json strip_timing(Json j);

void write_json(const Json& j, const std::string& path);

// Approximate value of an exact rational, for display fields.
double to_double(const Rational& r);

// Least-squares slope of log(y) against log(x); nullopt with fewer than two
// samples.
std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& xy);

}  // namespace gridarr
