#include "gridarr/report.hpp"

#include <cmath>
#include <fstream>

namespace gridarr {

double to_double(const Rational& r) { return static_cast<double>(r); }

Json to_json(const BoundReport& r) {
    Json j;
    j["m"] = r.m;
    j["n"] = r.n;
    j["t"] = r.t;
    j["st_bound"] = {{"exact", to_string(r.st)}, {"approx", to_double(r.st)}};
    j["thm_bound"] = {{"exact", to_string(r.thm)}, {"approx", to_double(r.thm)}};
    j["cor_exponent"] = {{"exact", to_string(r.cor_exp)}, {"approx", to_double(r.cor_exp)}};
    j["measured_incidences"] = r.measured_incidences;
    j["ratio_st"] = {{"exact", to_string(r.ratio_st)}, {"approx", to_double(r.ratio_st)}};
    j["ratio_thm"] = {{"exact", to_string(r.ratio_thm)}, {"approx", to_double(r.ratio_thm)}};
    return j;
}

Json to_json(const ExtractReport& r) {
    Json j = Json::array();
    for (const auto& [k, v] : r.stages) j.push_back({{"stage", k}, {"value", v}});
    return j;
}

Json count_report(std::size_t m, std::size_t n, std::uint64_t incidences,
                  const std::string& strategy, double elapsed_ms) {
    Json j;
    j["m"] = m;
    j["n"] = n;
    j["incidences"] = incidences;
    j["strategy"] = strategy;
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

Json strip_timing(Json j) {
    if (j.is_object()) {
        Json out = Json::object();
        for (auto& [k, v] : j.items())
            if (k != "elapsed_ms" && k != "elapsed") out[k] = strip_timing(v);
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (auto& v : j) out.push_back(strip_timing(v));
        return out;
    }
    return j;
}

void write_json(const Json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& xy) {
    if (xy.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(xy.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0) return std::nullopt;
    return (n * sxy - sx * sy) / denom;
}

}  // namespace gridarr
