#include "dspaces/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace dspaces {

nlohmann::json json_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    // the JSON serializer already prints the shortest round-trip form
    return nlohmann::json(v).dump();
}

nlohmann::json to_json(const DyadicCube& q) { return {{"j", q.level()}, {"k", q.index()}}; }

nlohmann::json to_json(const NormValue& v) {
    return {{"log2_value", json_number(v.log2_value)},
            {"linear_value", json_number(v.linear_value)},
            {"attained_at", to_json(v.attained_at)}};
}

nlohmann::json to_json(const GrowthReport& r) {
    nlohmann::json values = nlohmann::json::array();
    for (double v : r.log2_values) values.push_back(json_number(v));
    nlohmann::json out{{"space", r.space},
                       {"depths", r.depths},
                       {"log2_values", values},
                       {"fitted_exponent", json_number(r.fitted_exponent)},
                       {"verdict", to_string(r.verdict)}};
    out["theoretical_exponent"] = r.theoretical_exponent ? json_number(*r.theoretical_exponent) : nlohmann::json();
    out["log2_bound"] = r.log2_bound ? json_number(*r.log2_bound) : nlohmann::json();
    out["within_bound"] = r.within_bound;
    return out;
}

nlohmann::json to_json(const Prop4Certificate& c) {
    return {{"target", c.target == WitnessTarget::f_type ? "f_type" : "b_type"},
            {"params",
             {{"s", json_number(c.params.s)},
              {"p", json_number(c.params.p)},
              {"q", json_number(c.params.q)},
              {"tau", json_number(c.params.tau)},
              {"dim", c.params.dim}}},
            {"reference", to_json(c.reference)},
            {"target_report", to_json(c.target_report)},
            {"certified", c.certified()}};
}

nlohmann::json to_json(const EquivalenceReport& r) {
    return {{"check", r.check},
            {"lower_ok", r.lower_ok},
            {"upper_ok", r.upper_ok},
            {"lower_constant", json_number(r.lower_constant)},
            {"upper_constant", json_number(r.upper_constant)},
            {"worst_ratio_low", json_number(r.worst_ratio_low)},
            {"worst_ratio_high", json_number(r.worst_ratio_high)},
            {"samples", r.samples},
            {"tolerance", json_number(r.tolerance)}};
}

nlohmann::json to_json(const ClassificationReport& r) {
    nlohmann::json params;
    if (r.target_params) {
        params = nlohmann::json::object();
        for (const auto& [key, value] : *r.target_params) params[key] = value.to_string();
    }
    return {{"verdict", to_string(r.verdict)},
            {"space", r.space},
            {"target_params", params},
            {"rule", r.rule},
            {"notes", r.notes},
            {"warnings", r.warnings}};
}

nlohmann::json to_json(const Refutation& r) {
    return {{"f_certificate", to_json(r.f_certificate)},
            {"b_certificate", to_json(r.b_certificate)},
            {"target", to_json(r.target)},
            {"reference", to_json(r.reference)},
            {"certified", r.certified()}};
}

nlohmann::json to_json(const Prop2Report& r) {
    return {{"log2_function_norm", json_number(r.log2_function_norm)},
            {"log2_sequence_norm", json_number(r.log2_sequence_norm)},
            {"ratio", r.ratio ? json_number(*r.ratio) : nlohmann::json()},
            {"band_limited", r.band_limited},
            {"out_of_band_energy", json_number(r.out_of_band_energy)}};
}

void write_growth_csv(std::ostream& out, const GrowthReport& r) {
    out << "depth,log2_norm\r\n";
    for (std::size_t i = 0; i < r.depths.size(); ++i) {
        out << r.depths[i] << ',' << format_double(r.log2_values[i]) << "\r\n";
    }
}

void write_ratio_csv(std::ostream& out, const std::vector<SampleRatio>& rows) {
    out << "sample_id,ratio_low,ratio_high\r\n";
    for (const auto& row : rows) {
        out << row.sample_id << ',' << format_double(row.ratio_low) << ',' << format_double(row.ratio_high) << "\r\n";
    }
}

}  // namespace dspaces
