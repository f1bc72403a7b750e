#include "report.hpp"

#include <charconv>

namespace codonctx::cli {

using nlohmann::json;

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void to_json(json& j, const BaselineBlock& b) {
    j = json{{"mean", b.mean},   {"std", b.std},         {"samples", b.samples},
             {"rank", b.rank},   {"min_cpb", b.min_cpb}, {"max_cpb", b.max_cpb}};
}

void from_json(const json& j, BaselineBlock& b) {
    j.at("mean").get_to(b.mean);
    j.at("std").get_to(b.std);
    j.at("samples").get_to(b.samples);
    j.at("rank").get_to(b.rank);
    j.at("min_cpb").get_to(b.min_cpb);
    j.at("max_cpb").get_to(b.max_cpb);
}

void to_json(json& j, const OptimizationBlock& b) {
    j = json{{"method", b.method},   {"direction", b.direction}, {"cpb", b.cpb},
             {"optimal", b.optimal}, {"nodes", b.nodes},         {"iterations", b.iterations},
             {"seconds", b.seconds}, {"sequence", b.sequence}};
}

void from_json(const json& j, OptimizationBlock& b) {
    j.at("method").get_to(b.method);
    j.at("direction").get_to(b.direction);
    j.at("cpb").get_to(b.cpb);
    j.at("optimal").get_to(b.optimal);
    j.at("nodes").get_to(b.nodes);
    j.at("iterations").get_to(b.iterations);
    j.at("seconds").get_to(b.seconds);
    j.at("sequence").get_to(b.sequence);
}

void to_json(json& j, const Report& r) {
    j = json{{"gene_id", r.gene_id}, {"length_codons", r.length_codons}, {"n_pairs", r.n_pairs}, {"cpb", r.cpb}};
    if (r.p_value) j["p_value"] = *r.p_value;
    if (r.z_score) j["z_score"] = *r.z_score;
    if (r.interval_95) j["interval_95"] = {r.interval_95->first, r.interval_95->second};
    if (r.nc) j["nc"] = *r.nc;
    if (r.baseline) j["baseline"] = *r.baseline;
    if (!r.optimizations.empty()) j["optimizations"] = r.optimizations;
}

void from_json(const json& j, Report& r) {
    r = Report{};
    j.at("gene_id").get_to(r.gene_id);
    j.at("length_codons").get_to(r.length_codons);
    j.at("n_pairs").get_to(r.n_pairs);
    j.at("cpb").get_to(r.cpb);
    if (j.contains("p_value")) r.p_value = j["p_value"].get<double>();
    if (j.contains("z_score")) r.z_score = j["z_score"].get<double>();
    if (j.contains("interval_95")) {
        r.interval_95 = std::make_pair(j["interval_95"].at(0).get<double>(), j["interval_95"].at(1).get<double>());
    }
    if (j.contains("nc")) r.nc = j["nc"].get<double>();
    if (j.contains("baseline")) r.baseline = j["baseline"].get<BaselineBlock>();
    if (j.contains("optimizations")) r.optimizations = j["optimizations"].get<std::vector<OptimizationBlock>>();
}

}  // namespace codonctx::cli
