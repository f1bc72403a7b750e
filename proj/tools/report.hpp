#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace codonctx::cli {

struct BaselineBlock {
    double mean = 0.0;
    double std = 0.0;
    std::size_t samples = 0;
    std::size_t rank = 0;
    double min_cpb = 0.0;  // annealing, minimizing
    double max_cpb = 0.0;  // annealing, maximizing

    bool operator==(const BaselineBlock&) const = default;
};

struct OptimizationBlock {
    std::string method;
    std::string direction;
    double cpb = 0.0;
    bool optimal = false;
    std::uint64_t nodes = 0;
    std::uint64_t iterations = 0;
    double seconds = 0.0;
    std::string sequence;

    bool operator==(const OptimizationBlock&) const = default;
};

// One record's worth of output; optional blocks are present only when the
// corresponding computation ran.
struct Report {
    std::string gene_id;
    std::size_t length_codons = 0;
    std::size_t n_pairs = 0;
    double cpb = 0.0;
    std::optional<double> p_value;
    std::optional<double> z_score;
    std::optional<std::pair<double, double>> interval_95;
    std::optional<double> nc;
    std::optional<BaselineBlock> baseline;
    std::vector<OptimizationBlock> optimizations;

    bool operator==(const Report&) const = default;
};

void to_json(nlohmann::json& j, const BaselineBlock& b);
void from_json(const nlohmann::json& j, BaselineBlock& b);
void to_json(nlohmann::json& j, const OptimizationBlock& b);
void from_json(const nlohmann::json& j, OptimizationBlock& b);
void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);

// Shortest representation that parses back to the same double.
std::string format_number(double value);

}  // namespace codonctx::cli
