#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "codonctx/cps_table.hpp"
#include "codonctx/sequence.hpp"

namespace codonctx {

// Population mean and variance of per-pair scores; CPB over n pairs is
// treated as Normal(mean, variance / n).
struct CpbDistribution {
    double mean = 0.0;
    double variance = 0.0;
    std::string source;
};

// Count-weighted mean and variance of the table's scores. Throws DataError if
// the table has no counts or all observed counts are zero.
CpbDistribution distribution_from_table(const CpsTable& table);

// Standard normal CDF.
double normal_cdf(double x);

// Standard normal quantile, 0 < p < 1.
double normal_quantile(double p);

// (c - mean) / sqrt(variance / n_pairs). Throws DataError on zero variance.
double z_score(double c, std::size_t n_pairs, const CpbDistribution& dist);

// Two-tailed probability of a CPB at least as far from the mean as c.
// Throws DataError on zero variance, std::invalid_argument on n_pairs == 0.
double pvalue(double c, std::size_t n_pairs, const CpbDistribution& dist);

// mean -/+ z_{1-alpha/2} * sqrt(variance / n_pairs).
std::pair<double, double> significant_interval(std::size_t n_pairs, double alpha,
                                               const CpbDistribution& dist);

struct BaselineSample {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1 denominator)
    std::vector<double> values;
};

inline constexpr std::size_t kDefaultBaselineSamples = 100;

// CPB of `samples` random encodings sharing the protein and codon
// distribution. Sample k draws from a generator seeded with (seed, k), so the
// result does not depend on evaluation order.
BaselineSample baseline_sample(const AminoAcidSeq& protein, const CodonDistribution& dist,
                               const CpsTable& table, std::size_t samples = kDefaultBaselineSamples,
                               std::uint64_t seed = 0);

struct BaselineSummary {
    double mean = 0.0;
    double std = 0.0;
    std::size_t samples = 0;
    std::size_t rank = 0;  // samples with CPB strictly below the gene's
};

struct SignificanceReport {
    double cpb = 0.0;
    std::size_t n_pairs = 0;
    double p_value = 1.0;
    double z_score = 0.0;
    std::pair<double, double> interval_95;
    std::optional<BaselineSummary> baseline;
};

SignificanceReport significance(const CodonSeq& seq, const CpsTable& table,
                                const CpbDistribution& dist);

BaselineSummary summarize_baseline(const BaselineSample& sample, double gene_cpb);

}  // namespace codonctx
