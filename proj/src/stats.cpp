#include "codonctx/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "codonctx/errors.hpp"
#include "codonctx/scoring.hpp"

namespace codonctx {

namespace {

double sigma_of_mean(std::size_t n_pairs, const CpbDistribution& dist) {
    if (n_pairs == 0) throw std::invalid_argument("n_pairs must be at least 1");
    if (!(dist.variance > 0.0)) throw DataError("degenerate distribution: variance is zero");
    return std::sqrt(dist.variance / static_cast<double>(n_pairs));
}

}  // namespace

CpbDistribution distribution_from_table(const CpsTable& table) {
    if (!table.has_counts()) throw DataError("table '" + table.source() + "' carries no observed counts");
    const auto sense = GeneticCode::standard().sense_codons();
    double total = 0.0;
    for (Codon a : sense) {
        for (Codon b : sense) total += table.observed(a, b).value_or(0.0);
    }
    if (!(total > 0.0)) throw DataError("table '" + table.source() + "' has all-zero observed counts");

    double mean = 0.0;
    for (Codon a : sense) {
        for (Codon b : sense) {
            const double w = table.observed(a, b).value_or(0.0);
            if (w > 0.0) mean += table.score(a, b) * (w / total);
        }
    }
    double variance = 0.0;
    for (Codon a : sense) {
        for (Codon b : sense) {
            const double w = table.observed(a, b).value_or(0.0);
            if (w > 0.0) {
                const double d = table.score(a, b) - mean;
                variance += d * d * (w / total);
            }
        }
    }
    return {mean, variance, table.source()};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile probability must lie in (0, 1)");
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double z_score(double c, std::size_t n_pairs, const CpbDistribution& dist) {
    return (c - dist.mean) / sigma_of_mean(n_pairs, dist);
}

double pvalue(double c, std::size_t n_pairs, const CpbDistribution& dist) {
    const double sigma = sigma_of_mean(n_pairs, dist);
    // 2 * Phi(-|c - mean| / sigma)
    const double distance = std::abs(c - dist.mean);
    return std::min(1.0, std::erfc(distance / (sigma * std::numbers::sqrt2)));
}

std::pair<double, double> significant_interval(std::size_t n_pairs, double alpha,
                                               const CpbDistribution& dist) {
    if (n_pairs == 0) throw std::invalid_argument("n_pairs must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    const double half = normal_quantile(1.0 - alpha / 2.0) * std::sqrt(dist.variance) /
                        std::sqrt(static_cast<double>(n_pairs));
    return {dist.mean - half, dist.mean + half};
}

BaselineSample baseline_sample(const AminoAcidSeq& protein, const CodonDistribution& dist,
                               const CpsTable& table, std::size_t samples, std::uint64_t seed) {
    if (samples < 2) throw std::invalid_argument("baseline needs at least 2 samples");
    require_consistent(protein, dist);
    BaselineSample out;
    out.values.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
        std::mt19937_64 rng(seq);
        out.values.push_back(cpb(random_synonymous_encoding(protein, dist, rng), table));
    }
    auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
    if (*lo == *hi) {
        out.mean = *lo;
        out.std = 0.0;
        return out;
    }
    double sum = 0.0;
    for (double v : out.values) sum += v;
    out.mean = sum / static_cast<double>(samples);
    double ss = 0.0;
    for (double v : out.values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(samples - 1));
    return out;
}

BaselineSummary summarize_baseline(const BaselineSample& sample, double gene_cpb) {
    BaselineSummary s;
    s.mean = sample.mean;
    s.std = sample.std;
    s.samples = sample.values.size();
    s.rank = static_cast<std::size_t>(
        std::count_if(sample.values.begin(), sample.values.end(), [&](double v) { return v < gene_cpb; }));
    return s;
}

SignificanceReport significance(const CodonSeq& seq, const CpsTable& table, const CpbDistribution& dist) {
    SignificanceReport r;
    r.cpb = cpb(seq, table);
    r.n_pairs = seq.n_pairs();
    r.p_value = pvalue(r.cpb, r.n_pairs, dist);
    r.z_score = z_score(r.cpb, r.n_pairs, dist);
    r.interval_95 = significant_interval(r.n_pairs, 0.05, dist);
    return r;
}

}  // namespace codonctx
