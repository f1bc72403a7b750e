#include "codonctx/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "codonctx/errors.hpp"

namespace codonctx {

namespace {

int aa_of(Codon c) {
    const auto& code = GeneticCode::standard();
    return GeneticCode::amino_acid_index(code.amino_acid(c));
}

}  // namespace

void PairCounts::add(const CodonSeq& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        int x = aa_of(seq[i]);
        ++codon[seq[i].index()];
        ++aa[x];
        ++total_codons;
        if (i + 1 < seq.size()) {
            int y = aa_of(seq[i + 1]);
            ++pair[pair_slot(seq[i], seq[i + 1])];
            ++aa_pair[static_cast<std::size_t>(x) * kAminoAcidCount + y];
            ++total_pairs;
        }
    }
}

PairCounts PairCounts::scaled(std::uint64_t factor) const {
    PairCounts out = *this;
    for (auto& v : out.pair) v *= factor;
    for (auto& v : out.codon) v *= factor;
    for (auto& v : out.aa_pair) v *= factor;
    for (auto& v : out.aa) v *= factor;
    out.total_codons *= factor;
    out.total_pairs *= factor;
    return out;
}

PairCounts count_pairs(std::span<const CodonSeq> corpus) {
    PairCounts counts;
    for (const auto& seq : corpus) counts.add(seq);
    return counts;
}

PairExpectation expected_counts(const PairCounts& counts) {
    PairExpectation out;
    const auto sense = GeneticCode::standard().sense_codons();
    for (Codon a : sense) {
        const int x = aa_of(a);
        for (Codon b : sense) {
            const int y = aa_of(b);
            const auto slot = pair_slot(a, b);
            out.observed[slot] = static_cast<double>(counts.pair[slot]);
            const double nx = static_cast<double>(counts.aa[x]);
            const double ny = static_cast<double>(counts.aa[y]);
            if (nx == 0.0 || ny == 0.0) continue;
            const double nxy =
                static_cast<double>(counts.aa_pair[static_cast<std::size_t>(x) * kAminoAcidCount + y]);
            out.expected[slot] = static_cast<double>(counts.codon[a.index()]) *
                                 static_cast<double>(counts.codon[b.index()]) / (nx * ny) * nxy;
        }
    }
    return out;
}

CpsTable scores_from_counts(const PairCounts& counts, const TableBuildOptions& options) {
    if (!(options.log_base > 0.0) || options.log_base == 1.0) {
        throw std::invalid_argument("log base must be positive and different from 1");
    }
    const double log_base = std::log(options.log_base);
    const double floor = options.floor_nat / log_base;
    const auto expectation = expected_counts(counts);

    CpsTable table;
    table.set_log_base(options.log_base);
    table.set_missing_score(floor);
    const auto sense = GeneticCode::standard().sense_codons();
    for (Codon a : sense) {
        for (Codon b : sense) {
            const auto slot = pair_slot(a, b);
            const double o = expectation.observed[slot];
            const double e = expectation.expected[slot];
            table.set_counts(a, b, o, e);
            if (o > 0.0) {
                table.set_score(a, b, std::log(o / e) / log_base);
            } else {
                table.set_score(a, b, floor);
                table.set_floored(a, b);
            }
        }
    }
    return table;
}

std::pair<CpsTable, PairCounts> build_cps_table(std::span<const CodonSeq> corpus,
                                                const TableBuildOptions& options) {
    if (corpus.empty()) throw DataError("empty corpus");
    PairCounts counts = count_pairs(corpus);
    if (counts.total_pairs == 0) throw DataError("corpus contains no codon pairs");
    CpsTable table = scores_from_counts(counts, options);
    table.set_source("corpus of " + std::to_string(corpus.size()) + " records, " +
                     std::to_string(counts.total_pairs) + " pairs");
    return {std::move(table), std::move(counts)};
}

CpsTable normalize_cps(const PairExpectation& counts, double floor_nat) {
    const double log_base = std::log(kNormalizedLogBase);
    const double floor = floor_nat / log_base;
    const auto sense = GeneticCode::standard().sense_codons();

    std::array<double, kAminoAcidPairSlots> sum_observed{};
    std::array<double, kAminoAcidPairSlots> sum_expected{};
    for (Codon a : sense) {
        for (Codon b : sense) {
            const auto group = static_cast<std::size_t>(aa_of(a)) * kAminoAcidCount + aa_of(b);
            sum_observed[group] += counts.observed[pair_slot(a, b)];
            sum_expected[group] += counts.expected[pair_slot(a, b)];
        }
    }

    CpsTable table;
    table.set_log_base(kNormalizedLogBase);
    table.set_missing_score(floor);
    for (Codon a : sense) {
        for (Codon b : sense) {
            const auto group = static_cast<std::size_t>(aa_of(a)) * kAminoAcidCount + aa_of(b);
            const auto slot = pair_slot(a, b);
            const double o = counts.observed[slot];
            if (sum_observed[group] > 0.0 && sum_expected[group] <= 0.0) {
                throw DataError("amino acid pair group of " + a.str() + b.str() +
                                " has observations but zero expected count");
            }
            const double coefficient =
                sum_expected[group] > 0.0 ? sum_observed[group] / sum_expected[group] : 0.0;
            const double e_nor = coefficient * counts.expected[slot];
            table.set_counts(a, b, o, e_nor);
            if (o > 0.0) {
                if (e_nor <= 0.0) {
                    throw DataError("pair " + a.str() + b.str() + " observed but has zero expected count");
                }
                table.set_score(a, b, std::log(o / e_nor) / log_base);
            } else {
                table.set_score(a, b, floor);
                table.set_floored(a, b);
            }
        }
    }
    return table;
}

CpsTable normalize_cps(const PairCounts& counts, double floor_nat) {
    return normalize_cps(expected_counts(counts), floor_nat);
}

double total_score(std::span<const Codon> codons, const CpsTable& table) noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < codons.size(); ++i) total += table.score(codons[i], codons[i + 1]);
    return total;
}

double cpb(const CodonSeq& seq, const CpsTable& table) {
    if (seq.size() < 2) throw DataError("CPB needs at least 2 codons, got " + std::to_string(seq.size()));
    return total_score(seq.codons(), table) / static_cast<double>(seq.n_pairs());
}

double swap_delta_total(std::span<const Codon> codons, std::size_t i, std::size_t j,
                        const CpsTable& table, std::uint64_t* lookups) noexcept {
    if (codons[i] == codons[j]) return 0.0;
    auto swapped = [&](std::size_t k) { return k == i ? codons[j] : k == j ? codons[i] : codons[k]; };

    // Pair p joins codons p and p+1; only pairs touching i or j change.
    std::size_t affected[4];
    std::size_t count = 0;
    auto note = [&](std::size_t p) {
        if (p + 1 >= codons.size()) return;
        for (std::size_t k = 0; k < count; ++k) {
            if (affected[k] == p) return;
        }
        affected[count++] = p;
    };
    if (i > 0) note(i - 1);
    note(i);
    if (j > 0) note(j - 1);
    note(j);

    double delta = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t p = affected[k];
        delta += table.score(swapped(p), swapped(p + 1)) - table.score(codons[p], codons[p + 1]);
    }
    if (lookups) *lookups += 2 * count;
    return delta;
}

double cpb_delta_swap(const CodonSeq& seq, std::size_t i, std::size_t j, const CpsTable& table) {
    if (seq.size() < 2) throw std::invalid_argument("sequence has no codon pairs");
    if (!(i < j) || j >= seq.size()) {
        throw std::invalid_argument("swap indices out of range: i=" + std::to_string(i) +
                                    " j=" + std::to_string(j) + " size=" + std::to_string(seq.size()));
    }
    const auto& code = GeneticCode::standard();
    if (code.amino_acid(seq[i]) != code.amino_acid(seq[j])) {
        throw std::invalid_argument("codons " + seq[i].str() + " and " + seq[j].str() +
                                    " encode different amino acids");
    }
    return swap_delta_total(seq.codons(), i, j, table) / static_cast<double>(seq.n_pairs());
}

CodonUsage CodonUsage::from_distribution(const CodonDistribution& dist) {
    const auto& code = GeneticCode::standard();
    CodonUsage usage;
    for (int aa = 0; aa < kAminoAcidCount; ++aa) {
        for (Codon c : code.synonyms(GeneticCode::kAminoAcids[aa])) usage.counts[aa].push_back(dist.count(c));
    }
    return usage;
}

CodonUsage CodonUsage::from_sequence(const CodonSeq& seq) {
    return from_distribution(extract_codon_distribution(seq));
}

NcResult effective_number_of_codons(const CodonUsage& usage) {
    const auto& code = GeneticCode::standard();
    NcResult result;
    bool all_within_range = true;
    for (int aa = 0; aa < kAminoAcidCount; ++aa) {
        const char symbol = GeneticCode::kAminoAcids[aa];
        const auto& counts = usage.counts[aa];
        std::uint64_t n = 0;
        for (auto c : counts) n += c;
        if (n == 0) {
            all_within_range = false;
            continue;
        }
        if (n < 2) {
            result.excluded.push_back({symbol, "n < 2"});
            all_within_range = false;
            continue;
        }
        const double total = static_cast<double>(n);
        double sum_sq = 0.0;
        for (auto c : counts) {
            const double p = static_cast<double>(c) / total;
            sum_sq += p * p;
        }
        const double homozygosity = (total * sum_sq - 1.0) / (total - 1.0);
        if (!(homozygosity > 0.0)) {
            result.excluded.push_back({symbol, "estimated homozygosity <= 0"});
            all_within_range = false;
            continue;
        }
        const double k = static_cast<double>(code.synonyms(symbol).size());
        if (homozygosity < 1.0 / k) all_within_range = false;
        result.contributions.emplace_back(symbol, 1.0 / homozygosity);
        result.nc += 1.0 / homozygosity;
    }
    result.full_range = all_within_range && result.contributions.size() == kAminoAcidCount;
    return result;
}

}  // namespace codonctx
