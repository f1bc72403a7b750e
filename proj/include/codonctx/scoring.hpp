#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "codonctx/cps_table.hpp"
#include "codonctx/sequence.hpp"

namespace codonctx {

inline constexpr std::size_t kAminoAcidPairSlots = kAminoAcidCount * kAminoAcidCount;

// Corpus tallies behind a codon pair score table.
struct PairCounts {
    std::vector<std::uint64_t> pair = std::vector<std::uint64_t>(kPairSlots, 0);
    std::array<std::uint64_t, kCodonCount> codon{};
    std::array<std::uint64_t, kAminoAcidPairSlots> aa_pair{};
    std::array<std::uint64_t, kAminoAcidCount> aa{};
    std::uint64_t total_codons = 0;
    std::uint64_t total_pairs = 0;

    // Tallies one record; pairs never span record boundaries.
    void add(const CodonSeq& seq);
    PairCounts scaled(std::uint64_t factor) const;
};

// Observed and expected counts per ordered pair slot (pair_slot(a, b)).
struct PairExpectation {
    std::vector<double> observed = std::vector<double>(kPairSlots, 0.0);
    std::vector<double> expected = std::vector<double>(kPairSlots, 0.0);
};

// E_AB = N_A * N_B / (N_X * N_Y) * N_XY, with X, Y the amino acids of A, B.
PairExpectation expected_counts(const PairCounts& counts);

struct TableBuildOptions {
    double log_base = std::numbers::e;
    // Score given to never-observed pairs, in natural-log units; converted to
    // the table's base.
    double floor_nat = -10.0;
};

PairCounts count_pairs(std::span<const CodonSeq> corpus);

// Scores every sense pair as log_base(O / E). Pairs with O == 0 get the floor.
CpsTable scores_from_counts(const PairCounts& counts, const TableBuildOptions& options = {});

// Throws DataError on an empty corpus.
std::pair<CpsTable, PairCounts> build_cps_table(std::span<const CodonSeq> corpus,
                                                const TableBuildOptions& options = {});

inline constexpr double kNormalizedLogBase = 1.5;

// Rescales expected counts within each amino-acid-pair group so that the
// group's expected total equals its observed total, then scores with log
// base 1.5. Groups with no observations keep the floor; a group with
// observations but zero expectation throws DataError.
CpsTable normalize_cps(const PairExpectation& counts, double floor_nat = -10.0);
CpsTable normalize_cps(const PairCounts& counts, double floor_nat = -10.0);

// Sum of pair scores along the sequence, accumulated 5' to 3'.
double total_score(std::span<const Codon> codons, const CpsTable& table) noexcept;

// Mean pair score. Throws DataError for fewer than two codons.
double cpb(const CodonSeq& seq, const CpsTable& table);

// Change in total pair score from exchanging the codons at i and j, touching
// only the pairs adjacent to i and j. No argument checking. If `lookups` is
// given, it is incremented by the number of table reads performed.
double swap_delta_total(std::span<const Codon> codons, std::size_t i, std::size_t j,
                        const CpsTable& table, std::uint64_t* lookups = nullptr) noexcept;

// CPB(after swapping i and j) - CPB(before). Requires i < j < size and the
// two codons to be synonymous; throws std::invalid_argument otherwise.
double cpb_delta_swap(const CodonSeq& seq, std::size_t i, std::size_t j, const CpsTable& table);

// Synonymous codon usage, per amino acid in GeneticCode::synonyms order.
struct CodonUsage {
    std::array<std::vector<std::uint64_t>, kAminoAcidCount> counts;

    static CodonUsage from_sequence(const CodonSeq& seq);
    static CodonUsage from_distribution(const CodonDistribution& dist);
};

struct NcExclusion {
    char amino_acid;
    std::string reason;
};

struct NcResult {
    double nc = 0.0;
    std::vector<std::pair<char, double>> contributions;  // per amino acid, 1/F
    std::vector<NcExclusion> excluded;                   // absent amino acids are not listed
    // All 20 amino acids contribute and each F >= 1/k, so 20 <= nc <= 61.
    bool full_range = false;
};

// Effective number of codons as the sum of per-amino-acid 1/F, where
// F = (n * sum p_i^2 - 1) / (n - 1).
NcResult effective_number_of_codons(const CodonUsage& usage);

}  // namespace codonctx
