#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "codonctx/cps_table.hpp"
#include "codonctx/opt_sa.hpp"
#include "codonctx/optimization.hpp"

namespace codonctx {

inline constexpr std::uint64_t kDefaultStateCap = 5'000'000;
inline constexpr double kDefaultEnumerationCap = 1e6;

// Upper bound on the number of (position, last codon, residual counts)
// states the multiset dynamic program can visit.
double estimate_dp_states(const AminoAcidSeq& protein, const CodonDistribution& dist);

// Exact optimum under a fixed codon distribution by dynamic programming over
// residual codon multisets. For an amino acid with k codons in use only k - 1
// residuals are stored; the last follows from the remaining residue count.
// Throws CapExceeded when estimate_dp_states exceeds state_cap.
OptimizationResult optimize_exact_dp(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                     const CpsTable& table, Direction direction,
                                     std::uint64_t state_cap = kDefaultStateCap);

enum class InitialIncumbent {
    annealing,  // one annealing run with BnbOptions::annealing
    none,       // start from an unbounded incumbent
};

struct BnbOptions {
    std::optional<std::uint64_t> node_budget;  // unlimited when empty
    bool prune = true;
    InitialIncumbent initial = InitialIncumbent::annealing;
    SaParams annealing;
};

// Depth-first branch and bound. A child is cut when its prefix score plus the
// unconstrained suffix optimum cannot reach the incumbent; ties are explored.
// Children are visited best bound first. If the node budget runs out, the
// best encoding found so far is returned with optimal == false.
OptimizationResult optimize_bnb(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                const CpsTable& table, Direction direction,
                                const std::optional<CodonSeq>& incumbent = std::nullopt,
                                const BnbOptions& options = {});

// Number of distinct encodings with the given distribution: the product over
// amino acids of multinomial(n_X; counts of X's codons).
double count_encodings(const AminoAcidSeq& protein, const CodonDistribution& dist);

struct Encoding {
    CodonSeq sequence;
    double total_score = 0.0;
    double cpb = 0.0;
};

// Every encoding consistent with the distribution, in lexicographic order of
// codon choices. Throws CapExceeded above `cap` encodings.
std::vector<Encoding> enumerate_all(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                    const CpsTable& table, double cap = kDefaultEnumerationCap);

}  // namespace codonctx
