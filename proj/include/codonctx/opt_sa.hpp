#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "codonctx/cps_table.hpp"
#include "codonctx/optimization.hpp"

namespace codonctx {

struct SaParams {
    std::uint64_t iterations = 500'000;
    double initial_temperature = 1.0;  // total-score units
    double cooling_factor = 0.995;     // applied every iterations / 1000 draws
    std::uint64_t seed = 0;
    unsigned restarts = 5;
    // Verify the codon distribution and the incrementally maintained score
    // at every checkpoint; a violation throws std::logic_error.
    bool check_invariants = false;

    void validate() const;  // throws std::invalid_argument
};

struct SaCheckpoint {
    unsigned restart = 0;
    std::uint64_t iteration = 0;
    double current_cpb = 0.0;
    double best_cpb = 0.0;
    double temperature = 0.0;
    std::uint64_t accepted = 0;
};

struct SaTrace {
    std::vector<SaCheckpoint> checkpoints;
    // Largest gap seen between the incrementally maintained total and a full
    // recomputation at the end of a restart.
    double max_drift = 0.0;
};

struct SaOutcome {
    OptimizationResult result;
    SaTrace trace;
};

// Simulated annealing over swaps of synonymous codons, which keeps the codon
// distribution fixed. Restart r uses seed + r and starts from a fresh random
// assignment, except that restart 0 starts from `start` when given. The best
// encoding seen across all restarts is returned; ties keep the earlier
// restart. Throws DataError on an inconsistent distribution.
SaOutcome optimize_sa(const AminoAcidSeq& protein, const CodonDistribution& dist, const CpsTable& table,
                      Direction direction, const SaParams& params = {},
                      const std::optional<CodonSeq>& start = std::nullopt);

// iteration, current, best, temperature (plus restart and accepted columns).
void write_trace_tsv(std::ostream& out, const SaTrace& trace);

}  // namespace codonctx
