#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "codonctx/cps_table.hpp"
#include "codonctx/optimization.hpp"

namespace codonctx {

// Viterbi-style lattice over synonymous codons. Column i holds one entry per
// synonym of residue i, in lexicographic codon order.
struct DpLattice {
    struct Entry {
        Codon codon;
        double best_prefix_score = 0.0;  // total pair score of the best prefix ending here
        int parent = -1;                 // entry index in column i - 1
    };
    std::vector<std::vector<Entry>> columns;
    std::uint64_t pair_evaluations = 0;
};

// Forward pass. Parents are chosen by strict improvement while scanning
// synonyms in lexicographic order, so ties resolve to the smallest codon.
// Throws DataError for proteins shorter than 2 residues.
DpLattice build_lattice(const AminoAcidSeq& protein, const CpsTable& table, Direction direction);

// Optimal CPB over all synonymous encodings, in time linear in the length.
OptimizationResult optimize_unconstrained(const AminoAcidSeq& protein, const CpsTable& table,
                                          Direction direction);

// best(i, k): optimal total pair score of positions i..end over all encodings
// that place synonym k of residue i at position i. Zero at the last position.
class SuffixBounds {
   public:
    double at(std::size_t position, std::size_t synonym) const {
        return values_[position][codons_[position][synonym].index()];
    }
    // Codon must be a synonym of the residue at `position`; NaN otherwise.
    double at(std::size_t position, Codon codon) const noexcept {
        return values_[position][codon.index()];
    }
    std::size_t size() const noexcept { return values_.size(); }
    std::uint64_t pair_evaluations() const noexcept { return pair_evaluations_; }

   private:
    friend SuffixBounds suffix_bounds(const AminoAcidSeq&, const CpsTable&, Direction);
    std::vector<std::array<double, kCodonCount>> values_;
    std::vector<std::span<const Codon>> codons_;
    std::uint64_t pair_evaluations_ = 0;
};

SuffixBounds suffix_bounds(const AminoAcidSeq& protein, const CpsTable& table, Direction direction);

}  // namespace codonctx
