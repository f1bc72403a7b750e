#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "codonctx/genetic_code.hpp"

namespace codonctx {

inline constexpr std::size_t kPairSlots = kCodonCount * kCodonCount;

constexpr std::size_t pair_slot(Codon a, Codon b) noexcept {
    return static_cast<std::size_t>(a.index()) * kCodonCount + static_cast<std::size_t>(b.index());
}

// Scores for ordered codon pairs (5' codon, 3' codon), stored densely so that
// lookups in the optimizers' inner loops are a single array read. Pairs never
// assigned a score read as missing_score().
class CpsTable {
   public:
    CpsTable();

    double score(Codon a, Codon b) const noexcept { return scores_[pair_slot(a, b)]; }

    // Throws std::invalid_argument if either codon is a STOP codon.
    void set_score(Codon a, Codon b, double score);
    void set_counts(Codon a, Codon b, double observed, double expected);
    // Marks a pair whose score was set to the floor because it was never observed.
    void set_floored(Codon a, Codon b, bool floored = true);

    bool has_pair(Codon a, Codon b) const noexcept { return present_[pair_slot(a, b)]; }
    bool is_floored(Codon a, Codon b) const noexcept { return floored_[pair_slot(a, b)]; }
    bool has_counts() const noexcept { return has_counts_; }
    std::optional<double> observed(Codon a, Codon b) const;
    std::optional<double> expected(Codon a, Codon b) const;

    // Number of sense-codon pairs with an explicit score.
    std::size_t size() const noexcept { return present_count_; }
    std::size_t missing_sense_pairs() const noexcept { return 3721 - present_count_; }

    double missing_score() const noexcept { return missing_score_; }
    void set_missing_score(double score);

    double log_base() const noexcept { return log_base_; }
    void set_log_base(double base) { log_base_ = base; }
    const std::string& source() const noexcept { return source_; }
    void set_source(std::string source) { source_ = std::move(source); }

    // Same table with every score (including the missing score) negated.
    CpsTable negated() const;

   private:
    std::vector<double> scores_;
    std::vector<double> observed_;
    std::vector<double> expected_;
    std::vector<bool> present_;
    std::vector<bool> floored_;
    std::vector<bool> has_pair_counts_;
    std::size_t present_count_ = 0;
    bool has_counts_ = false;
    double missing_score_ = 0.0;
    double log_base_;
    std::string source_;
};

// Tab-separated table: PAIR<TAB>SCORE[<TAB>OBSERVED<TAB>EXPECTED], where PAIR
// is six ACGT characters. '#' starts a comment; "#log_base=<x>" and
// "#missing_score=<x>" header comments are honored. Throws TableError.
CpsTable read_cps_table(std::istream& in, const std::string& source = "stream");
CpsTable read_cps_table_file(const std::string& path);

// Emits every explicitly scored pair with full round-trip precision, except
// floored pairs that also have zero expected count; those are represented by
// the #missing_score header.
void write_cps_table(std::ostream& out, const CpsTable& table);

}  // namespace codonctx
