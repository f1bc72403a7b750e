#include "codonctx/opt_dp.hpp"

#include <algorithm>
#include <limits>

#include "codonctx/errors.hpp"
#include "codonctx/scoring.hpp"

namespace codonctx {

Direction parse_direction(std::string_view text) {
    if (text == "max" || text == "maximize") return Direction::maximize;
    if (text == "min" || text == "minimize") return Direction::minimize;
    throw std::invalid_argument("unknown direction '" + std::string(text) + "' (expected max or min)");
}

std::string_view to_string(Direction direction) {
    return direction == Direction::maximize ? "max" : "min";
}

namespace {

void require_length(const AminoAcidSeq& protein) {
    if (protein.size() < 2) {
        throw DataError("protein must have at least 2 residues, got " + std::to_string(protein.size()));
    }
}

}  // namespace

DpLattice build_lattice(const AminoAcidSeq& protein, const CpsTable& table, Direction direction) {
    require_length(protein);
    const auto& code = GeneticCode::standard();
    DpLattice lattice;
    lattice.columns.resize(protein.size());
    for (Codon c : code.synonyms(protein[0])) lattice.columns[0].push_back({c, 0.0, -1});

    for (std::size_t i = 1; i < protein.size(); ++i) {
        const auto& prev = lattice.columns[i - 1];
        auto& column = lattice.columns[i];
        for (Codon c : code.synonyms(protein[i])) {
            DpLattice::Entry entry{c, 0.0, -1};
            for (std::size_t k = 0; k < prev.size(); ++k) {
                const double candidate = prev[k].best_prefix_score + table.score(prev[k].codon, c);
                ++lattice.pair_evaluations;
                if (entry.parent < 0 || improves(direction, candidate, entry.best_prefix_score)) {
                    entry.best_prefix_score = candidate;
                    entry.parent = static_cast<int>(k);
                }
            }
            column.push_back(entry);
        }
    }
    return lattice;
}

OptimizationResult optimize_unconstrained(const AminoAcidSeq& protein, const CpsTable& table,
                                          Direction direction) {
    DpLattice lattice = build_lattice(protein, table, direction);
    const auto& last = lattice.columns.back();
    std::size_t best = 0;
    for (std::size_t k = 1; k < last.size(); ++k) {
        if (improves(direction, last[k].best_prefix_score, last[best].best_prefix_score)) best = k;
    }

    std::vector<Codon> codons(protein.size());
    int k = static_cast<int>(best);
    for (std::size_t i = protein.size(); i-- > 0;) {
        const auto& entry = lattice.columns[i][static_cast<std::size_t>(k)];
        codons[i] = entry.codon;
        k = entry.parent;
    }

    OptimizationResult result;
    result.sequence = CodonSeq(std::move(codons));
    result.total_score = last[best].best_prefix_score;
    result.cpb = result.total_score / static_cast<double>(protein.size() - 1);
    result.method = "dp";
    result.direction = direction;
    result.optimal = true;
    result.stats.pair_evaluations = lattice.pair_evaluations;
    return result;
}

SuffixBounds suffix_bounds(const AminoAcidSeq& protein, const CpsTable& table, Direction direction) {
    require_length(protein);
    const auto& code = GeneticCode::standard();
    const std::size_t n = protein.size();
    SuffixBounds bounds;
    bounds.values_.resize(n);
    bounds.codons_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        bounds.values_[i].fill(std::numeric_limits<double>::quiet_NaN());
        bounds.codons_[i] = code.synonyms(protein[i]);
    }
    for (Codon c : bounds.codons_[n - 1]) bounds.values_[n - 1][c.index()] = 0.0;

    for (std::size_t i = n - 1; i-- > 0;) {
        for (Codon c : bounds.codons_[i]) {
            bool first = true;
            double best = 0.0;
            for (Codon next : bounds.codons_[i + 1]) {
                const double candidate = table.score(c, next) + bounds.values_[i + 1][next.index()];
                ++bounds.pair_evaluations_;
                if (first || improves(direction, candidate, best)) {
                    best = candidate;
                    first = false;
                }
            }
            bounds.values_[i][c.index()] = best;
        }
    }
    return bounds;
}

}  // namespace codonctx
