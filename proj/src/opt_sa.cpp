#include "codonctx/opt_sa.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "codonctx/errors.hpp"
#include "codonctx/scoring.hpp"

namespace codonctx {

void SaParams::validate() const {
    if (iterations < 1) throw std::invalid_argument("annealing needs at least 1 iteration");
    if (!(cooling_factor > 0.0 && cooling_factor < 1.0)) {
        throw std::invalid_argument("cooling factor must lie in (0, 1)");
    }
    if (!(initial_temperature > 0.0)) throw std::invalid_argument("initial temperature must be positive");
    if (restarts < 1) throw std::invalid_argument("annealing needs at least 1 restart");
}

SaOutcome optimize_sa(const AminoAcidSeq& protein, const CodonDistribution& dist, const CpsTable& table,
                      Direction direction, const SaParams& params, const std::optional<CodonSeq>& start) {
    params.validate();
    if (protein.size() < 2) {
        throw DataError("protein must have at least 2 residues, got " + std::to_string(protein.size()));
    }
    require_consistent(protein, dist);
    if (start && (translate(*start) != protein || extract_codon_distribution(*start) != dist)) {
        throw std::invalid_argument("start encoding does not match the protein and distribution");
    }

    const auto& code = GeneticCode::standard();
    const auto positions = positions_by_amino_acid(protein);
    std::vector<int> movable;
    for (int aa = 0; aa < kAminoAcidCount; ++aa) {
        if (positions[aa].size() < 2) continue;
        int distinct = 0;
        for (Codon c : code.synonyms(GeneticCode::kAminoAcids[aa])) distinct += dist.count(c) > 0;
        if (distinct >= 2) movable.push_back(aa);
    }

    const double n_pairs = static_cast<double>(protein.size() - 1);
    SaOutcome outcome;
    outcome.result.method = "sa";
    outcome.result.direction = direction;

    if (movable.empty()) {
        CodonSeq only = start ? *start : random_synonymous_encoding(protein, dist, params.seed);
        outcome.result.total_score = total_score(only.codons(), table);
        outcome.result.cpb = outcome.result.total_score / n_pairs;
        outcome.result.sequence = std::move(only);
        outcome.result.optimal = true;  // single feasible encoding
        return outcome;
    }

    const std::uint64_t cool_every = std::max<std::uint64_t>(1, params.iterations / 1000);
    std::vector<Codon> best_overall;
    double best_overall_total = 0.0;
    // Best total reported in the trace; monotone across restarts.
    std::optional<double> trace_best;
    auto& stats = outcome.result.stats;

    for (unsigned r = 0; r < params.restarts; ++r) {
        std::mt19937_64 rng(params.seed + r);
        std::vector<Codon> current;
        if (r == 0 && start) {
            current.assign(start->begin(), start->end());
        } else {
            auto initial = random_synonymous_encoding(protein, dist, rng);
            current.assign(initial.begin(), initial.end());
        }
        double current_total = total_score(current, table);
        std::vector<Codon> best = current;
        double best_total = current_total;
        double temperature = params.initial_temperature;
        std::uint64_t accepted = 0;

        std::uniform_int_distribution<std::size_t> pick_aa(0, movable.size() - 1);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        auto checkpoint = [&](std::uint64_t iteration) {
            if (!trace_best || improves(direction, best_total, *trace_best)) trace_best = best_total;
            outcome.trace.checkpoints.push_back(
                {r, iteration, current_total / n_pairs, *trace_best / n_pairs, temperature, accepted});
            if (params.check_invariants) {
                CodonSeq snapshot(current);
                if (extract_codon_distribution(snapshot) != dist || translate(snapshot) != protein) {
                    throw std::logic_error("annealing move broke the codon distribution");
                }
                if (std::abs(total_score(current, table) - current_total) > 1e-9) {
                    throw std::logic_error("incremental score drifted from full recomputation");
                }
            }
        };

        for (std::uint64_t it = 1; it <= params.iterations; ++it) {
            const auto& sites = positions[movable[pick_aa(rng)]];
            std::uniform_int_distribution<std::size_t> pick_first(0, sites.size() - 1);
            std::uniform_int_distribution<std::size_t> pick_second(0, sites.size() - 2);
            std::size_t a = pick_first(rng);
            std::size_t b = pick_second(rng);
            if (b >= a) ++b;
            const std::size_t i = sites[std::min(a, b)];
            const std::size_t j = sites[std::max(a, b)];

            // Identical codons: the draw spends the iteration without a move.
            if (current[i] != current[j]) {
                const double delta = swap_delta_total(current, i, j, table, &stats.pair_evaluations);
                const double gain = direction == Direction::maximize ? delta : -delta;
                if (gain >= 0.0 || unit(rng) < std::exp(gain / temperature)) {
                    std::swap(current[i], current[j]);
                    current_total += delta;
                    ++accepted;
                    if (improves(direction, current_total, best_total)) {
                        best_total = current_total;
                        best = current;
                    }
                }
            }
            if (it % cool_every == 0) {
                temperature *= params.cooling_factor;
                checkpoint(it);
            }
        }
        if (params.iterations % cool_every != 0) checkpoint(params.iterations);

        outcome.trace.max_drift =
            std::max(outcome.trace.max_drift, std::abs(total_score(current, table) - current_total));
        stats.iterations += params.iterations;
        stats.accepted_moves += accepted;

        const double exact_best = total_score(best, table);
        if (r == 0 || improves(direction, exact_best, best_overall_total)) {
            best_overall_total = exact_best;
            best_overall = std::move(best);
        }
    }

    outcome.result.sequence = CodonSeq(std::move(best_overall));
    outcome.result.total_score = best_overall_total;
    outcome.result.cpb = best_overall_total / n_pairs;
    outcome.result.optimal = false;
    return outcome;
}

void write_trace_tsv(std::ostream& out, const SaTrace& trace) {
    out << "restart\titeration\tcurrent\tbest\ttemperature\taccepted\n";
    for (const auto& c : trace.checkpoints) {
        out << c.restart << '\t' << c.iteration << '\t' << c.current_cpb << '\t' << c.best_cpb << '\t'
            << c.temperature << '\t' << c.accepted << '\n';
    }
}

}  // namespace codonctx
