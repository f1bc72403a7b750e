#include "codonctx/opt_fixed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "codonctx/errors.hpp"
#include "codonctx/opt_dp.hpp"
#include "codonctx/scoring.hpp"

namespace codonctx {

namespace {

void require_length(const AminoAcidSeq& protein) {
    if (protein.size() < 2) {
        throw DataError("protein must have at least 2 residues, got " + std::to_string(protein.size()));
    }
}

// Codons of `aa` with a positive count in the distribution, lexicographic.
std::vector<Codon> used_synonyms(char aa, const CodonDistribution& dist) {
    std::vector<Codon> out;
    for (Codon c : GeneticCode::standard().synonyms(aa)) {
        if (dist.count(c) > 0) out.push_back(c);
    }
    return out;
}

// Number of vectors u with 0 <= u_j <= bounds_j and sum u_j == total.
double bounded_compositions(const std::vector<std::uint32_t>& bounds, std::uint32_t total) {
    std::vector<double> ways(total + 1, 0.0);
    ways[0] = 1.0;
    for (auto bound : bounds) {
        std::vector<double> next(total + 1, 0.0);
        for (std::uint32_t s = 0; s <= total; ++s) {
            if (ways[s] == 0.0) continue;
            for (std::uint32_t u = 0; u <= bound && s + u <= total; ++u) next[s + u] += ways[s];
        }
        ways = std::move(next);
    }
    return ways[total];
}

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint16_t>& key) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto v : key) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Slack for the pruning test so that rounding differences between the
// suffix-bound sum and the left-to-right total never cut an optimal leaf.
double prune_slack(double incumbent) { return 1e-9 * std::max(1.0, std::abs(incumbent)); }

}  // namespace

double estimate_dp_states(const AminoAcidSeq& protein, const CodonDistribution& dist) {
    require_consistent(protein, dist);
    const std::size_t n = protein.size();
    std::array<std::vector<std::uint32_t>, kAminoAcidCount> bounds;
    for (int aa = 0; aa < kAminoAcidCount; ++aa) {
        for (Codon c : used_synonyms(GeneticCode::kAminoAcids[aa], dist)) bounds[aa].push_back(dist.count(c));
    }
    std::array<std::uint32_t, kAminoAcidCount> consumed{};
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const int aa = GeneticCode::amino_acid_index(protein[i]);
        ++consumed[aa];
        double layer = static_cast<double>(bounds[aa].size());
        for (int x = 0; x < kAminoAcidCount; ++x) {
            if (consumed[x] > 0) layer *= bounded_compositions(bounds[x], consumed[x]);
        }
        total += layer;
    }
    return total;
}

OptimizationResult optimize_exact_dp(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                     const CpsTable& table, Direction direction, std::uint64_t state_cap) {
    require_length(protein);
    require_consistent(protein, dist);
    const double estimate = estimate_dp_states(protein, dist);
    if (estimate > static_cast<double>(state_cap)) {
        std::ostringstream msg;
        msg << "exact dynamic program would need up to " << estimate << " states (cap " << state_cap << ")";
        throw CapExceeded(msg.str(), estimate, static_cast<double>(state_cap));
    }

    const std::size_t n = protein.size();

    // Residual slots: every used codon except the last of its amino acid.
    std::array<int, kCodonCount> slot_of;
    slot_of.fill(-1);
    std::array<std::vector<Codon>, kAminoAcidCount> used;
    std::size_t slots = 0;
    for (int aa = 0; aa < kAminoAcidCount; ++aa) {
        used[aa] = used_synonyms(GeneticCode::kAminoAcids[aa], dist);
        for (std::size_t k = 0; k + 1 < used[aa].size(); ++k) slot_of[used[aa][k].index()] = static_cast<int>(slots++);
    }

    // remaining[i][aa]: occurrences of aa at positions > i.
    std::vector<std::array<std::uint32_t, kAminoAcidCount>> remaining(n);
    {
        std::array<std::uint32_t, kAminoAcidCount> tail{};
        for (std::size_t i = n; i-- > 0;) {
            remaining[i] = tail;
            ++tail[GeneticCode::amino_acid_index(protein[i])];
        }
    }

    struct State {
        std::vector<std::uint16_t> residual;  // per slot
        Codon last;
        double value;
        std::int64_t parent;
    };
    std::vector<std::vector<State>> layers(n);
    std::uint64_t pair_evaluations = 0;

    std::vector<std::uint16_t> full(slots);
    for (int aa = 0; aa < kAminoAcidCount; ++aa) {
        for (Codon c : used[aa]) {
            if (slot_of[c.index()] >= 0) full[slot_of[c.index()]] = static_cast<std::uint16_t>(dist.count(c));
        }
    }

    // Residual count of codon c of amino acid aa after position i, given a
    // state's stored slots. The untracked codon takes what the others leave.
    auto residual_of = [&](const std::vector<std::uint16_t>& residual, int aa, Codon c,
                           std::uint32_t aa_remaining) -> std::uint32_t {
        if (slot_of[c.index()] >= 0) return residual[slot_of[c.index()]];
        std::uint32_t tracked = 0;
        for (Codon o : used[aa]) {
            if (slot_of[o.index()] >= 0) tracked += residual[slot_of[o.index()]];
        }
        return aa_remaining - tracked;
    };

    {
        const int aa = GeneticCode::amino_acid_index(protein[0]);
        for (Codon c : used[aa]) {
            State s{full, c, 0.0, -1};
            if (slot_of[c.index()] >= 0) --s.residual[slot_of[c.index()]];
            layers[0].push_back(std::move(s));
        }
    }

    for (std::size_t i = 1; i < n; ++i) {
        const int aa = GeneticCode::amino_acid_index(protein[i]);
        // Residues of aa still to place once position i is included.
        const std::uint32_t aa_left = remaining[i - 1][aa];
        std::unordered_map<std::vector<std::uint16_t>, std::size_t, KeyHash> index;
        auto& next = layers[i];
        const auto& prev = layers[i - 1];
        for (std::size_t p = 0; p < prev.size(); ++p) {
            const State& s = prev[p];
            for (Codon c : used[aa]) {
                if (residual_of(s.residual, aa, c, aa_left) == 0) continue;
                std::vector<std::uint16_t> key = s.residual;
                if (slot_of[c.index()] >= 0) --key[slot_of[c.index()]];
                key.push_back(static_cast<std::uint16_t>(c.index()));
                const double value = s.value + table.score(s.last, c);
                ++pair_evaluations;
                auto [it, inserted] = index.try_emplace(std::move(key), next.size());
                if (inserted) {
                    std::vector<std::uint16_t> residual(it->first.begin(), it->first.end() - 1);
                    next.push_back({std::move(residual), c, value, static_cast<std::int64_t>(p)});
                } else if (improves(direction, value, next[it->second].value)) {
                    next[it->second].value = value;
                    next[it->second].parent = static_cast<std::int64_t>(p);
                }
            }
        }
        if (next.empty()) throw std::logic_error("multiset dynamic program lost all states");
    }

    const auto& last = layers.back();
    std::size_t best = 0;
    for (std::size_t k = 1; k < last.size(); ++k) {
        if (improves(direction, last[k].value, last[best].value)) best = k;
    }

    std::vector<Codon> codons(n);
    std::int64_t k = static_cast<std::int64_t>(best);
    std::uint64_t states = 0;
    for (const auto& layer : layers) states += layer.size();
    for (std::size_t i = n; i-- > 0;) {
        codons[i] = layers[i][static_cast<std::size_t>(k)].last;
        k = layers[i][static_cast<std::size_t>(k)].parent;
    }

    OptimizationResult result;
    result.sequence = CodonSeq(std::move(codons));
    // Recomputed left to right so equal encodings report identical totals
    // regardless of method.
    result.total_score = total_score(result.sequence.codons(), table);
    result.cpb = result.total_score / static_cast<double>(n - 1);
    result.method = "exact";
    result.direction = direction;
    result.optimal = true;
    result.stats.states = states;
    result.stats.pair_evaluations = pair_evaluations;
    return result;
}

namespace {

class BranchAndBound {
   public:
    BranchAndBound(const AminoAcidSeq& protein, const CodonDistribution& dist, const CpsTable& table,
                   Direction direction, const BnbOptions& options)
        : protein_(protein),
          table_(table),
          direction_(direction),
          options_(options),
          bounds_(suffix_bounds(protein, table, direction)),
          path_(protein.size()) {
        for (int i = 0; i < kCodonCount; ++i) residual_[i] = dist.count(Codon::from_index(i));
        for (std::size_t i = 0; i < protein.size(); ++i) {
            synonyms_.push_back(used_synonyms(protein[i], dist));
        }
        stats_.pair_evaluations = bounds_.pair_evaluations();
    }

    void seed(const CodonSeq& incumbent) {
        best_ = std::vector<Codon>(incumbent.begin(), incumbent.end());
        best_total_ = total_score(incumbent.codons(), table_);
        have_best_ = true;
    }

    void run() { expand(0, 0.0); }

    bool exhausted() const { return exhausted_; }
    bool have_best() const { return have_best_; }
    const std::vector<Codon>& best() const { return best_; }
    const SearchStats& stats() const { return stats_; }

   private:
    bool may_reach(double bound) const {
        if (!have_best_) return true;
        const double slack = prune_slack(best_total_);
        return direction_ == Direction::maximize ? bound >= best_total_ - slack : bound <= best_total_ + slack;
    }

    void expand(std::size_t depth, double prefix) {
        if (depth == path_.size()) {
            // Recompute left to right so the incumbent's total is exact for
            // its encoding, independent of the search order.
            const double total = total_score(path_, table_);
            if (!have_best_ || improves(direction_, total, best_total_)) {
                best_ = path_;
                best_total_ = total;
                have_best_ = true;
            }
            return;
        }
        if (options_.node_budget && stats_.nodes_expanded >= *options_.node_budget) {
            exhausted_ = true;
            return;
        }
        ++stats_.nodes_expanded;

        struct Child {
            Codon codon;
            double prefix;
            double bound;
        };
        std::array<Child, 6> children;
        std::size_t count = 0;
        for (Codon c : synonyms_[depth]) {
            if (residual_[c.index()] == 0) continue;
            double child_prefix = prefix;
            if (depth > 0) {
                child_prefix += table_.score(path_[depth - 1], c);
                ++stats_.pair_evaluations;
            }
            children[count++] = {c, child_prefix, child_prefix + bounds_.at(depth, c)};
        }
        std::stable_sort(children.begin(), children.begin() + count, [&](const Child& a, const Child& b) {
            return improves(direction_, a.bound, b.bound);
        });

        for (std::size_t k = 0; k < count; ++k) {
            const Child& child = children[k];
            if (options_.prune && !may_reach(child.bound)) {
                ++stats_.nodes_pruned;
                continue;
            }
            --residual_[child.codon.index()];
            path_[depth] = child.codon;
            expand(depth + 1, child.prefix);
            ++residual_[child.codon.index()];
            if (exhausted_) return;
        }
    }

    const AminoAcidSeq& protein_;
    const CpsTable& table_;
    Direction direction_;
    BnbOptions options_;
    SuffixBounds bounds_;
    std::array<std::uint32_t, kCodonCount> residual_{};
    std::vector<std::vector<Codon>> synonyms_;
    std::vector<Codon> path_;
    std::vector<Codon> best_;
    double best_total_ = 0.0;
    bool have_best_ = false;
    bool exhausted_ = false;
    SearchStats stats_;
};

}  // namespace

OptimizationResult optimize_bnb(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                const CpsTable& table, Direction direction,
                                const std::optional<CodonSeq>& incumbent, const BnbOptions& options) {
    require_length(protein);
    require_consistent(protein, dist);
    if (incumbent && (translate(*incumbent) != protein || extract_codon_distribution(*incumbent) != dist)) {
        throw std::invalid_argument("incumbent is not a feasible encoding under the distribution");
    }

    BranchAndBound search(protein, dist, table, direction, options);
    if (incumbent) {
        search.seed(*incumbent);
    } else if (options.initial == InitialIncumbent::annealing) {
        search.seed(optimize_sa(protein, dist, table, direction, options.annealing).result.sequence);
    }
    search.run();

    OptimizationResult result;
    if (search.have_best()) {
        result.sequence = CodonSeq(search.best());
    } else {
        result.sequence = random_synonymous_encoding(protein, dist, std::uint64_t{0});
    }
    result.total_score = total_score(result.sequence.codons(), table);
    result.cpb = result.total_score / static_cast<double>(protein.size() - 1);
    result.method = "bnb";
    result.direction = direction;
    result.optimal = !search.exhausted();
    result.stats = search.stats();
    return result;
}

double count_encodings(const AminoAcidSeq& protein, const CodonDistribution& dist) {
    require_consistent(protein, dist);
    double total = 1.0;
    for (int aa = 0; aa < kAminoAcidCount; ++aa) {
        // multinomial as a product of binomials, C(placed + k, k)
        std::uint64_t placed = 0;
        for (Codon c : used_synonyms(GeneticCode::kAminoAcids[aa], dist)) {
            const std::uint32_t k = dist.count(c);
            for (std::uint32_t t = 1; t <= k; ++t) {
                total *= static_cast<double>(placed + t) / static_cast<double>(t);
            }
            placed += k;
        }
    }
    return std::round(total);
}

std::vector<Encoding> enumerate_all(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                    const CpsTable& table, double cap) {
    require_length(protein);
    const double count = count_encodings(protein, dist);
    if (count > cap) {
        std::ostringstream msg;
        msg << "enumeration would produce " << count << " encodings (cap " << cap << ")";
        throw CapExceeded(msg.str(), count, cap);
    }
    const std::size_t n = protein.size();
    std::vector<std::vector<Codon>> choices(n);
    for (std::size_t i = 0; i < n; ++i) choices[i] = used_synonyms(protein[i], dist);
    std::array<std::uint32_t, kCodonCount> residual{};
    for (int i = 0; i < kCodonCount; ++i) residual[i] = dist.count(Codon::from_index(i));

    std::vector<Encoding> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<Codon> path(n);
    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            Encoding e{CodonSeq(path), total_score(path, table), 0.0};
            e.cpb = e.total_score / static_cast<double>(n - 1);
            out.push_back(std::move(e));
            return;
        }
        for (Codon c : choices[depth]) {
            if (residual[c.index()] == 0) continue;
            --residual[c.index()];
            path[depth] = c;
            self(self, depth + 1);
            ++residual[c.index()];
        }
    };
    recurse(recurse, 0);
    return out;
}

}  // namespace codonctx
