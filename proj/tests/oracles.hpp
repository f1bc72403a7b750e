#pragma once

// Test-only generators and brute-force oracles. Nothing here calls into the
// optimizers; the enumerations walk synonym choices directly.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "codonctx/cps_table.hpp"
#include "codonctx/genetic_code.hpp"
#include "codonctx/sequence.hpp"

namespace codonctx::testing {

inline CpsTable random_table(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    CpsTable table;
    for (Codon a : GeneticCode::standard().sense_codons()) {
        for (Codon b : GeneticCode::standard().sense_codons()) table.set_score(a, b, u(rng));
    }
    return table;
}

// Random protein; residues drawn so that multi-codon amino acids repeat often
// enough to make the fixed-distribution problems non-trivial.
inline AminoAcidSeq random_protein(std::mt19937_64& rng, std::size_t length,
                                   const std::string& alphabet = "LSRAGKVTEM") {
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string s;
    for (std::size_t i = 0; i < length; ++i) s.push_back(alphabet[pick(rng)]);
    return AminoAcidSeq(s);
}

inline CodonSeq random_encoding(std::mt19937_64& rng, const AminoAcidSeq& protein) {
    std::vector<Codon> out;
    for (std::size_t i = 0; i < protein.size(); ++i) {
        auto syn = GeneticCode::standard().synonyms(protein[i]);
        std::uniform_int_distribution<std::size_t> pick(0, syn.size() - 1);
        out.push_back(syn[pick(rng)]);
    }
    return CodonSeq(out);
}

inline double naive_total(const std::vector<Codon>& codons, const CpsTable& table) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < codons.size(); ++i) total += table.score(codons[i], codons[i + 1]);
    return total;
}

inline double naive_cpb(const CodonSeq& seq, const CpsTable& table) {
    std::vector<Codon> v(seq.begin(), seq.end());
    return naive_total(v, table) / static_cast<double>(seq.size() - 1);
}

struct BruteForce {
    double best_total;
    std::vector<Codon> best;
    std::size_t count = 0;
};

// Every synonymous encoding (odometer order). `keep` filters candidates,
// e.g. to a fixed distribution.
template <typename Keep>
BruteForce brute_force(const AminoAcidSeq& protein, const CpsTable& table, bool maximize, Keep keep) {
    const auto& code = GeneticCode::standard();
    const std::size_t n = protein.size();
    std::vector<std::size_t> digit(n, 0);
    std::vector<Codon> cur(n);
    BruteForce out{0.0, {}, 0};
    bool have = false;
    while (true) {
        for (std::size_t i = 0; i < n; ++i) cur[i] = code.synonyms(protein[i])[digit[i]];
        if (keep(cur)) {
            ++out.count;
            const double t = naive_total(cur, table);
            if (!have || (maximize ? t > out.best_total : t < out.best_total)) {
                out.best_total = t;
                out.best = cur;
                have = true;
            }
        }
        std::size_t i = 0;
        while (i < n && ++digit[i] == code.synonyms(protein[i]).size()) digit[i++] = 0;
        if (i == n) break;
    }
    return out;
}

inline BruteForce brute_force_unconstrained(const AminoAcidSeq& protein, const CpsTable& table, bool maximize) {
    return brute_force(protein, table, maximize, [](const std::vector<Codon>&) { return true; });
}

inline BruteForce brute_force_fixed(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                    const CpsTable& table, bool maximize) {
    return brute_force(protein, table, maximize, [&](const std::vector<Codon>& cur) {
        CodonDistribution d;
        for (Codon c : cur) d.add(c);
        return d == dist;
    });
}

}  // namespace codonctx::testing
