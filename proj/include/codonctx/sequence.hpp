#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codonctx/genetic_code.hpp"

namespace codonctx {

// Ordered list of sense codons. Construction rejects STOP codons; operations
// that need at least one codon pair check the length themselves.
class CodonSeq {
   public:
    CodonSeq() = default;
    explicit CodonSeq(std::vector<Codon> codons);
    // Parses a concatenation of ACGT triplets ("ATGTGG").
    static CodonSeq from_string(std::string_view nucleotides);

    std::size_t size() const noexcept { return codons_.size(); }
    // Adjacent codon pairs: size() - 1, or 0 for an empty sequence.
    std::size_t n_pairs() const noexcept { return codons_.empty() ? 0 : codons_.size() - 1; }
    Codon operator[](std::size_t i) const { return codons_[i]; }
    std::span<const Codon> codons() const noexcept { return codons_; }
    auto begin() const noexcept { return codons_.begin(); }
    auto end() const noexcept { return codons_.end(); }

    std::string str() const;

    bool operator==(const CodonSeq&) const = default;

   private:
    std::vector<Codon> codons_;
};

// Protein over the 20-letter alphabet; STOP and unknown symbols are rejected.
class AminoAcidSeq {
   public:
    AminoAcidSeq() = default;
    explicit AminoAcidSeq(std::string residues);

    std::size_t size() const noexcept { return residues_.size(); }
    char operator[](std::size_t i) const { return residues_[i]; }
    const std::string& str() const noexcept { return residues_; }

    bool operator==(const AminoAcidSeq&) const = default;

   private:
    std::string residues_;
};

// Per-codon usage counts that a constrained encoding must reproduce exactly.
class CodonDistribution {
   public:
    CodonDistribution() { counts_.fill(0); }

    std::uint32_t count(Codon c) const noexcept { return counts_[c.index()]; }
    void set(Codon c, std::uint32_t n) { counts_[c.index()] = n; }
    void add(Codon c, std::uint32_t n = 1) { counts_[c.index()] += n; }
    std::uint64_t total() const noexcept;

    // True when, for every amino acid, the synonymous counts sum to the
    // amino acid's occurrence count in the protein, and no STOP codon is used.
    bool consistent_with(const AminoAcidSeq& protein) const;

    bool operator==(const CodonDistribution&) const = default;

   private:
    std::array<std::uint32_t, kCodonCount> counts_;
};

struct ValidatedCds {
    CodonSeq codons;
    bool trailing_stop = false;
};

// Splits a nucleotide string into codons; strips a single trailing STOP.
// Throws CdsError on a partial codon, a non-ACGT character or an internal STOP.
ValidatedCds validate_cds(std::string_view raw);

AminoAcidSeq translate(const CodonSeq& seq, const GeneticCode& code = GeneticCode::standard());

CodonDistribution extract_codon_distribution(const CodonSeq& seq);

// Throws DataError if the distribution does not match the protein.
void require_consistent(const AminoAcidSeq& protein, const CodonDistribution& dist);

// Random permutation of each amino acid's codon multiset over that amino
// acid's positions. Deterministic per seed.
CodonSeq random_synonymous_encoding(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                    std::uint64_t seed);
CodonSeq random_synonymous_encoding(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                    std::mt19937_64& rng);

// Positions of each amino acid in the protein, indexed by
// GeneticCode::amino_acid_index.
std::array<std::vector<std::size_t>, kAminoAcidCount> positions_by_amino_acid(
    const AminoAcidSeq& protein);

}  // namespace codonctx
