#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace codonctx {

inline constexpr int kCodonCount = 64;
inline constexpr int kSenseCodonCount = 61;
inline constexpr int kAminoAcidCount = 20;
inline constexpr char kStop = '*';

// A nucleotide triplet over ACGT, packed as 16*b0 + 4*b1 + b2 with A<C<G<T.
// Index order therefore coincides with lexicographic order of the string.
class Codon {
   public:
    constexpr Codon() = default;

    static constexpr Codon from_index(int index) { return Codon(static_cast<std::uint8_t>(index)); }
    // Accepts exactly three characters from ACGT (uppercase).
    static std::optional<Codon> parse(std::string_view text);

    constexpr int index() const noexcept { return index_; }
    std::string str() const;

    constexpr auto operator<=>(const Codon&) const = default;

   private:
    constexpr explicit Codon(std::uint8_t index) : index_(index) {}
    std::uint8_t index_ = 0;
};

// Returns 0..3 for A, C, G, T, and -1 otherwise.
int base_index(char base) noexcept;

// NCBI translation table 1.
class GeneticCode {
   public:
    static const GeneticCode& standard();

    // One-letter amino acid, or kStop.
    char amino_acid(Codon codon) const noexcept { return aa_of_codon_[codon.index()]; }
    bool is_stop(Codon codon) const noexcept { return amino_acid(codon) == kStop; }

    // Synonymous codons of an amino acid, in lexicographic order. Empty for
    // symbols outside the 20-letter alphabet.
    std::span<const Codon> synonyms(char amino_acid) const;

    // Position of the amino acid in kAminoAcids, or -1.
    static int amino_acid_index(char amino_acid) noexcept;
    static constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";

    std::span<const Codon> sense_codons() const { return sense_; }

   private:
    GeneticCode();

    std::array<char, kCodonCount> aa_of_codon_{};
    std::array<std::vector<Codon>, kAminoAcidCount> synonyms_;
    std::vector<Codon> sense_;
};

}  // namespace codonctx
