#include "codonctx/genetic_code.hpp"

namespace codonctx {

namespace {

constexpr char kBases[] = {'A', 'C', 'G', 'T'};

// Standard code in the conventional TCAG ordering of the first, second and third base.
constexpr std::string_view kTcagTable =
    "FFLLSSSSYY**CC*WLLLLPPPPHHQQRRRRIIIMTTTTNNKKSSRRVVVVAAAADDEEGGGG";
constexpr std::string_view kTcag = "TCAG";

}  // namespace

int base_index(char base) noexcept {
    switch (base) {
        case 'A': return 0;
        case 'C': return 1;
        case 'G': return 2;
        case 'T': return 3;
        default: return -1;
    }
}

std::optional<Codon> Codon::parse(std::string_view text) {
    if (text.size() != 3) return std::nullopt;
    int index = 0;
    for (char c : text) {
        int b = base_index(c);
        if (b < 0) return std::nullopt;
        index = index * 4 + b;
    }
    return Codon::from_index(index);
}

std::string Codon::str() const {
    return {kBases[index_ >> 4], kBases[(index_ >> 2) & 3], kBases[index_ & 3]};
}

GeneticCode::GeneticCode() {
    for (int i = 0; i < kCodonCount; ++i) {
        Codon codon = Codon::from_index(i);
        std::string s = codon.str();
        auto tcag = [](char b) { return static_cast<int>(kTcag.find(b)); };
        char aa = kTcagTable[16 * tcag(s[0]) + 4 * tcag(s[1]) + tcag(s[2])];
        aa_of_codon_[i] = aa;
        if (aa != kStop) {
            synonyms_[amino_acid_index(aa)].push_back(codon);
            sense_.push_back(codon);
        }
    }
}

const GeneticCode& GeneticCode::standard() {
    static const GeneticCode code;
    return code;
}

std::span<const Codon> GeneticCode::synonyms(char amino_acid) const {
    int idx = amino_acid_index(amino_acid);
    if (idx < 0) return {};
    return synonyms_[idx];
}

int GeneticCode::amino_acid_index(char amino_acid) noexcept {
    auto pos = kAminoAcids.find(amino_acid);
    return pos == std::string_view::npos ? -1 : static_cast<int>(pos);
}

}  // namespace codonctx
