#include "codonctx/sequence.hpp"

#include <algorithm>
#include <numeric>

#include "codonctx/errors.hpp"

namespace codonctx {

CodonSeq::CodonSeq(std::vector<Codon> codons) : codons_(std::move(codons)) {
    const auto& code = GeneticCode::standard();
    for (std::size_t i = 0; i < codons_.size(); ++i) {
        if (code.is_stop(codons_[i])) {
            throw CdsError("STOP codon " + codons_[i].str() + " at codon " + std::to_string(i + 1));
        }
    }
}

CodonSeq CodonSeq::from_string(std::string_view nucleotides) {
    if (nucleotides.size() % 3 != 0) {
        throw CdsError("length " + std::to_string(nucleotides.size()) + " is not a multiple of 3");
    }
    std::vector<Codon> codons;
    codons.reserve(nucleotides.size() / 3);
    for (std::size_t i = 0; i < nucleotides.size(); i += 3) {
        auto codon = Codon::parse(nucleotides.substr(i, 3));
        if (!codon) {
            throw CdsError("invalid codon '" + std::string(nucleotides.substr(i, 3)) +
                           "' at codon " + std::to_string(i / 3 + 1));
        }
        codons.push_back(*codon);
    }
    return CodonSeq(std::move(codons));
}

std::string CodonSeq::str() const {
    std::string out;
    out.reserve(codons_.size() * 3);
    for (Codon c : codons_) out += c.str();
    return out;
}

AminoAcidSeq::AminoAcidSeq(std::string residues) : residues_(std::move(residues)) {
    for (std::size_t i = 0; i < residues_.size(); ++i) {
        if (GeneticCode::amino_acid_index(residues_[i]) < 0) {
            throw DataError(std::string("invalid amino acid '") + residues_[i] + "' at residue " +
                            std::to_string(i + 1));
        }
    }
}

std::uint64_t CodonDistribution::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

bool CodonDistribution::consistent_with(const AminoAcidSeq& protein) const {
    const auto& code = GeneticCode::standard();
    std::array<std::uint64_t, kAminoAcidCount> expected{};
    for (std::size_t i = 0; i < protein.size(); ++i) {
        ++expected[GeneticCode::amino_acid_index(protein[i])];
    }
    std::array<std::uint64_t, kAminoAcidCount> have{};
    for (int i = 0; i < kCodonCount; ++i) {
        Codon c = Codon::from_index(i);
        if (counts_[i] == 0) continue;
        if (code.is_stop(c)) return false;
        have[GeneticCode::amino_acid_index(code.amino_acid(c))] += counts_[i];
    }
    return have == expected;
}

ValidatedCds validate_cds(std::string_view raw) {
    if (raw.size() % 3 != 0) {
        throw CdsError("length " + std::to_string(raw.size()) + " is not a multiple of 3");
    }
    const auto& code = GeneticCode::standard();
    std::vector<Codon> codons;
    codons.reserve(raw.size() / 3);
    const std::size_t n = raw.size() / 3;
    bool trailing_stop = false;
    for (std::size_t i = 0; i < n; ++i) {
        auto codon = Codon::parse(raw.substr(3 * i, 3));
        if (!codon) {
            throw CdsError("invalid codon '" + std::string(raw.substr(3 * i, 3)) + "' at codon " +
                           std::to_string(i + 1));
        }
        if (code.is_stop(*codon)) {
            if (i + 1 == n) {
                trailing_stop = true;
                break;
            }
            throw CdsError("internal STOP at codon " + std::to_string(i + 1));
        }
        codons.push_back(*codon);
    }
    return {CodonSeq(std::move(codons)), trailing_stop};
}

AminoAcidSeq translate(const CodonSeq& seq, const GeneticCode& code) {
    std::string residues;
    residues.reserve(seq.size());
    for (Codon c : seq) residues.push_back(code.amino_acid(c));
    return AminoAcidSeq(std::move(residues));
}

CodonDistribution extract_codon_distribution(const CodonSeq& seq) {
    CodonDistribution dist;
    for (Codon c : seq) dist.add(c);
    return dist;
}

void require_consistent(const AminoAcidSeq& protein, const CodonDistribution& dist) {
    if (!dist.consistent_with(protein)) {
        throw DataError("inconsistent distribution: codon counts do not match protein " +
                        protein.str());
    }
}

std::array<std::vector<std::size_t>, kAminoAcidCount> positions_by_amino_acid(
    const AminoAcidSeq& protein) {
    std::array<std::vector<std::size_t>, kAminoAcidCount> positions;
    for (std::size_t i = 0; i < protein.size(); ++i) {
        positions[GeneticCode::amino_acid_index(protein[i])].push_back(i);
    }
    return positions;
}

CodonSeq random_synonymous_encoding(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                    std::mt19937_64& rng) {
    require_consistent(protein, dist);
    const auto& code = GeneticCode::standard();
    auto positions = positions_by_amino_acid(protein);
    std::vector<Codon> out(protein.size());
    std::vector<Codon> pool;
    for (int aa = 0; aa < kAminoAcidCount; ++aa) {
        if (positions[aa].empty()) continue;
        pool.clear();
        for (Codon c : code.synonyms(GeneticCode::kAminoAcids[aa])) {
            pool.insert(pool.end(), dist.count(c), c);
        }
        std::shuffle(pool.begin(), pool.end(), rng);
        for (std::size_t k = 0; k < pool.size(); ++k) out[positions[aa][k]] = pool[k];
    }
    return CodonSeq(std::move(out));
}

CodonSeq random_synonymous_encoding(const AminoAcidSeq& protein, const CodonDistribution& dist,
                                    std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_synonymous_encoding(protein, dist, rng);
}

}  // namespace codonctx
