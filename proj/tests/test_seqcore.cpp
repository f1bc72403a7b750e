#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "codonctx/errors.hpp"
#include "codonctx/fasta.hpp"
#include "codonctx/genetic_code.hpp"
#include "codonctx/sequence.hpp"

using namespace codonctx;

static Codon C(const char* s) { return *Codon::parse(s); }

TEST_CASE("codon index order is lexicographic") {
    auto sense = GeneticCode::standard().sense_codons();
    CHECK(sense.size() == 61);
    for (std::size_t i = 1; i < sense.size(); ++i) CHECK(sense[i - 1].str() < sense[i].str());
    CHECK(C("ACG").str() == "ACG");
    CHECK_FALSE(Codon::parse("ACN"));
    CHECK_FALSE(Codon::parse("AC"));
}

TEST_CASE("standard genetic code") {
    const auto& code = GeneticCode::standard();
    CHECK(code.amino_acid(C("ATG")) == 'M');
    CHECK(code.amino_acid(C("TGG")) == 'W');
    CHECK(code.is_stop(C("TAA")));
    CHECK(code.is_stop(C("TAG")));
    CHECK(code.is_stop(C("TGA")));
    std::size_t total = 0;
    for (char aa : GeneticCode::kAminoAcids) total += code.synonyms(aa).size();
    CHECK(total == 61);
    CHECK(code.synonyms('L').size() == 6);
    CHECK(code.synonyms('X').empty());
}

TEST_CASE("parse_fasta single record") {
    auto recs = parse_fasta(">g1\nATGAAA\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].id == "g1");
    CHECK(recs[0].sequence == "ATGAAA");
}

TEST_CASE("parse_fasta multi-line and case folding") {
    auto recs = parse_fasta(">a\nATG\nAAA\n>b\natg");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].id == "a");
    CHECK(recs[0].sequence == "ATGAAA");
    CHECK(recs[1].id == "b");
    CHECK(recs[1].sequence == "ATG");
}

TEST_CASE("parse_fasta missing header") {
    try {
        parse_fasta("ATG");
        FAIL("expected FastaError");
    } catch (const FastaError& e) {
        CHECK(std::string(e.what()).find("missing header") != std::string::npos);
    }
}

TEST_CASE("parse_fasta rejects ambiguity codes with record and offset") {
    try {
        parse_fasta(">x desc\nATGN\n");
        FAIL("expected FastaError");
    } catch (const FastaError& e) {
        CHECK(e.record() == "x");
        CHECK(e.offset() == 11);
    }
}

TEST_CASE("parse_fasta folds U to T and keeps the description") {
    auto recs = parse_fasta(">r1 some words\nAUG uuu\r\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].description == "some words");
    CHECK(recs[0].sequence == "ATGTTT");
}

TEST_CASE("write_fasta round trip") {
    FastaRecord r{"id", "d", std::string(130, 'A')};
    std::ostringstream out;
    write_fasta(out, r, 60);
    auto back = parse_fasta(out.str());
    REQUIRE(back.size() == 1);
    CHECK(back[0].sequence == r.sequence);
    CHECK(back[0].description == "d");
}

TEST_CASE("validate_cds") {
    auto v = validate_cds("AAAAAT");
    CHECK(v.codons.str() == "AAAAAT");
    CHECK(v.codons.size() == 2);
    CHECK_FALSE(v.trailing_stop);

    auto s = validate_cds("AAATAA");
    CHECK(s.codons.size() == 1);
    CHECK(s.codons[0] == C("AAA"));
    CHECK(s.trailing_stop);

    try {
        validate_cds("AAATAAAAA");
        FAIL("expected CdsError");
    } catch (const CdsError& e) {
        CHECK(std::string(e.what()).find("internal STOP at codon 2") != std::string::npos);
    }
    CHECK_THROWS_AS(validate_cds("AAAA"), CdsError);
}

TEST_CASE("translate") {
    CHECK(translate(CodonSeq({C("AAA"), C("AAT")})).str() == "KN");
    CHECK(translate(CodonSeq({C("ATG"), C("TGG")})).str() == "MW");
    CHECK(translate(CodonSeq({C("GCC"), C("GAA")})).str() == "AE");
}

TEST_CASE("sequence types reject bad symbols") {
    CHECK_THROWS_AS(AminoAcidSeq("KX"), DataError);
    CHECK_THROWS(CodonSeq({C("AAA"), C("TAA")}));
}

TEST_CASE("extract_codon_distribution") {
    auto d = extract_codon_distribution(CodonSeq({C("AAA"), C("AAT"), C("AAA")}));
    CHECK(d.count(C("AAA")) == 2);
    CHECK(d.count(C("AAT")) == 1);
    CHECK(d.total() == 3);
    auto e = extract_codon_distribution(CodonSeq({C("AAG"), C("AAC")}));
    CHECK(e.count(C("AAG")) == 1);
    CHECK(e.count(C("AAC")) == 1);
    CHECK(e.total() == 2);
}

TEST_CASE("random_synonymous_encoding forced") {
    CodonDistribution d;
    d.set(C("AAA"), 2);
    auto s = random_synonymous_encoding(AminoAcidSeq("KK"), d, 123);
    CHECK(s.str() == "AAAAAA");
}

TEST_CASE("random_synonymous_encoding is uniform over permutations") {
    CodonDistribution d;
    d.set(C("AAA"), 1);
    d.set(C("AAG"), 1);
    std::map<std::string, int> seen;
    const int n = 10000;
    for (int seed = 0; seed < n; ++seed) ++seen[random_synonymous_encoding(AminoAcidSeq("KK"), d, seed).str()];
    CHECK(seen.size() == 2);
    const double f = seen["AAAAAG"] / static_cast<double>(n);
    CHECK(std::abs(f - 0.5) <= 0.05);
    // chi-square, 1 dof, 0.1% critical value 10.83
    const double e = n / 2.0;
    const double chi = (seen["AAAAAG"] - e) * (seen["AAAAAG"] - e) / e + (seen["AAGAAA"] - e) * (seen["AAGAAA"] - e) / e;
    CHECK(chi < 10.83);
}

TEST_CASE("random_synonymous_encoding preserves the distribution") {
    AminoAcidSeq p("LLLSSRRLKA");
    CodonSeq wt = CodonSeq::from_string("CTGTTACTGAGCTCACGACGGTTGAAAGCT");
    auto d = extract_codon_distribution(wt);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto s = random_synonymous_encoding(p, d, seed);
        CHECK(extract_codon_distribution(s) == d);
        CHECK(translate(s) == p);
    }
}

TEST_CASE("inconsistent distribution") {
    CodonDistribution d;
    d.set(C("AAA"), 1);
    d.set(C("AAT"), 2);
    try {
        random_synonymous_encoding(AminoAcidSeq("KN"), d, 0);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(std::string(e.what()).find("inconsistent distribution") != std::string::npos);
    }
    CHECK_FALSE(d.consistent_with(AminoAcidSeq("KN")));
}
