#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace codonctx {

struct FastaRecord {
    std::string id;           // first whitespace-delimited token of the header
    std::string description;  // remainder of the header line, may be empty
    std::string sequence;     // uppercase ACGT, U already folded to T
};

// Reads multi-record FASTA. Whitespace inside sequence bodies is ignored,
// lowercase is folded and U is normalized to T. Any other residue character
// (ambiguity codes included) raises FastaError naming the record and offset.
std::vector<FastaRecord> parse_fasta(std::istream& in);
std::vector<FastaRecord> parse_fasta(std::string_view text);
std::vector<FastaRecord> read_fasta_file(const std::string& path);

void write_fasta(std::ostream& out, const FastaRecord& record, std::size_t width = 60);

}  // namespace codonctx
