#include "codonctx/fasta.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "codonctx/errors.hpp"

namespace codonctx {

namespace {

char fold_base(char c) {
    switch (c) {
        case 'A': case 'a': return 'A';
        case 'C': case 'c': return 'C';
        case 'G': case 'g': return 'G';
        case 'T': case 't': case 'U': case 'u': return 'T';
        default: return 0;
    }
}

}  // namespace

std::vector<FastaRecord> parse_fasta(std::istream& in) {
    std::vector<FastaRecord> records;
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        const std::size_t line_start = offset;
        offset += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (!line.empty() && line[0] == '>') {
            FastaRecord rec;
            std::string_view header(line);
            header.remove_prefix(1);
            while (!header.empty() && std::isspace(static_cast<unsigned char>(header.front()))) {
                header.remove_prefix(1);
            }
            auto split = header.find_first_of(" \t");
            rec.id = std::string(header.substr(0, split));
            if (split != std::string_view::npos) {
                auto rest = header.substr(split);
                auto first = rest.find_first_not_of(" \t");
                if (first != std::string_view::npos) rec.description = std::string(rest.substr(first));
            }
            records.push_back(std::move(rec));
            continue;
        }

        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (records.empty()) {
                throw FastaError("missing header: sequence data before first '>' at offset " +
                                     std::to_string(line_start + i),
                                 "", line_start + i);
            }
            char base = fold_base(c);
            if (base == 0) {
                throw FastaError("illegal character '" + std::string(1, c) + "' in record '" +
                                     records.back().id + "' at offset " +
                                     std::to_string(line_start + i),
                                 records.back().id, line_start + i);
            }
            records.back().sequence.push_back(base);
        }
    }
    return records;
}

std::vector<FastaRecord> parse_fasta(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_fasta(in);
}

std::vector<FastaRecord> read_fasta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FastaError("cannot open FASTA file '" + path + "'", "", 0);
    return parse_fasta(in);
}

void write_fasta(std::ostream& out, const FastaRecord& record, std::size_t width) {
    out << '>' << record.id;
    if (!record.description.empty()) out << ' ' << record.description;
    out << '\n';
    for (std::size_t i = 0; i < record.sequence.size(); i += width) {
        out << record.sequence.substr(i, width) << '\n';
    }
}

}  // namespace codonctx
