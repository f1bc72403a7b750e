#include "codonctx/cps_table.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include "codonctx/errors.hpp"

namespace codonctx {

namespace {

void require_sense(Codon a, Codon b) {
    const auto& code = GeneticCode::standard();
    if (code.is_stop(a) || code.is_stop(b)) {
        throw std::invalid_argument("codon pair " + a.str() + b.str() + " contains a STOP codon");
    }
}

std::optional<double> parse_double(std::string_view text) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

CpsTable::CpsTable()
    : scores_(kPairSlots, 0.0),
      observed_(kPairSlots, 0.0),
      expected_(kPairSlots, 0.0),
      present_(kPairSlots, false),
      floored_(kPairSlots, false),
      has_pair_counts_(kPairSlots, false),
      log_base_(std::numbers::e) {}

void CpsTable::set_score(Codon a, Codon b, double score) {
    require_sense(a, b);
    auto slot = pair_slot(a, b);
    if (!present_[slot]) {
        present_[slot] = true;
        ++present_count_;
    }
    scores_[slot] = score;
}

void CpsTable::set_counts(Codon a, Codon b, double observed, double expected) {
    require_sense(a, b);
    auto slot = pair_slot(a, b);
    observed_[slot] = observed;
    expected_[slot] = expected;
    has_pair_counts_[slot] = true;
    has_counts_ = true;
}

void CpsTable::set_floored(Codon a, Codon b, bool floored) {
    require_sense(a, b);
    floored_[pair_slot(a, b)] = floored;
}

std::optional<double> CpsTable::observed(Codon a, Codon b) const {
    auto slot = pair_slot(a, b);
    if (!has_pair_counts_[slot]) return std::nullopt;
    return observed_[slot];
}

std::optional<double> CpsTable::expected(Codon a, Codon b) const {
    auto slot = pair_slot(a, b);
    if (!has_pair_counts_[slot]) return std::nullopt;
    return expected_[slot];
}

void CpsTable::set_missing_score(double score) {
    missing_score_ = score;
    for (std::size_t i = 0; i < kPairSlots; ++i) {
        if (!present_[i]) scores_[i] = score;
    }
}

CpsTable CpsTable::negated() const {
    CpsTable out = *this;
    for (double& s : out.scores_) s = -s;
    out.missing_score_ = -missing_score_;
    return out;
}

CpsTable read_cps_table(std::istream& in, const std::string& source) {
    CpsTable table;
    table.set_source(source);
    std::optional<double> missing;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty()) continue;
        if (line.front() == '#') {
            auto body = trim(line.substr(1));
            auto eq = body.find('=');
            if (eq == std::string_view::npos) continue;
            auto key = trim(body.substr(0, eq));
            auto value = trim(body.substr(eq + 1));
            if (key == "log_base") {
                auto base = value == "e" ? std::optional<double>(std::numbers::e) : parse_double(value);
                if (!base || *base <= 0.0 || *base == 1.0) {
                    throw TableError("line " + std::to_string(line_no) + ": invalid log_base '" +
                                         std::string(value) + "'",
                                     line_no);
                }
                table.set_log_base(*base);
            } else if (key == "missing_score") {
                missing = parse_double(value);
                if (!missing) {
                    throw TableError("line " + std::to_string(line_no) + ": invalid missing_score",
                                     line_no);
                }
            }
            continue;
        }

        auto fields = split_tabs(line);
        if (fields.size() != 2 && fields.size() != 4) {
            throw TableError("line " + std::to_string(line_no) + ": expected 2 or 4 tab-separated fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        auto pair = trim(fields[0]);
        std::string upper(pair);
        for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        auto a = upper.size() == 6 ? Codon::parse(std::string_view(upper).substr(0, 3)) : std::nullopt;
        auto b = upper.size() == 6 ? Codon::parse(std::string_view(upper).substr(3, 3)) : std::nullopt;
        if (!a || !b) {
            throw TableError("line " + std::to_string(line_no) + ": invalid codon pair '" +
                                 std::string(pair) + "'",
                             line_no);
        }
        const auto& code = GeneticCode::standard();
        if (code.is_stop(*a) || code.is_stop(*b)) {
            throw TableError("line " + std::to_string(line_no) + ": pair " + upper +
                                 " contains a STOP codon",
                             line_no);
        }
        if (table.has_pair(*a, *b)) {
            throw TableError("line " + std::to_string(line_no) + ": duplicate pair " + upper, line_no);
        }
        auto score = parse_double(trim(fields[1]));
        if (!score || !std::isfinite(*score)) {
            throw TableError("line " + std::to_string(line_no) + ": invalid score '" +
                                 std::string(fields[1]) + "'",
                             line_no);
        }
        table.set_score(*a, *b, *score);
        if (fields.size() == 4) {
            auto obs = parse_double(trim(fields[2]));
            auto exp = parse_double(trim(fields[3]));
            if (!obs || !exp || *obs < 0.0 || *exp < 0.0) {
                throw TableError("line " + std::to_string(line_no) + ": invalid observed/expected counts",
                                 line_no);
            }
            table.set_counts(*a, *b, *obs, *exp);
            if (*obs == 0.0) table.set_floored(*a, *b);
        }
    }
    if (table.size() == 0) throw TableError("table '" + source + "' has no data lines", line_no);
    if (missing) table.set_missing_score(*missing);
    return table;
}

CpsTable read_cps_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableError("cannot open table file '" + path + "'", 0);
    return read_cps_table(in, path);
}

void write_cps_table(std::ostream& out, const CpsTable& table) {
    out << "#log_base=" << format_double(table.log_base()) << '\n';
    if (table.missing_score() != 0.0) {
        out << "#missing_score=" << format_double(table.missing_score()) << '\n';
    }
    if (!table.source().empty()) out << "# source: " << table.source() << '\n';
    const auto sense = GeneticCode::standard().sense_codons();
    for (Codon a : sense) {
        for (Codon b : sense) {
            if (!table.has_pair(a, b)) continue;
            if (table.is_floored(a, b) && table.expected(a, b).value_or(0.0) <= 0.0) continue;
            out << a.str() << b.str() << '\t' << format_double(table.score(a, b));
            if (auto obs = table.observed(a, b)) {
                out << '\t' << format_double(*obs) << '\t' << format_double(*table.expected(a, b));
            }
            out << '\n';
        }
    }
}

}  // namespace codonctx
