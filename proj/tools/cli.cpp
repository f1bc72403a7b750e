#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include "codonctx/errors.hpp"
#include "codonctx/fasta.hpp"
#include "codonctx/opt_dp.hpp"
#include "codonctx/opt_fixed.hpp"
#include "codonctx/opt_sa.hpp"
#include "codonctx/scoring.hpp"
#include "codonctx/stats.hpp"
#include "report.hpp"

namespace codonctx::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct Gene {
    std::string id;
    CodonSeq codons;
};

std::vector<Gene> load_genes(const std::string& path) {
    std::vector<Gene> genes;
    for (auto& record : read_fasta_file(path)) {
        try {
            genes.push_back({record.id, validate_cds(record.sequence).codons});
        } catch (const CdsError& e) {
            throw CdsError("record '" + record.id + "': " + e.what());
        }
    }
    return genes;
}

void require_pairs(const Gene& gene) {
    if (gene.codons.size() < 2) {
        throw DataError("record '" + gene.id + "' has " + std::to_string(gene.codons.size()) +
                        " codon(s); at least 2 are needed");
    }
}

std::optional<double> parse_nc(const CodonSeq& seq) {
    auto nc = effective_number_of_codons(CodonUsage::from_sequence(seq));
    if (nc.contributions.empty()) return std::nullopt;
    return nc.nc;
}

Report base_report(const Gene& gene, const CpsTable& table) {
    require_pairs(gene);
    Report r;
    r.gene_id = gene.id;
    r.length_codons = gene.codons.size();
    r.n_pairs = gene.codons.n_pairs();
    r.cpb = cpb(gene.codons, table);
    r.nc = parse_nc(gene.codons);
    return r;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Options {
    bool json = false;
    std::string fasta;
    std::string table;

    // pvalue / report
    std::optional<double> mean;
    std::optional<double> variance;

    // optimize
    std::string method = "dp";
    std::string direction = "max";
    bool fix_distribution = false;
    std::uint64_t seed = 0;
    std::uint64_t iterations = SaParams{}.iterations;
    unsigned restarts = SaParams{}.restarts;
    double temperature = SaParams{}.initial_temperature;
    double cooling = SaParams{}.cooling_factor;
    std::optional<std::uint64_t> node_budget;
    std::uint64_t state_cap = kDefaultStateCap;
    bool no_sa_incumbent = false;
    std::string out_path;
    std::string trace_path;

    // build-table
    double log_base = 0.0;  // 0 means natural log
    bool normalized = false;

    // baseline / report
    std::size_t samples = kDefaultBaselineSamples;
};

class Runner {
   public:
    Runner(const Options& opt, std::ostream& out, std::ostream& err) : opt_(opt), out_(out), err_(err) {}

    int score() {
        const CpsTable table = load_table();
        std::vector<Report> reports;
        for (const auto& gene : load_genes(opt_.fasta)) reports.push_back(base_report(gene, table));
        emit("score", reports, [&](const Report& r) {
            out_ << r.gene_id << '\t' << r.length_codons << '\t' << r.n_pairs << '\t' << format_number(r.cpb)
                 << '\t' << (r.nc ? format_number(*r.nc) : "NA") << '\n';
        }, "#id\tcodons\tpairs\tcpb\tnc\n");
        return kOk;
    }

    int pvalue() {
        const CpsTable table = load_table();
        const CpbDistribution dist = distribution(table, /*required=*/true).value();
        std::vector<Report> reports;
        for (const auto& gene : load_genes(opt_.fasta)) {
            Report r = base_report(gene, table);
            add_significance(r, dist);
            reports.push_back(std::move(r));
        }
        emit("pvalue", reports, [&](const Report& r) {
            out_ << r.gene_id << '\t' << r.n_pairs << '\t' << format_number(r.cpb) << '\t'
                 << format_number(*r.p_value) << '\t' << format_number(*r.z_score) << '\t'
                 << format_number(r.interval_95->first) << '\t' << format_number(r.interval_95->second) << '\n';
        }, "#id\tpairs\tcpb\tp_value\tz\tlow95\thigh95\n");
        return kOk;
    }

    int optimize() {
        const Direction direction = parse_direction(opt_.direction);
        const bool constrained = opt_.method != "dp";
        if (opt_.method != "dp" && opt_.method != "sa" && opt_.method != "bnb" && opt_.method != "exact") {
            throw UsageError("unknown method '" + opt_.method + "' (expected dp, sa, bnb or exact)");
        }
        if (constrained && !opt_.fix_distribution) {
            throw UsageError("--method " + opt_.method + " requires --fix-distribution");
        }
        if (!constrained && opt_.fix_distribution) {
            throw UsageError("--method dp optimizes without codon constraints; drop --fix-distribution");
        }
        const CpsTable table = load_table();
        const SaParams sa = sa_params();

        std::vector<Report> reports;
        std::vector<FastaRecord> recoded;
        std::optional<std::ofstream> trace;
        if (!opt_.trace_path.empty()) {
            trace.emplace(opt_.trace_path);
            if (!*trace) throw UsageError("cannot write trace file '" + opt_.trace_path + "'");
        }
        for (const auto& gene : load_genes(opt_.fasta)) {
            Report r = base_report(gene, table);
            const AminoAcidSeq protein = translate(gene.codons);
            const CodonDistribution dist = extract_codon_distribution(gene.codons);
            const auto start = std::chrono::steady_clock::now();

            OptimizationResult result;
            if (opt_.method == "dp") {
                result = optimize_unconstrained(protein, table, direction);
            } else if (opt_.method == "sa") {
                auto outcome = optimize_sa(protein, dist, table, direction, sa);
                if (trace) write_trace_tsv(*trace, outcome.trace);
                result = std::move(outcome.result);
            } else if (opt_.method == "bnb") {
                BnbOptions bnb;
                bnb.node_budget = opt_.node_budget;
                bnb.initial = opt_.no_sa_incumbent ? InitialIncumbent::none : InitialIncumbent::annealing;
                bnb.annealing = sa;
                result = optimize_bnb(protein, dist, table, direction, std::nullopt, bnb);
            } else {
                result = optimize_exact_dp(protein, dist, table, direction, opt_.state_cap);
            }

            OptimizationBlock block;
            block.method = result.method;
            block.direction = std::string(to_string(direction));
            block.cpb = result.cpb;
            block.optimal = result.optimal;
            block.nodes = result.method == "exact" ? result.stats.states : result.stats.nodes_expanded;
            block.iterations = result.stats.iterations;
            block.seconds = seconds_since(start);
            block.sequence = result.sequence.str();
            r.optimizations.push_back(block);

            std::string header = gene.id + "|method=" + result.method + "|direction=" + block.direction +
                                 "|cpb=" + format_number(result.cpb);
            if (opt_.method == "sa" || (opt_.method == "bnb" && !opt_.no_sa_incumbent)) {
                header += "|seed=" + std::to_string(opt_.seed);
            }
            recoded.push_back({header, "", block.sequence});
            reports.push_back(std::move(r));
        }

        if (!opt_.out_path.empty()) {
            std::ofstream fa(opt_.out_path);
            if (!fa) throw UsageError("cannot write output file '" + opt_.out_path + "'");
            for (const auto& rec : recoded) write_fasta(fa, rec);
        }
        emit("optimize", reports, [&](const Report& r) {
            const auto& b = r.optimizations.front();
            out_ << r.gene_id << '\t' << format_number(r.cpb) << '\t' << b.method << '\t' << b.direction << '\t'
                 << format_number(b.cpb) << '\t' << (b.optimal ? "optimal" : "heuristic") << '\t' << b.nodes
                 << '\t' << b.iterations << '\t' << format_number(b.seconds) << '\n';
        }, "#id\toriginal_cpb\tmethod\tdirection\tcpb\tstatus\tnodes\titerations\tseconds\n");
        if (opt_.out_path.empty() && !opt_.json) {
            for (const auto& rec : recoded) write_fasta(out_, rec);
        }
        return kOk;
    }

    int build_table() {
        std::vector<CodonSeq> corpus;
        for (auto& gene : load_genes(opt_.fasta)) corpus.push_back(std::move(gene.codons));
        if (corpus.empty()) throw DataError("corpus '" + opt_.fasta + "' has no records");

        CpsTable table;
        if (opt_.normalized) {
            if (opt_.log_base != 0.0) throw UsageError("--normalized fixes the log base at 1.5");
            PairCounts counts = count_pairs(corpus);
            if (counts.total_pairs == 0) throw DataError("corpus contains no codon pairs");
            table = normalize_cps(counts);
            table.set_source("normalized, corpus of " + std::to_string(corpus.size()) + " records");
        } else {
            TableBuildOptions build;
            if (opt_.log_base != 0.0) build.log_base = opt_.log_base;
            table = build_cps_table(corpus, build).first;
        }

        if (opt_.out_path.empty()) {
            write_cps_table(out_, table);
        } else {
            std::ofstream file(opt_.out_path);
            if (!file) throw UsageError("cannot write output file '" + opt_.out_path + "'");
            write_cps_table(file, table);
            if (opt_.json) {
                out_ << json{{"command", "build-table"}, {"records", corpus.size()},
                             {"log_base", table.log_base()}, {"out", opt_.out_path}}
                            .dump(2)
                     << '\n';
            } else {
                out_ << "wrote " << opt_.out_path << " (" << corpus.size() << " records, log base "
                     << format_number(table.log_base()) << ")\n";
            }
        }
        return kOk;
    }

    int baseline() {
        if (opt_.samples < 2) throw UsageError("--samples must be at least 2");
        const CpsTable table = load_table();
        std::vector<Report> reports;
        for (const auto& gene : load_genes(opt_.fasta)) {
            Report r = base_report(gene, table);
            add_baseline(r, gene, table);
            reports.push_back(std::move(r));
        }
        emit("baseline", reports, [&](const Report& r) {
            const auto& b = *r.baseline;
            out_ << r.gene_id << '\t' << format_number(r.cpb) << '\t' << format_number(b.mean) << '\t'
                 << format_number(b.std) << '\t' << b.samples << '\t' << b.rank << '\t' << format_number(b.min_cpb)
                 << '\t' << format_number(b.max_cpb) << '\n';
        }, "#id\tcpb\tmean\tstd\tsamples\trank\tmin\tmax\n");
        return kOk;
    }

    int report() {
        if (opt_.samples < 2) throw UsageError("--samples must be at least 2");
        const CpsTable table = load_table();
        const auto dist = distribution(table, /*required=*/false);
        std::vector<Report> reports;
        for (const auto& gene : load_genes(opt_.fasta)) {
            Report r = base_report(gene, table);
            if (dist) add_significance(r, *dist);
            add_baseline(r, gene, table);
            reports.push_back(std::move(r));
        }
        emit("report", reports, [&](const Report& r) {
            out_ << r.gene_id << ": " << r.length_codons << " codons, " << r.n_pairs << " pairs\n"
                 << "  CPB        " << format_number(r.cpb) << '\n';
            if (r.nc) out_ << "  Nc         " << format_number(*r.nc) << '\n';
            if (r.p_value) {
                out_ << "  p-value    " << format_number(*r.p_value) << " (z = " << format_number(*r.z_score)
                     << ")\n  95% range  [" << format_number(r.interval_95->first) << ", "
                     << format_number(r.interval_95->second) << "]\n";
            }
            const auto& b = *r.baseline;
            out_ << "  baseline   mean " << format_number(b.mean) << ", std " << format_number(b.std) << ", rank "
                 << b.rank << "/" << b.samples << '\n'
                 << "  SA range   [" << format_number(b.min_cpb) << ", " << format_number(b.max_cpb) << "]\n";
        }, "");
        return kOk;
    }

   private:
    CpsTable load_table() const {
        std::string path = opt_.table;
        if (path.empty()) {
            if (const char* env = std::getenv("CODONCTX_TABLE")) path = env;
        }
        if (path.empty()) throw UsageError("no CPS table given (--table or CODONCTX_TABLE)");
        CpsTable table = read_cps_table_file(path);
        if (table.missing_sense_pairs() > 0) {
            err_ << "warning: table '" << path << "' lacks " << table.missing_sense_pairs()
                 << " of 3721 sense codon pairs; they score " << format_number(table.missing_score()) << '\n';
        }
        return table;
    }

    std::optional<CpbDistribution> distribution(const CpsTable& table, bool required) const {
        if (opt_.mean.has_value() != opt_.variance.has_value()) {
            throw UsageError("--mean and --variance must be given together");
        }
        if (opt_.mean) {
            if (!(*opt_.variance > 0.0)) throw UsageError("--variance must be positive");
            return CpbDistribution{*opt_.mean, *opt_.variance, "command line"};
        }
        if (!table.has_counts()) {
            if (!required) return std::nullopt;
            throw DataError("table '" + table.source() +
                            "' has no observed counts; pass --mean and --variance");
        }
        return distribution_from_table(table);
    }

    void add_significance(Report& r, const CpbDistribution& dist) const {
        r.p_value = codonctx::pvalue(r.cpb, r.n_pairs, dist);
        r.z_score = codonctx::z_score(r.cpb, r.n_pairs, dist);
        r.interval_95 = significant_interval(r.n_pairs, 0.05, dist);
    }

    void add_baseline(Report& r, const Gene& gene, const CpsTable& table) const {
        const AminoAcidSeq protein = translate(gene.codons);
        const CodonDistribution dist = extract_codon_distribution(gene.codons);
        const BaselineSample sample = baseline_sample(protein, dist, table, opt_.samples, opt_.seed);
        const BaselineSummary summary = summarize_baseline(sample, r.cpb);
        const SaParams sa = sa_params();
        // Both annealing runs start from the gene itself, so the range
        // always contains the gene's CPB.
        const auto low = optimize_sa(protein, dist, table, Direction::minimize, sa, gene.codons);
        const auto high = optimize_sa(protein, dist, table, Direction::maximize, sa, gene.codons);
        r.baseline = BaselineBlock{summary.mean, summary.std,    summary.samples,
                                   summary.rank, low.result.cpb, high.result.cpb};
    }

    SaParams sa_params() const {
        SaParams sa;
        sa.iterations = opt_.iterations;
        sa.restarts = opt_.restarts;
        sa.seed = opt_.seed;
        sa.initial_temperature = opt_.temperature;
        sa.cooling_factor = opt_.cooling;
        sa.validate();
        return sa;
    }

    template <typename TextRow>
    void emit(const std::string& command, const std::vector<Report>& reports, TextRow row,
              const std::string& header) {
        if (opt_.json) {
            out_ << json{{"command", command}, {"records", reports}}.dump(2) << '\n';
            return;
        }
        out_ << header;
        for (const auto& r : reports) row(r);
    }

    const Options& opt_;
    std::ostream& out_;
    std::ostream& err_;
};

void add_input_options(CLI::App* cmd, Options& opt, bool with_table = true) {
    cmd->add_option("fasta", opt.fasta, "FASTA file of coding sequences")->required();
    if (with_table) cmd->add_option("-t,--table", opt.table, "CPS table (default: $CODONCTX_TABLE)");
}

void add_sa_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    cmd->add_option("--iterations", opt.iterations, "annealing iterations per restart")->capture_default_str();
    cmd->add_option("--restarts", opt.restarts, "annealing restarts")->capture_default_str();
    cmd->add_option("--temperature", opt.temperature, "initial annealing temperature")->capture_default_str();
    cmd->add_option("--cooling", opt.cooling, "geometric cooling factor")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"codonctx: codon pair bias scoring, significance and recoding"};
    app.name("codonctx");
    app.require_subcommand(1);
    app.add_flag("--json", opt.json, "emit a single JSON document");
    app.fallthrough();

    auto* score = app.add_subcommand("score", "CPB and effective number of codons per record");
    add_input_options(score, opt);

    auto* pvalue = app.add_subcommand("pvalue", "two-tailed p-value and 95% interval per record");
    add_input_options(pvalue, opt);
    pvalue->add_option("--mean", opt.mean, "override the CPS population mean");
    pvalue->add_option("--variance", opt.variance, "override the CPS population variance");

    auto* optimize = app.add_subcommand("optimize", "recode proteins for maximal or minimal CPB");
    add_input_options(optimize, opt);
    optimize->add_option("-m,--method", opt.method, "dp, sa, bnb or exact")->capture_default_str();
    optimize->add_option("-d,--direction", opt.direction, "max or min")->capture_default_str();
    optimize->add_flag("--fix-distribution", opt.fix_distribution, "keep each record's codon distribution");
    add_sa_options(optimize, opt);
    optimize->add_option("--node-budget", opt.node_budget, "branch and bound node budget");
    optimize->add_option("--state-cap", opt.state_cap, "exact DP state cap")->capture_default_str();
    optimize->add_flag("--no-sa-incumbent", opt.no_sa_incumbent, "start branch and bound without an incumbent");
    optimize->add_option("-o,--out", opt.out_path, "write recoded FASTA here");
    optimize->add_option("--trace", opt.trace_path, "write the annealing trace (TSV) here");

    auto* build = app.add_subcommand("build-table", "build a CPS table from a corpus of coding sequences");
    add_input_options(build, opt, /*with_table=*/false);
    build->add_option("--log-base", opt.log_base, "logarithm base (default e)");
    build->add_flag("--normalized", opt.normalized, "amino-acid-pair normalized scores, log base 1.5");
    build->add_option("-o,--out", opt.out_path, "output table path (default stdout)");

    auto* baseline = app.add_subcommand("baseline", "random same-distribution encodings and annealed range");
    add_input_options(baseline, opt);
    baseline->add_option("--samples", opt.samples, "random encodings per record")->capture_default_str();
    add_sa_options(baseline, opt);

    auto* report = app.add_subcommand("report", "score, significance, Nc and baseline in one report");
    add_input_options(report, opt);
    report->add_option("--mean", opt.mean, "override the CPS population mean");
    report->add_option("--variance", opt.variance, "override the CPS population variance");
    report->add_option("--samples", opt.samples, "random encodings per record")->capture_default_str();
    add_sa_options(report, opt);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Runner runner(opt, out, err);
    try {
        if (*score) return runner.score();
        if (*pvalue) return runner.pvalue();
        if (*optimize) return runner.optimize();
        if (*build) return runner.build_table();
        if (*baseline) return runner.baseline();
        if (*report) return runner.report();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const FastaError& e) {
        err << "error: " << e.what() << '\n';
        return kFastaError;
    } catch (const CdsError& e) {
        err << "error: " << e.what() << '\n';
        return kFastaError;
    } catch (const TableError& e) {
        err << "error: " << e.what() << '\n';
        return kTableError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kResourceCap;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace codonctx::cli
