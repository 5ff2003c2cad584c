// kgcsg: CSG complexity of knowledge-graph tail-prediction datasets.
//
//   kgcsg stats     --triples train.txt valid.txt test.txt
//   kgcsg csg       --triples ... [--embeddings file | --hash-dim d --hash-seed s] --m 120 --k 50
//   kgcsg sweep     --triples ... --m 50 100 --k 5 10 25 50
//   kgcsg correlate --metrics mrr.csv --reports a.json b.json

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "kgcsg/correlation.hpp"
#include "kgcsg/error.hpp"
#include "kgcsg/pipeline.hpp"
#include "kgcsg/report.hpp"

namespace {

using namespace kgcsg;

struct Options {
    RunConfig run;
    std::vector<std::size_t> m_values{120};
    std::vector<std::size_t> k_values{50};
    std::string embeddings_path;
    std::optional<std::size_t> hash_dim;
    std::uint64_t hash_seed = 0;
    std::optional<std::size_t> max_classes;
    std::string metrics;
    std::vector<std::string> report_paths;
    std::vector<std::string> datasets;
    std::string out;
    std::string format = "json";
    bool no_timing = false;
};

void add_input_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--triples", o.run.triple_paths, "TSV triple files (splits are concatenated)")->required();
    cmd.add_option("--dataset-name", o.run.dataset_name, "Dataset label used in reports");
    cmd.add_option("--min-pairs", o.run.min_pairs, "Drop classes with fewer (head, relation) pairs")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-classes", o.max_classes, "Keep only the largest classes")->check(CLI::PositiveNumber);
}

void add_run_options(CLI::App& cmd, Options& o, bool sweep) {
    auto* emb = cmd.add_option("--embeddings", o.embeddings_path, "Embedding file (`<count> <dim>` header)");
    auto* hd = cmd.add_option("--hash-dim", o.hash_dim, "Dimension of hash embeddings (default 64)")
                   ->check(CLI::PositiveNumber);
    cmd.add_option("--hash-seed", o.hash_seed, "Seed of hash embeddings");
    emb->excludes(hd);
    if (sweep) {
        cmd.add_option("--m", o.m_values, "Sample caps per class")->check(CLI::PositiveNumber);
        cmd.add_option("--k", o.k_values, "Neighbor counts")->check(CLI::PositiveNumber);
    } else {
        cmd.add_option("--m", o.run.m, "Sample cap per class")->check(CLI::PositiveNumber);
        cmd.add_option("--k", o.run.k, "Neighbor count")->check(CLI::PositiveNumber);
        cmd.add_option("--kc", o.run.kc, "Eigenvalue cutoffs for partial CSG");
        cmd.add_option("--dump-similarity", o.run.dump_similarity, "Write the similarity matrix as CSV");
        cmd.add_option("--dump-spectrum", o.run.dump_spectrum, "Write eigenvalues, one per line");
    }
    cmd.add_option("--seed", o.run.seed, "Sampling seed");
    cmd.add_flag("--normalize-embeddings", o.run.normalize_embeddings, "L2-normalize token vectors");
    cmd.add_flag("--include-self", o.run.include_self, "Count a query as its own neighbor");
    cmd.add_flag("--no-symmetrize{false}", o.run.symmetrize, "Use S as is with a general eigensolver");
    cmd.add_option("--threads", o.run.threads, "Search threads (0 = all cores)");
}

void add_output_options(CLI::App& cmd, Options& o) {
    cmd.add_option("--out", o.out, "Output path (default stdout)");
    cmd.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_flag("--no-timing", o.no_timing, "Write wall-time fields as 0");
}

void finalize(Options& o) {
    if (!o.embeddings_path.empty()) {
        o.run.embeddings = o.embeddings_path;
    } else {
        o.run.embeddings = HashEmbedding{o.hash_dim.value_or(64), o.hash_seed};
    }
    o.run.max_classes = o.max_classes;
}

template <class Emit>
void write_output(const Options& o, Emit&& emit) {
    if (o.out.empty()) {
        emit(std::cout);
        return;
    }
    std::ofstream file(o.out);
    if (!file) throw DataError("cannot open '" + o.out + "' for writing");
    emit(file);
}

// NAME=PATH[,PATH...] or PATH[,PATH...]
RunConfig dataset_config(const RunConfig& base, const std::string& spec) {
    RunConfig c = base;
    std::string paths = spec;
    if (const auto eq = spec.find('='); eq != std::string::npos) {
        c.dataset_name = spec.substr(0, eq);
        paths = spec.substr(eq + 1);
    } else {
        c.dataset_name.clear();
    }
    c.triple_paths.clear();
    std::size_t start = 0;
    for (;;) {
        const auto comma = paths.find(',', start);
        c.triple_paths.push_back(paths.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cumulative Spectral Gradient for knowledge-graph tail prediction"};
    app.require_subcommand(1);
    Options o;

    auto* stats = app.add_subcommand("stats", "Entity, relation, triple and class counts");
    stats->add_option("--triples", o.run.triple_paths, "TSV triple files")->required();
    stats->add_option("--dataset-name", o.run.dataset_name, "Dataset label");
    add_output_options(*stats, o);

    auto* csg = app.add_subcommand("csg", "Compute CSG for one dataset");
    add_input_options(*csg, o);
    add_run_options(*csg, o, false);
    add_output_options(*csg, o);

    auto* sweep = app.add_subcommand("sweep", "CSG over a grid of M and k values");
    add_input_options(*sweep, o);
    add_run_options(*sweep, o, true);
    add_output_options(*sweep, o);

    auto* corr = app.add_subcommand("correlate", "Pearson correlation between CSG and MRR");
    corr->add_option("--metrics", o.metrics, "CSV dataset,model,mrr")->required()->check(CLI::ExistingFile);
    corr->add_option("--reports", o.report_paths, "CSG reports written by `csg --format json`");
    corr->add_option("--dataset", o.datasets, "NAME=PATH[,PATH...] computed on the fly");
    corr->add_option("--min-pairs", o.run.min_pairs, "Drop small classes")->check(CLI::PositiveNumber);
    corr->add_option("--max-classes", o.max_classes, "Keep only the largest classes")->check(CLI::PositiveNumber);
    add_run_options(*corr, o, false);
    add_output_options(*corr, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ErrorKind::config);
    }

    try {
        finalize(o);
        const auto fmt = parse_format(o.format);
        const EmitOptions emit_opts{!o.no_timing};

        if (stats->parsed()) {
            const auto ts = read_triple_files(o.run.triple_paths);
            const auto name =
                o.run.dataset_name.empty() ? dataset_name_from_path(o.run.triple_paths.front()) : o.run.dataset_name;
            write_output(o, [&](std::ostream& s) { emit_report(name, dataset_stats(ts), fmt, s); });
        } else if (csg->parsed()) {
            const auto report = run_csg(o.run);
            write_output(o, [&](std::ostream& s) { emit_report(report, fmt, s, emit_opts); });
        } else if (sweep->parsed()) {
            const auto grid = run_sweep(o.run, o.m_values, o.k_values);
            write_output(o, [&](std::ostream& s) { emit_report(grid, fmt, s, emit_opts); });
        } else if (corr->parsed()) {
            std::vector<CsgReport> reports;
            for (const auto& path : o.report_paths) {
                std::ifstream in(path);
                if (!in) throw DataError("cannot open report '" + path + "'");
                nlohmann::json j;
                try {
                    in >> j;
                } catch (const nlohmann::json::exception& e) {
                    throw DataError("report '" + path + "' is not valid JSON: " + e.what());
                }
                reports.push_back(csg_report_from_json(j));
            }
            for (const auto& spec : o.datasets) reports.push_back(run_csg(dataset_config(o.run, spec)));
            if (reports.empty()) throw ConfigError("correlate needs --reports or --dataset");
            std::ifstream metrics(o.metrics);
            if (!metrics) throw DataError("cannot open metrics file '" + o.metrics + "'");
            const auto result = correlate_with_metrics(reports, metrics);
            write_output(o, [&](std::ostream& s) { emit_report(result, fmt, s, emit_opts); });
        }
    } catch (const Error& e) {
        std::cerr << "kgcsg: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "kgcsg: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::numeric);
    }
    return 0;
}
