#include "kgcsg/report.hpp"

#include <ostream>

#include "kgcsg/error.hpp"
#include "kgcsg/format.hpp"

namespace kgcsg {

using ojson = nlohmann::ordered_json;

namespace {

ojson optional_number(const std::optional<double>& v) {
    return v ? ojson(*v) : ojson("undefined");
}

std::string optional_text(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("undefined");
}

void finish(std::ostream& sink) {
    sink.flush();
    if (!sink) throw DataError("failed writing report");
}

}  // namespace

ReportFormat parse_format(std::string_view name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

ojson to_json(const CsgReport& r, const EmitOptions& opts) {
    ojson j;
    j["dataset"] = r.dataset;
    j["triple_paths"] = r.triple_paths;
    j["stats"] = {{"entities", r.stats.entity_count},
                  {"relations", r.stats.relation_count},
                  {"triples", r.stats.triple_count},
                  {"classes", r.stats.class_count}};
    j["classes_used"] = r.classes_used;
    j["pool_size"] = r.pool_size;
    ojson emb = {{"source", r.embedding_source}, {"dim", r.embedding_dim}};
    if (r.hash) {
        emb["hash_dim"] = r.hash->dim;
        emb["hash_seed"] = r.hash->seed;
    }
    emb["normalized"] = r.normalize_embeddings;
    j["embedding"] = emb;
    j["m"] = r.m;
    j["k"] = r.k;
    j["seed"] = r.seed;
    j["sample_seed"] = r.sample_seed;
    j["include_self"] = r.include_self;
    j["symmetrized"] = r.symmetrized;
    j["min_pairs"] = r.min_pairs;
    j["max_classes"] = r.max_classes ? ojson(*r.max_classes) : ojson(nullptr);
    j["csg_full"] = r.csg_full;
    ojson at = ojson::array();
    for (const auto& [kc, v] : r.csg_at) at.push_back({{"kc", kc}, {"csg", v}});
    j["csg_at"] = at;
    j["lambda_min"] = r.lambda_min;
    j["lambda_max"] = r.lambda_max;
    j["max_imag"] = r.max_imag;
    j["wall_ms"] = opts.include_timing ? r.wall_ms : 0.0;
    return j;
}

CsgReport csg_report_from_json(const nlohmann::json& j) {
    try {
        CsgReport r;
        r.dataset = j.at("dataset").get<std::string>();
        if (j.contains("triple_paths")) r.triple_paths = j.at("triple_paths").get<std::vector<std::string>>();
        const auto& st = j.at("stats");
        r.stats = DatasetStats{st.at("entities").get<std::size_t>(), st.at("relations").get<std::size_t>(),
                               st.at("triples").get<std::size_t>(), st.at("classes").get<std::size_t>()};
        r.classes_used = j.at("classes_used").get<std::size_t>();
        r.pool_size = j.at("pool_size").get<std::size_t>();
        const auto& emb = j.at("embedding");
        r.embedding_source = emb.at("source").get<std::string>();
        r.embedding_dim = emb.at("dim").get<std::size_t>();
        if (emb.contains("hash_dim")) {
            r.hash = HashEmbedding{emb.at("hash_dim").get<std::size_t>(), emb.at("hash_seed").get<std::uint64_t>()};
        }
        r.normalize_embeddings = emb.at("normalized").get<bool>();
        r.m = j.at("m").get<std::size_t>();
        r.k = j.at("k").get<std::size_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.sample_seed = j.at("sample_seed").get<std::uint64_t>();
        r.include_self = j.at("include_self").get<bool>();
        r.symmetrized = j.at("symmetrized").get<bool>();
        r.min_pairs = j.at("min_pairs").get<std::size_t>();
        if (!j.at("max_classes").is_null()) r.max_classes = j.at("max_classes").get<std::size_t>();
        r.csg_full = j.at("csg_full").get<double>();
        for (const auto& e : j.at("csg_at")) r.csg_at.emplace_back(e.at("kc").get<std::size_t>(), e.at("csg").get<double>());
        r.lambda_min = j.at("lambda_min").get<double>();
        r.lambda_max = j.at("lambda_max").get<double>();
        r.max_imag = j.at("max_imag").get<double>();
        r.wall_ms = j.at("wall_ms").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed CSG report: ") + e.what());
    }
}

void emit_report(const CsgReport& r, ReportFormat fmt, std::ostream& sink, const EmitOptions& opts) {
    if (fmt == ReportFormat::json) {
        sink << to_json(r, opts).dump(2) << '\n';
    } else {
        const std::string prefix = csv_field(r.dataset) + ',' + std::to_string(r.classes_used) + ',' +
                                   std::to_string(r.pool_size) + ',' + std::to_string(r.m) + ',' +
                                   std::to_string(r.k) + ',' + std::to_string(r.seed) + ',';
        sink << "dataset,classes,pool_size,m,k,seed,kc,csg\n";
        sink << prefix << (r.classes_used - 1) << ',' << format_double(r.csg_full) << '\n';
        for (const auto& [kc, v] : r.csg_at) sink << prefix << kc << ',' << format_double(v) << '\n';
    }
    finish(sink);
}

void emit_report(const SweepGrid& g, ReportFormat fmt, std::ostream& sink, const EmitOptions& opts) {
    if (fmt == ReportFormat::json) {
        ojson j;
        j["dataset"] = g.dataset;
        j["seed"] = g.seed;
        j["m_values"] = g.m_values;
        j["k_values"] = g.k_values;
        ojson cells = ojson::array();
        for (const auto& c : g.cells) {
            cells.push_back({{"m", c.m},
                             {"k", c.k},
                             {"csg", c.csg ? ojson(*c.csg) : ojson(nullptr)},
                             {"pool_size", c.pool_size},
                             {"wall_ms", opts.include_timing ? c.wall_ms : 0.0},
                             {"status", c.status}});
        }
        j["cells"] = cells;
        sink << j.dump(2) << '\n';
    } else {
        sink << "m,k,csg,pool_size,wall_ms,status\n";
        for (const auto& c : g.cells) {
            sink << c.m << ',' << c.k << ',' << (c.csg ? format_double(*c.csg) : std::string()) << ',' << c.pool_size
                 << ',' << format_double(opts.include_timing ? c.wall_ms : 0.0) << ',' << csv_field(c.status) << '\n';
        }
    }
    finish(sink);
}

void emit_report(const CorrelationReport& c, ReportFormat fmt, std::ostream& sink, const EmitOptions&) {
    if (fmt == ReportFormat::json) {
        ojson j;
        ojson pts = ojson::array();
        for (const auto& p : c.points) {
            pts.push_back({{"dataset", p.dataset}, {"model", p.model}, {"csg", p.csg}, {"mrr", p.mrr}});
        }
        j["points"] = pts;
        ojson per_model = ojson::array();
        for (const auto& [model, r] : c.per_model) per_model.push_back({{"model", model}, {"r", optional_number(r)}});
        j["per_model"] = per_model;
        j["mean_r"] = optional_number(c.mean_r);
        j["pooled_r"] = optional_number(c.pooled_r);
        sink << j.dump(2) << '\n';
    } else {
        sink << "kind,dataset,model,csg,mrr,r\n";
        for (const auto& p : c.points) {
            sink << "point," << csv_field(p.dataset) << ',' << csv_field(p.model) << ',' << format_double(p.csg)
                 << ',' << format_double(p.mrr) << ",\n";
        }
        for (const auto& [model, r] : c.per_model) sink << "model,," << csv_field(model) << ",,," << optional_text(r) << '\n';
        sink << "mean,,,,," << optional_text(c.mean_r) << '\n';
        sink << "pooled,,,,," << optional_text(c.pooled_r) << '\n';
    }
    finish(sink);
}

void emit_report(const std::string& dataset, const DatasetStats& s, ReportFormat fmt, std::ostream& sink) {
    if (fmt == ReportFormat::json) {
        ojson j = {{"dataset", dataset},
                   {"entities", s.entity_count},
                   {"relations", s.relation_count},
                   {"triples", s.triple_count},
                   {"classes", s.class_count}};
        sink << j.dump(2) << '\n';
    } else {
        sink << "dataset,entities,relations,triples,classes\n"
             << csv_field(dataset) << ',' << s.entity_count << ',' << s.relation_count << ',' << s.triple_count << ','
             << s.class_count << '\n';
    }
    finish(sink);
}

}  // namespace kgcsg
