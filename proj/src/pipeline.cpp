#include "kgcsg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>

#include "kgcsg/error.hpp"
#include "kgcsg/format.hpp"
#include "kgcsg/knn.hpp"
#include "kgcsg/rng.hpp"
#include "kgcsg/sampling.hpp"
#include "kgcsg/similarity.hpp"

namespace kgcsg {

namespace {

// Runs `fn`, prefixing any pipeline error with the stage name.
template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Error& e) {
        const std::string what = std::string(name) + ": " + e.what();
        switch (e.kind()) {
            case ErrorKind::config: throw ConfigError(what);
            case ErrorKind::data: throw DataError(what);
            case ErrorKind::numeric: throw NumericError(what);
        }
        throw;
    }
}

std::vector<std::size_t> class_sizes(const ClassIndex& ci) {
    std::vector<std::size_t> sizes;
    sizes.reserve(ci.size());
    for (const auto& c : ci.classes) sizes.push_back(c.pairs.size());
    return sizes;
}

void check_params(const RunConfig& config, std::size_t pool_size) {
    if (config.m < 1) throw ConfigError("M must be at least 1");
    if (config.k < 1) throw ConfigError("k must be at least 1");
    if (config.k > max_neighbors(pool_size, config.include_self)) {
        throw ConfigError("k exceeds pool: k = " + std::to_string(config.k) + " but realized pool size is " +
                          std::to_string(pool_size));
    }
}

std::ofstream open_dump(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

std::string dataset_name_from_path(const std::string& path) {
    const std::filesystem::path p(path);
    const auto stem = p.stem().string();
    if ((stem == "train" || stem == "valid" || stem == "test") && p.has_parent_path()) {
        const auto parent = p.parent_path().filename().string();
        if (!parent.empty() && parent != "." && parent != "..") return parent;
    }
    return stem;
}

std::uint64_t derive_cell_seed(std::uint64_t seed, std::size_t m, std::size_t k) noexcept {
    return rng::mix(rng::mix(seed, static_cast<std::uint64_t>(m)), static_cast<std::uint64_t>(k));
}

PreparedDataset prepare_dataset(const RunConfig& config) {
    const TripleSet ts = stage("parse", [&] { return read_triple_files(config.triple_paths); });
    ClassIndex classes = stage("group", [&] {
        return filter_classes(group_by_tail(ts), config.min_pairs, config.max_classes);
    });
    EmbeddingStore store = stage("embed", [&] {
        EmbeddingStore s = std::visit(
            [&](const auto& src) -> EmbeddingStore {
                using T = std::decay_t<decltype(src)>;
                if constexpr (std::is_same_v<T, std::string>) {
                    return load_embeddings_file(src);
                } else {
                    return hash_embed(vocabulary(ts), src.dim, src.seed);
                }
            },
            config.embeddings);
        return config.normalize_embeddings ? s.normalized() : s;
    });
    return PreparedDataset{
        config.dataset_name.empty() ? dataset_name_from_path(config.triple_paths.front()) : config.dataset_name,
        dataset_stats(ts), std::move(classes), std::move(store)};
}

CsgReport run_csg(const PreparedDataset& data, const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto sizes = class_sizes(data.classes);
    const std::size_t pool_size = realized_pool_size(sizes, config.m);
    stage("config", [&] { check_params(config, pool_size); });

    const std::uint64_t sample_seed = derive_cell_seed(config.seed, config.m, config.k);
    const SampledPool pool = stage("sample", [&] { return sample_pool(data.store, data.classes, config.m, sample_seed); });
    const auto neighbors = stage("knn", [&] {
        return knn_exact(pool, config.k, KnnOptions{config.include_self, config.threads});
    });
    SimilarityMatrix s = stage("similarity", [&] { return build_similarity(pool, neighbors, config.k, config.m); });
    for (const auto& c : data.classes.classes) s.labels.push_back(c.tail);
    if (!config.dump_similarity.empty()) {
        stage("dump-similarity", [&] {
            auto out = open_dump(config.dump_similarity);
            write_similarity_csv(out, s);
        });
    }

    const Spectrum spectrum = stage("spectrum", [&] {
        if (config.symmetrize) return eigenvalues_symmetric(normalized_laplacian(symmetrize(s)));
        return eigenvalues_general(laplacian_as_written(s));
    });
    if (!config.dump_spectrum.empty()) {
        stage("dump-spectrum", [&] {
            auto out = open_dump(config.dump_spectrum);
            for (double v : spectrum.eigenvalues) out << format_double(v) << '\n';
            if (!out) throw DataError("failed writing spectrum");
        });
    }
    const CsgValues values = stage("csg", [&] { return csg(spectrum, config.kc); });

    CsgReport r;
    r.dataset = data.name;
    r.triple_paths = config.triple_paths;
    r.stats = data.stats;
    r.classes_used = data.classes.size();
    r.pool_size = pool.size();
    r.embedding_dim = data.store.dim();
    if (const auto* path = std::get_if<std::string>(&config.embeddings)) {
        r.embedding_source = *path;
    } else {
        r.embedding_source = "hash";
        r.hash = std::get<HashEmbedding>(config.embeddings);
    }
    r.m = config.m;
    r.k = config.k;
    r.seed = config.seed;
    r.sample_seed = sample_seed;
    r.normalize_embeddings = config.normalize_embeddings;
    r.include_self = config.include_self;
    r.symmetrized = config.symmetrize;
    r.min_pairs = config.min_pairs;
    r.max_classes = config.max_classes;
    r.csg_full = values.csg_full;
    r.csg_at = values.csg_at;
    r.lambda_min = spectrum.eigenvalues.front();
    r.lambda_max = spectrum.eigenvalues.back();
    r.max_imag = spectrum.max_imag;
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

CsgReport run_csg(const RunConfig& config) {
    return run_csg(prepare_dataset(config), config);
}

SweepGrid run_sweep(const PreparedDataset& data, const RunConfig& config, std::vector<std::size_t> m_values,
                    std::vector<std::size_t> k_values) {
    if (m_values.empty() || k_values.empty()) throw ConfigError("sweep needs at least one M and one k value");
    for (auto v : m_values) {
        if (v < 1) throw ConfigError("M values must be positive");
    }
    for (auto v : k_values) {
        if (v < 1) throw ConfigError("k values must be positive");
    }
    std::sort(m_values.begin(), m_values.end());
    m_values.erase(std::unique(m_values.begin(), m_values.end()), m_values.end());
    std::sort(k_values.begin(), k_values.end());
    k_values.erase(std::unique(k_values.begin(), k_values.end()), k_values.end());

    SweepGrid grid;
    grid.dataset = data.name;
    grid.seed = config.seed;
    grid.m_values = m_values;
    grid.k_values = k_values;
    const auto sizes = class_sizes(data.classes);

    for (auto m : m_values) {
        for (auto k : k_values) {
            SweepCell cell;
            cell.m = m;
            cell.k = k;
            cell.pool_size = realized_pool_size(sizes, m);
            if (k > max_neighbors(cell.pool_size, config.include_self)) {
                cell.status = "k exceeds pool";
            } else {
                RunConfig c = config;
                c.m = m;
                c.k = k;
                c.dump_similarity.clear();
                c.dump_spectrum.clear();
                try {
                    const auto r = run_csg(data, c);
                    cell.csg = r.csg_full;
                    cell.wall_ms = r.wall_ms;
                } catch (const Error& e) {
                    cell.status = e.what();
                }
            }
            grid.cells.push_back(std::move(cell));
        }
    }
    return grid;
}

SweepGrid run_sweep(const RunConfig& config, std::vector<std::size_t> m_values, std::vector<std::size_t> k_values) {
    return run_sweep(prepare_dataset(config), config, std::move(m_values), std::move(k_values));
}

}  // namespace kgcsg
