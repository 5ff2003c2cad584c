#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kgcsg/embedding_store.hpp"
#include "kgcsg/spectral.hpp"
#include "kgcsg/triples.hpp"

namespace kgcsg {

struct HashEmbedding {
    std::size_t dim = 64;
    std::uint64_t seed = 0;
};

/// Path to an embedding file, or parameters for hash_embed.
using EmbeddingSource = std::variant<std::string, HashEmbedding>;

struct RunConfig {
    std::vector<std::string> triple_paths;
    std::string dataset_name;  ///< defaults to a name derived from the first path
    EmbeddingSource embeddings = HashEmbedding{};
    std::size_t m = 120;
    std::size_t k = 50;
    std::vector<std::size_t> kc;
    std::uint64_t seed = 0;
    bool normalize_embeddings = false;
    bool include_self = false;
    bool symmetrize = true;
    std::size_t min_pairs = 1;
    std::optional<std::size_t> max_classes;
    unsigned threads = 0;
    std::string dump_similarity;
    std::string dump_spectrum;
};

/// Parsed triples, grouped classes and embeddings; shared across sweep cells.
struct PreparedDataset {
    std::string name;
    DatasetStats stats;
    ClassIndex classes;  ///< after filter_classes
    EmbeddingStore store;
};

struct CsgReport {
    std::string dataset;
    std::vector<std::string> triple_paths;
    DatasetStats stats;
    std::size_t classes_used = 0;
    std::size_t pool_size = 0;
    std::size_t embedding_dim = 0;
    std::string embedding_source;  ///< "hash" or the file path
    std::optional<HashEmbedding> hash;
    std::size_t m = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::uint64_t sample_seed = 0;
    bool normalize_embeddings = false;
    bool include_self = false;
    bool symmetrized = true;
    std::size_t min_pairs = 1;
    std::optional<std::size_t> max_classes;
    double csg_full = 0.0;
    std::vector<std::pair<std::size_t, double>> csg_at;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double max_imag = 0.0;
    double wall_ms = 0.0;
};

struct SweepCell {
    std::size_t m = 0;
    std::size_t k = 0;
    std::optional<double> csg;
    std::size_t pool_size = 0;
    double wall_ms = 0.0;
    std::string status = "ok";
};

struct SweepGrid {
    std::string dataset;
    std::vector<std::size_t> m_values;
    std::vector<std::size_t> k_values;
    std::vector<SweepCell> cells;  ///< row-major: m outer, k inner
    std::uint64_t seed = 0;

    const SweepCell& at(std::size_t mi, std::size_t ki) const { return cells[mi * k_values.size() + ki]; }
};

/// Name for a dataset given its split files: the parent directory when the
/// file stem is train/valid/test, else the stem.
std::string dataset_name_from_path(const std::string& path);

/// Sampling seed for a run with the given (seed, M, k).
std::uint64_t derive_cell_seed(std::uint64_t seed, std::size_t m, std::size_t k) noexcept;

PreparedDataset prepare_dataset(const RunConfig& config);

/// Full pipeline on an already prepared dataset. Only the sampling, search
/// and spectral parameters of `config` are read.
CsgReport run_csg(const PreparedDataset& data, const RunConfig& config);

CsgReport run_csg(const RunConfig& config);

/// One run per (M, k) cell, sharing the prepared dataset. Infeasible or
/// failing cells are recorded with a status instead of aborting.
SweepGrid run_sweep(const PreparedDataset& data, const RunConfig& config, std::vector<std::size_t> m_values,
                    std::vector<std::size_t> k_values);

SweepGrid run_sweep(const RunConfig& config, std::vector<std::size_t> m_values, std::vector<std::size_t> k_values);

}  // namespace kgcsg
