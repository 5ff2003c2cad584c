#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kgcsg/embedding_store.hpp"
#include "kgcsg/triples.hpp"

namespace kgcsg {

/// Monte-Carlo sample of composite vectors, stored row-major and grouped
/// contiguously by class in class-index order. Within a class, rows follow
/// draw order.
struct SampledPool {
    std::size_t width = 0;
    std::vector<double> data;
    std::vector<std::size_t> class_of;
    std::vector<std::size_t> source_index;  ///< position within the class's vector list
    std::vector<std::size_t> per_class_counts;
    std::uint64_t rng_seed = 0;

    std::size_t size() const noexcept { return class_of.size(); }
    std::size_t class_count() const noexcept { return per_class_counts.size(); }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * width, width}; }
};

/// Seed of class i's private stream.
std::uint64_t class_stream_seed(std::uint64_t seed, std::size_t class_id) noexcept;

/// For each class, a uniform without-replacement draw of min(m, size) indices
/// (partial Fisher-Yates on the class's own stream), in draw order.
std::vector<std::vector<std::size_t>> draw_sample_indices(std::span<const std::size_t> class_sizes, std::size_t m,
                                                          std::uint64_t seed);

/// Sum of min(m, size) over classes.
std::size_t realized_pool_size(std::span<const std::size_t> class_sizes, std::size_t m) noexcept;

SampledPool sample_pool(const ClassVectors& class_vectors, std::size_t m, std::uint64_t seed);

/// Same draw as sample_pool(materialize_class_vectors(store, ci), m, seed)
/// but composes only the sampled pairs.
SampledPool sample_pool(const EmbeddingStore& store, const ClassIndex& ci, std::size_t m, std::uint64_t seed);

}  // namespace kgcsg
