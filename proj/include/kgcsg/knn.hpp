#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kgcsg/embedding_store.hpp"
#include "kgcsg/sampling.hpp"

namespace kgcsg {

/// Sum of squared componentwise differences, accumulated left to right.
double l2_distance_sq(std::span<const double> a, std::span<const double> b);
double l2_distance_sq(const CompositeVector& a, const CompositeVector& b);

/// The k nearest pool rows of one query, ascending by (distance, index).
struct NeighborList {
    std::size_t query = 0;
    std::vector<std::size_t> neighbors;
};

struct KnnOptions {
    bool include_self = false;  ///< let a query count as its own neighbor
    unsigned threads = 0;       ///< 0 = hardware concurrency
};

/// Exact k-NN over `n` rows of `width` values stored row-major. Blocked over
/// queries and candidates; deterministic regardless of thread count.
std::vector<NeighborList> knn_exact(std::span<const double> rows, std::size_t n, std::size_t width, std::size_t k,
                                    const KnnOptions& opts = {});

std::vector<NeighborList> knn_exact(const SampledPool& pool, std::size_t k, const KnnOptions& opts = {});

/// Largest admissible k for a pool of `n` rows.
std::size_t max_neighbors(std::size_t n, bool include_self) noexcept;

}  // namespace kgcsg
