#include "kgcsg/knn.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <utility>

#include "kgcsg/error.hpp"

namespace kgcsg {

namespace {

constexpr std::size_t query_block = 32;
constexpr std::size_t candidate_tile = 256;

inline double distance_unchecked(const double* a, const double* b, std::size_t width) {
    double s = 0.0;
    for (std::size_t l = 0; l < width; ++l) {
        const double d = a[l] - b[l];
        s += d * d;
    }
    return s;
}

using Entry = std::pair<double, std::size_t>;

// Bounded max-heap keyed on (distance, index).
struct TopK {
    std::vector<Entry> heap;
    std::size_t k;

    void offer(double d, std::size_t j) {
        const Entry e{d, j};
        if (heap.size() < k) {
            heap.push_back(e);
            std::push_heap(heap.begin(), heap.end());
        } else if (e < heap.front()) {
            std::pop_heap(heap.begin(), heap.end());
            heap.back() = e;
            std::push_heap(heap.begin(), heap.end());
        }
    }
};

void search_block(const double* rows, std::size_t n, std::size_t width, std::size_t k, bool include_self,
                  std::size_t q_begin, std::size_t q_end, std::vector<NeighborList>& out) {
    std::vector<TopK> best(q_end - q_begin, TopK{{}, k});
    for (auto& b : best) b.heap.reserve(k + 1);

    for (std::size_t c0 = 0; c0 < n; c0 += candidate_tile) {
        const std::size_t c1 = std::min(n, c0 + candidate_tile);
        for (std::size_t q = q_begin; q < q_end; ++q) {
            const double* qv = rows + q * width;
            auto& top = best[q - q_begin];
            for (std::size_t j = c0; j < c1; ++j) {
                if (j == q && !include_self) continue;
                top.offer(distance_unchecked(qv, rows + j * width, width), j);
            }
        }
    }

    for (std::size_t q = q_begin; q < q_end; ++q) {
        auto& heap = best[q - q_begin].heap;
        std::sort_heap(heap.begin(), heap.end());
        auto& nl = out[q];
        nl.query = q;
        nl.neighbors.resize(heap.size());
        std::transform(heap.begin(), heap.end(), nl.neighbors.begin(), [](const Entry& e) { return e.second; });
    }
}

}  // namespace

double l2_distance_sq(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DataError("vector length mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    return distance_unchecked(a.data(), b.data(), a.size());
}

double l2_distance_sq(const CompositeVector& a, const CompositeVector& b) {
    return l2_distance_sq(a.components, b.components);
}

std::size_t max_neighbors(std::size_t n, bool include_self) noexcept {
    return include_self ? n : (n == 0 ? 0 : n - 1);
}

std::vector<NeighborList> knn_exact(std::span<const double> rows, std::size_t n, std::size_t width, std::size_t k,
                                    const KnnOptions& opts) {
    if (rows.size() != n * width) throw DataError("row buffer does not hold n * width values");
    if (k < 1) throw ConfigError("k must be at least 1");
    if (k > max_neighbors(n, opts.include_self)) {
        throw ConfigError("k exceeds pool: k = " + std::to_string(k) + " but pool size is " + std::to_string(n));
    }

    std::vector<NeighborList> out(n);
    const std::size_t blocks = (n + query_block - 1) / query_block;
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b; (b = next.fetch_add(1)) < blocks;) {
            const std::size_t q0 = b * query_block;
            search_block(rows.data(), n, width, k, opts.include_self, q0, std::min(n, q0 + query_block), out);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    return out;
}

std::vector<NeighborList> knn_exact(const SampledPool& pool, std::size_t k, const KnnOptions& opts) {
    return knn_exact(pool.data, pool.size(), pool.width, k, opts);
}

}  // namespace kgcsg
