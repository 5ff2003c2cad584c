#include "kgcsg/sampling.hpp"

#include <algorithm>
#include <numeric>

#include "kgcsg/error.hpp"
#include "kgcsg/rng.hpp"

namespace kgcsg {

namespace {

void check_classes(std::span<const std::size_t> sizes, std::size_t m) {
    if (m < 1) throw ConfigError("M must be at least 1");
    if (sizes.size() < 2) throw DataError("similarity undefined for C < 2");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == 0) throw DataError("class " + std::to_string(i) + " is empty");
    }
}

}  // namespace

std::uint64_t class_stream_seed(std::uint64_t seed, std::size_t class_id) noexcept {
    return rng::mix(seed, static_cast<std::uint64_t>(class_id));
}

std::size_t realized_pool_size(std::span<const std::size_t> class_sizes, std::size_t m) noexcept {
    std::size_t n = 0;
    for (auto s : class_sizes) n += std::min(s, m);
    return n;
}

std::vector<std::vector<std::size_t>> draw_sample_indices(std::span<const std::size_t> class_sizes, std::size_t m,
                                                          std::uint64_t seed) {
    check_classes(class_sizes, m);
    std::vector<std::vector<std::size_t>> draws(class_sizes.size());
    for (std::size_t c = 0; c < class_sizes.size(); ++c) {
        const std::size_t n = class_sizes[c];
        const std::size_t take = std::min(n, m);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        rng::SplitMix64 gen(class_stream_seed(seed, c));
        for (std::size_t i = 0; i < take; ++i) {
            const auto j = i + static_cast<std::size_t>(rng::uniform_below(gen, n - i));
            std::swap(perm[i], perm[j]);
        }
        perm.resize(take);
        draws[c] = std::move(perm);
    }
    return draws;
}

SampledPool sample_pool(const ClassVectors& class_vectors, std::size_t m, std::uint64_t seed) {
    std::vector<std::size_t> sizes;
    sizes.reserve(class_vectors.size());
    for (const auto& cls : class_vectors) sizes.push_back(cls.size());
    const auto draws = draw_sample_indices(sizes, m, seed);

    SampledPool pool;
    pool.rng_seed = seed;
    pool.width = class_vectors.front().front().components.size();
    for (std::size_t c = 0; c < draws.size(); ++c) {
        pool.per_class_counts.push_back(draws[c].size());
        for (auto idx : draws[c]) {
            const auto& v = class_vectors[c][idx].components;
            if (v.size() != pool.width) throw DataError("composite vectors have inconsistent lengths");
            pool.data.insert(pool.data.end(), v.begin(), v.end());
            pool.class_of.push_back(c);
            pool.source_index.push_back(idx);
        }
    }
    return pool;
}

SampledPool sample_pool(const EmbeddingStore& store, const ClassIndex& ci, std::size_t m, std::uint64_t seed) {
    std::vector<std::size_t> sizes;
    sizes.reserve(ci.size());
    for (const auto& cls : ci.classes) sizes.push_back(cls.pairs.size());
    const auto draws = draw_sample_indices(sizes, m, seed);

    SampledPool pool;
    pool.rng_seed = seed;
    pool.width = 2 * store.dim();
    std::size_t total = 0;
    for (const auto& d : draws) total += d.size();
    pool.data.resize(total * pool.width);
    std::size_t row = 0;
    for (std::size_t c = 0; c < draws.size(); ++c) {
        pool.per_class_counts.push_back(draws[c].size());
        for (auto idx : draws[c]) {
            const auto& p = ci.classes[c].pairs[idx];
            try {
                compose_into(store, p.head, p.relation, {pool.data.data() + row * pool.width, pool.width});
            } catch (const DataError& e) {
                throw DataError(std::string(e.what()) + " (class '" + ci.classes[c].tail + "')");
            }
            pool.class_of.push_back(c);
            pool.source_index.push_back(idx);
            ++row;
        }
    }
    return pool;
}

}  // namespace kgcsg
