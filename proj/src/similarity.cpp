#include "kgcsg/similarity.hpp"

#include <ostream>

#include "kgcsg/error.hpp"
#include "kgcsg/format.hpp"

namespace kgcsg {

SimilarityMatrix build_similarity(const SampledPool& pool, const std::vector<NeighborList>& neighbor_lists,
                                  std::size_t k, std::size_t m) {
    const std::size_t c = pool.class_count();
    if (neighbor_lists.size() != pool.size()) throw DataError("neighbor lists do not match the pool");

    std::vector<std::uint64_t> hits(c * c, 0);
    for (const auto& nl : neighbor_lists) {
        if (nl.neighbors.size() != k) throw DataError("neighbor list length differs from k");
        const std::size_t from = pool.class_of[nl.query];
        for (auto j : nl.neighbors) ++hits[from * c + pool.class_of[j]];
    }

    SimilarityMatrix s;
    s.entries.resize(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
    for (std::size_t i = 0; i < c; ++i) {
        const double denom = static_cast<double>(pool.per_class_counts[i]) * static_cast<double>(k);
        for (std::size_t j = 0; j < c; ++j) {
            s.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                static_cast<double>(hits[i * c + j]) / denom;
        }
    }
    s.m = m;
    s.k = k;
    s.seed = pool.rng_seed;
    return s;
}

void write_similarity_csv(std::ostream& out, const SimilarityMatrix& s) {
    const auto n = static_cast<Eigen::Index>(s.order());
    auto label = [&](Eigen::Index i) {
        return s.labels.size() == s.order() ? csv_field(s.labels[static_cast<std::size_t>(i)]) : std::to_string(i);
    };
    out << "class";
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << label(j);
    out << '\n';
    for (Eigen::Index i = 0; i < n; ++i) {
        out << label(i);
        for (Eigen::Index j = 0; j < n; ++j) out << ',' << format_double(s.entries(i, j));
        out << '\n';
    }
    if (!out) throw DataError("failed writing similarity matrix");
}

}  // namespace kgcsg
