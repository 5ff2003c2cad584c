#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kgcsg/knn.hpp"
#include "kgcsg/sampling.hpp"

namespace kgcsg {

/// C x C class overlap matrix: S(i, j) is the fraction of class-i queries'
/// neighbors that belong to class j.
struct SimilarityMatrix {
    Eigen::MatrixXd entries;
    std::vector<std::string> labels;  ///< class tail tokens; may be empty
    std::size_t m = 0;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    bool symmetrized = false;

    std::size_t order() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

/// Row i is normalized by M_i * k, with M_i the realized sample count of
/// class i, so every row sums to one.
SimilarityMatrix build_similarity(const SampledPool& pool, const std::vector<NeighborList>& neighbor_lists,
                                  std::size_t k, std::size_t m = 0);

/// CSV: header `class,<label_1>,...`, then one row per class.
void write_similarity_csv(std::ostream& out, const SimilarityMatrix& s);

}  // namespace kgcsg
