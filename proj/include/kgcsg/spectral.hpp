#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kgcsg/similarity.hpp"

namespace kgcsg {

struct Laplacian {
    Eigen::MatrixXd entries;
    bool symmetric = false;

    std::size_t order() const noexcept { return static_cast<std::size_t>(entries.rows()); }
};

/// Eigenvalues sorted ascending. `max_imag` is nonzero only for the
/// non-symmetric path, where eigenvalues are ordered by real part.
struct Spectrum {
    std::vector<double> eigenvalues;
    double max_imag = 0.0;
};

struct CsgValues {
    double csg_full = 0.0;
    std::vector<std::pair<std::size_t, double>> csg_at;  ///< (k_c, CSG_{k_c})
};

/// W = (S + S^T) / 2.
SimilarityMatrix symmetrize(const SimilarityMatrix& s);

/// Row sums of W. Throws NumericError("isolated class ...") on a zero degree.
Eigen::VectorXd degree_matrix(const SimilarityMatrix& w);

/// L = I - D^{-1/2} W D^{-1/2}. Requires a symmetrized W; only the lower
/// triangle is computed and mirrored, so L is exactly symmetric.
Laplacian normalized_laplacian(const SimilarityMatrix& w);

/// Same formula applied to an unsymmetrized S; the result is generally not
/// symmetric.
Laplacian laplacian_as_written(const SimilarityMatrix& s);

/// Householder tridiagonalization followed by implicit-shift QL.
/// Throws NumericError when an eigenvalue fails to converge.
Spectrum eigenvalues_symmetric(const Laplacian& l);

/// Eigenvalues of a general real matrix; real parts sorted ascending.
Spectrum eigenvalues_general(const Laplacian& l);

/// lambda_{k_c} - lambda_0. Also sums the consecutive gaps and throws
/// NumericError if the two disagree by more than 1e-12.
double csg_at(const Spectrum& spec, std::size_t k_c);

/// csg_full uses k_c = C - 1; each entry of `cutoffs` adds a csg_at value.
CsgValues csg(const Spectrum& spec, const std::vector<std::size_t>& cutoffs = {});

}  // namespace kgcsg
