#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numeric code paths.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

/// Full O(n^2) k-NN: every distance, full sort by (distance, index).
inline std::vector<std::vector<std::size_t>> brute_force_knn(const std::vector<double>& rows, std::size_t n,
                                                             std::size_t width, std::size_t k,
                                                             bool include_self = false) {
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t q = 0; q < n; ++q) {
        all.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == q && !include_self) continue;
            double s = 0.0;
            for (std::size_t l = 0; l < width; ++l) {
                const double d = rows[q * width + l] - rows[j * width + l];
                s += d * d;
            }
            all.emplace_back(s, j);
        }
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < k; ++i) out[q].push_back(all[i].second);
    }
    return out;
}

/// S(i, j) = hits from class-i queries into class j / (count_i * k).
inline std::vector<std::vector<double>> brute_force_similarity(const std::vector<std::vector<std::size_t>>& nbrs,
                                                               const std::vector<std::size_t>& labels,
                                                               std::size_t classes, std::size_t k) {
    std::vector<std::vector<double>> hits(classes, std::vector<double>(classes, 0.0));
    std::vector<double> count(classes, 0.0);
    for (std::size_t q = 0; q < nbrs.size(); ++q) {
        count[labels[q]] += 1.0;
        for (auto j : nbrs[q]) hits[labels[q]][labels[j]] += 1.0;
    }
    for (std::size_t i = 0; i < classes; ++i) {
        for (auto& v : hits[i]) v /= count[i] * static_cast<double>(k);
    }
    return hits;
}

using Poly = std::vector<long double>;  // coefficient of x^i at index i

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// det(xI - A) by Leibniz expansion over all permutations (n <= 8).
inline Poly characteristic_polynomial(const std::vector<std::vector<double>>& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Poly total(n + 1, 0.0L);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Poly term{inversions % 2 ? -1.0L : 1.0L};
        for (std::size_t i = 0; i < n; ++i) {
            Poly entry{-static_cast<long double>(a[i][perm[i]])};
            if (perm[i] == i) entry.push_back(1.0L);
            term = poly_mul(term, entry);
        }
        for (std::size_t d = 0; d < term.size(); ++d) total[d] += term[d];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Real parts of all roots of a monic polynomial (Durand-Kerner, then Newton
/// polishing on the real axis), ascending.
inline std::vector<double> real_roots(const Poly& p) {
    using cplx = std::complex<long double>;
    const std::size_t n = p.size() - 1;
    auto eval = [&](cplx x) {
        cplx v = p[n];
        for (std::size_t i = n; i-- > 0;) v = v * x + p[i];
        return v;
    };
    std::vector<cplx> z(n);
    const cplx seed(0.4L, 0.9L);
    z[0] = 1.0L;
    for (std::size_t i = 1; i < n; ++i) z[i] = z[i - 1] * seed;
    for (int iter = 0; iter < 2000; ++iter) {
        long double moved = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            cplx denom = p[n];
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= (z[i] - z[j]);
            const cplx step = eval(z[i]) / denom;
            z[i] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-30L) break;
    }
    Poly dp(n);
    for (std::size_t i = 1; i <= n; ++i) dp[i - 1] = p[i] * static_cast<long double>(i);
    std::vector<double> out;
    for (auto& r : z) {
        long double x = r.real();
        for (int it = 0; it < 5; ++it) {
            long double f = p[n], df = dp[n - 1];
            for (std::size_t i = n; i-- > 0;) f = f * x + p[i];
            for (std::size_t i = n - 1; i-- > 0;) df = df * x + dp[i];
            if (df == 0.0L) break;
            const long double nx = x - f / df;
            if (std::abs(nx - x) > 1e-6L) break;  // stay near the Durand-Kerner estimate
            x = nx;
        }
        out.push_back(static_cast<double>(x));
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Gaussian blobs: `sizes[c]` points around a per-class center at distance
/// `spread` apart along distinct axes; isotropic unit noise scaled by `noise`.
inline std::vector<std::vector<std::vector<double>>> gaussian_classes(const std::vector<std::size_t>& sizes,
                                                                      std::size_t width, double spread,
                                                                      double noise, std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<std::vector<double>>> out(sizes.size());
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        for (std::size_t i = 0; i < sizes[c]; ++i) {
            std::vector<double> v(width);
            for (auto& x : v) x = noise * normal(gen);
            v[c % width] += spread * static_cast<double>(c / width + 1);
            out[c].push_back(std::move(v));
        }
    }
    return out;
}

}  // namespace oracle
