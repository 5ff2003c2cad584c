#include "kgcsg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "kgcsg/error.hpp"

namespace kgcsg {

using Eigen::Index;

namespace {

std::string class_name(const SimilarityMatrix& w, Index i) {
    const auto idx = static_cast<std::size_t>(i);
    std::string name = "class " + std::to_string(idx);
    if (w.labels.size() == w.order()) name += " ('" + w.labels[idx] + "')";
    return name;
}

// Householder reduction of a symmetric matrix to tridiagonal form. On return
// d holds the diagonal and e the subdiagonal in e[1..n-1] (e[0] = 0). Only
// the lower triangle of `a` is read.
void tridiagonalize(Eigen::MatrixXd a, std::vector<double>& d, std::vector<double>& e) {
    const Index n = a.rows();
    d.assign(static_cast<std::size_t>(n), 0.0);
    e.assign(static_cast<std::size_t>(n), 0.0);
    for (Index j = 0; j < n; ++j) d[j] = a(n - 1, j);

    for (Index i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (Index k = 0; k < i; ++k) scale += std::abs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (Index j = 0; j < i; ++j) {
                d[j] = a(i - 1, j);
                a(i, j) = 0.0;
                a(j, i) = 0.0;
            }
        } else {
            for (Index k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (Index j = 0; j < i; ++j) e[j] = 0.0;

            for (Index j = 0; j < i; ++j) {
                f = d[j];
                a(j, i) = f;
                g = e[j] + a(j, j) * f;
                for (Index k = j + 1; k <= i - 1; ++k) {
                    g += a(k, j) * d[k];
                    e[k] += a(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (Index j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (Index j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (Index j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (Index k = j; k <= i - 1; ++k) a(k, j) -= (f * e[k] + g * d[k]);
                d[j] = a(i - 1, j);
                a(i, j) = 0.0;
            }
        }
        d[i] = h;
    }
    for (Index j = 0; j < n; ++j) d[j] = a(j, j);
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal (d, e); eigenvalues land in d.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = d.size();
    if (n == 0) return;
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    constexpr int max_iter = 60;
    const double eps = std::ldexp(1.0, -52);
    double f = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t m = l;
        while (m < n && std::abs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > max_iter) {
                    throw NumericError("eigenvalue " + std::to_string(l) + " failed to converge in " +
                                       std::to_string(max_iter) + " QL iterations");
                }
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = 1.0, c3 = 1.0;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

}  // namespace

SimilarityMatrix symmetrize(const SimilarityMatrix& s) {
    if (s.entries.rows() != s.entries.cols()) throw DataError("similarity matrix is not square");
    SimilarityMatrix w = s;
    const Index n = s.entries.rows();
    for (Index i = 0; i < n; ++i) {
        w.entries(i, i) = s.entries(i, i);
        for (Index j = 0; j < i; ++j) {
            const double v = (s.entries(i, j) + s.entries(j, i)) / 2.0;
            w.entries(i, j) = v;
            w.entries(j, i) = v;
        }
    }
    w.symmetrized = true;
    return w;
}

Eigen::VectorXd degree_matrix(const SimilarityMatrix& w) {
    const Index n = w.entries.rows();
    Eigen::VectorXd deg(n);
    for (Index i = 0; i < n; ++i) {
        double sum = 0.0;
        for (Index j = 0; j < n; ++j) {
            const double v = w.entries(i, j);
            if (v < 0.0) throw DataError("negative similarity at " + class_name(w, i));
            sum += v;
        }
        if (sum == 0.0) throw NumericError("isolated class: " + class_name(w, i) + " has zero degree");
        deg(i) = sum;
    }
    return deg;
}

Laplacian normalized_laplacian(const SimilarityMatrix& w) {
    if (!w.symmetrized) throw ConfigError("normalized_laplacian requires a symmetrized similarity matrix");
    const Eigen::VectorXd deg = degree_matrix(w);
    const Index n = deg.size();
    Eigen::VectorXd inv_sqrt(n);
    for (Index i = 0; i < n; ++i) inv_sqrt(i) = 1.0 / std::sqrt(deg(i));

    Laplacian l;
    l.entries.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j <= i; ++j) {
            const double v = (i == j ? 1.0 : 0.0) - w.entries(i, j) * inv_sqrt(i) * inv_sqrt(j);
            l.entries(i, j) = v;
            l.entries(j, i) = v;
        }
    }
    l.symmetric = true;
    return l;
}

Laplacian laplacian_as_written(const SimilarityMatrix& s) {
    const Eigen::VectorXd deg = degree_matrix(s);
    const Index n = deg.size();
    Laplacian l;
    l.entries.resize(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            l.entries(i, j) = (i == j ? 1.0 : 0.0) - s.entries(i, j) / std::sqrt(deg(i)) / std::sqrt(deg(j));
        }
    }
    l.symmetric = false;
    return l;
}

Spectrum eigenvalues_symmetric(const Laplacian& l) {
    if (!l.symmetric) throw ConfigError("eigenvalues_symmetric requires a symmetric Laplacian");
    if (l.entries.rows() != l.entries.cols()) throw DataError("Laplacian is not square");
    Spectrum spec;
    if (l.entries.rows() == 0) return spec;
    std::vector<double> e;
    tridiagonalize(l.entries, spec.eigenvalues, e);
    tridiagonal_ql(spec.eigenvalues, e);
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end());
    return spec;
}

Spectrum eigenvalues_general(const Laplacian& l) {
    if (l.entries.rows() != l.entries.cols()) throw DataError("Laplacian is not square");
    Spectrum spec;
    if (l.entries.rows() == 0) return spec;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(l.entries, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericError("general eigensolver failed to converge");
    const auto& ev = solver.eigenvalues();
    std::vector<std::complex<double>> values(ev.data(), ev.data() + ev.size());
    std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    for (const auto& v : values) {
        spec.eigenvalues.push_back(v.real());
        spec.max_imag = std::max(spec.max_imag, std::abs(v.imag()));
    }
    return spec;
}

double csg_at(const Spectrum& spec, std::size_t k_c) {
    const auto& lam = spec.eigenvalues;
    if (lam.size() < 2 || k_c < 1 || k_c > lam.size() - 1) {
        throw ConfigError("k_c = " + std::to_string(k_c) + " out of range [1, " +
                          std::to_string(lam.empty() ? 0 : lam.size() - 1) + "]");
    }
    // Neumaier-compensated gap sum.
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t i = 0; i < k_c; ++i) {
        const double gap = lam[i + 1] - lam[i];
        const double t = sum + gap;
        comp += std::abs(sum) >= std::abs(gap) ? (sum - t) + gap : (gap - t) + sum;
        sum = t;
    }
    sum += comp;
    const double closed = lam[k_c] - lam[0];
    if (std::abs(sum - closed) > 1e-12) {
        throw NumericError("gap sum and closed-form CSG disagree at k_c = " + std::to_string(k_c));
    }
    return closed;
}

CsgValues csg(const Spectrum& spec, const std::vector<std::size_t>& cutoffs) {
    if (!std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end())) {
        throw ConfigError("spectrum is not sorted ascending");
    }
    if (spec.eigenvalues.size() < 2) throw DataError("CSG needs at least 2 eigenvalues");
    CsgValues out;
    out.csg_full = csg_at(spec, spec.eigenvalues.size() - 1);
    for (auto kc : cutoffs) out.csg_at.emplace_back(kc, csg_at(spec, kc));
    return out;
}

}  // namespace kgcsg
