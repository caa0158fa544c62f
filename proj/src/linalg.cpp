/*
   Copyright 2026 meantest developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "meantest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace meantest {

Matrix Matrix::identity(std::size_t d) {
    Matrix m(d, d, 0.0);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
    return m;
}

Sample::Sample(Matrix data) : data_(std::move(data)) {
    if (data_.rows() == 0 || data_.cols() == 0)
        throw InvalidArgument("sample must have at least one row and one column");
    for (std::size_t i = 0; i < data_.rows(); ++i)
        for (std::size_t j = 0; j < data_.cols(); ++j)
            if (!std::isfinite(data_(i, j)))
                throw InvalidArgument("sample entry (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ") is not finite");
}

SymmetricMatrix::SymmetricMatrix(std::size_t d) : entries_(d, d, 0.0) {
    if (d == 0) throw InvalidArgument("symmetric matrix dimension must be positive");
}

SymmetricMatrix SymmetricMatrix::from_matrix(const Matrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
    SymmetricMatrix s(m.rows());
    for (std::size_t k = 0; k < m.rows(); ++k)
        for (std::size_t l = k; l < m.cols(); ++l) {
            if (m(k, l) != m(l, k)) throw InvalidArgument("matrix is not symmetric");
            if (!std::isfinite(m(k, l))) throw InvalidArgument("matrix entry is not finite");
            s.set(k, l, m(k, l));
        }
    return s;
}

double SymmetricMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t k = 0; k < dim(); ++k) t += entries_(k, k);
    return t;
}

std::vector<double> mean(const Sample& sample) {
    const std::size_t n = sample.n(), d = sample.d();
    std::vector<double> m(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = sample.row(i);
        for (std::size_t k = 0; k < d; ++k) m[k] += row[k];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (double& v : m) v *= inv_n;
    return m;
}

SymmetricMatrix sample_covariance_biased(const Sample& sample) {
    const std::size_t n = sample.n(), d = sample.d();
    const std::vector<double> xbar = mean(sample);
    SymmetricMatrix cov(d);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = k; l < d; ++l) {
            double cross = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const auto row = sample.row(i);
                cross += row[k] * row[l];
            }
            cov.set(k, l, cross * inv_n - xbar[k] * xbar[l]);
        }
    }
    return cov;
}

namespace {

double frobenius_norm(const Matrix& a) {
    double s = 0.0;
    for (double v : a.data()) s += v * v;
    return std::sqrt(s);
}

double off_diagonal_frobenius(const Matrix& a) {
    double s = 0.0;
    const std::size_t d = a.rows();
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p + 1; q < d; ++q) s += 2.0 * a(p, q) * a(p, q);
    return std::sqrt(s);
}

}  // namespace

Spectrum eigen_symmetric(const SymmetricMatrix& input) {
    const std::size_t d = input.dim();
    Matrix a = input.matrix();
    Matrix q = Matrix::identity(d);

    constexpr int kMaxSweeps = 100;
    const double tol = 1e-12 * (1.0 + frobenius_norm(a));

    bool converged = off_diagonal_frobenius(a) <= tol;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t r = p + 1; r < d; ++r) {
                const double apq = a(p, r);
                if (apq == 0.0) continue;
                const double theta = (a(r, r) - a(p, p)) / (2.0 * apq);
                // For very large |theta| the exact formula underflows to the
                // same 1/(2*theta) limit, so no special casing is needed
                // beyond avoiding theta^2 overflow.
                double t;
                if (std::abs(theta) > 1e154) {
                    t = 1.0 / (2.0 * theta);
                } else {
                    t = ((theta >= 0.0) ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) -= t * apq;
                a(r, r) += t * apq;
                a(p, r) = 0.0;
                a(r, p) = 0.0;
                for (std::size_t k = 0; k < d; ++k) {
                    if (k != p && k != r) {
                        const double akp = a(k, p), akr = a(k, r);
                        a(k, p) = akp - s * (akr + tau * akp);
                        a(p, k) = a(k, p);
                        a(k, r) = akr + s * (akp - tau * akr);
                        a(r, k) = a(k, r);
                    }
                    const double qkp = q(k, p), qkr = q(k, r);
                    q(k, p) = qkp - s * (qkr + tau * qkp);
                    q(k, r) = qkr + s * (qkp - tau * qkr);
                }
            }
        }
        converged = off_diagonal_frobenius(a) <= tol;
    }
    if (!converged)
        throw NonConvergence("Jacobi eigensolver did not converge within 100 sweeps");

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    Spectrum spec;
    spec.eigenvalues.resize(d);
    spec.eigenvectors = Matrix(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        spec.eigenvalues[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < d; ++i) spec.eigenvectors(i, j) = q(i, order[j]);
    }
    return spec;
}

Matrix haar_orthogonal(std::size_t d, Rng& rng) {
    if (d == 0) throw InvalidArgument("dimension must be positive");
    Matrix g(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.gaussian();

    // Modified Gram-Schmidt on columns, then fix signs so the implicit R has
    // a positive diagonal (that makes the distribution Haar).
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < d; ++i) dot += g(i, k) * g(i, j);
            for (std::size_t i = 0; i < d; ++i) g(i, j) -= dot * g(i, k);
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < d; ++i) norm += g(i, j) * g(i, j);
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            // Measure-zero event; restart the column with fresh draws.
            for (std::size_t i = 0; i < d; ++i) g(i, j) = rng.gaussian();
            --j;
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) g(i, j) /= norm;
    }
    return g;
}

Sample rotate_rows(const Sample& sample, const Matrix& q) {
    const std::size_t n = sample.n(), d = sample.d();
    if (q.rows() != d || q.cols() != d)
        throw DimensionMismatch("rotation matrix does not match sample dimension");
    Matrix out(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = sample.row(i);
        for (std::size_t r = 0; r < d; ++r) {
            double acc = 0.0;
            for (std::size_t c = 0; c < d; ++c) acc += q(r, c) * row[c];
            out(i, r) = acc;
        }
    }
    return Sample(std::move(out));
}

}  // namespace meantest
