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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "meantest/errors.hpp"
#include "meantest/rng.hpp"

namespace meantest {

/// Dense row-major matrix of doubles.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }

    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// An n x d matrix of observations; rows are the observed vectors.
/// Construction checks n >= 1, d >= 1 and that every entry is finite.
class Sample {
  public:
    explicit Sample(Matrix data);

    std::size_t n() const noexcept { return data_.rows(); }
    std::size_t d() const noexcept { return data_.cols(); }
    const Matrix& data() const noexcept { return data_; }
    std::span<const double> row(std::size_t i) const noexcept { return data_.row(i); }

  private:
    Matrix data_;
};

/// d x d matrix kept exactly symmetric through its setter.
class SymmetricMatrix {
  public:
    explicit SymmetricMatrix(std::size_t d);

    /// Copies a square matrix, requiring exact symmetry of the input.
    static SymmetricMatrix from_matrix(const Matrix& m);

    std::size_t dim() const noexcept { return entries_.rows(); }
    double operator()(std::size_t k, std::size_t l) const noexcept { return entries_(k, l); }

    /// Writes both (k,l) and (l,k).
    void set(std::size_t k, std::size_t l, double value) noexcept {
        entries_(k, l) = value;
        entries_(l, k) = value;
    }

    double trace() const noexcept;
    const Matrix& matrix() const noexcept { return entries_; }

  private:
    Matrix entries_;
};

/// Eigenvalues (descending) and the orthogonal matrix whose columns are the
/// matching eigenvectors.
struct Spectrum {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

/// Arithmetic mean over rows; component k is n^-1 * sum_i data(i,k).
std::vector<double> mean(const Sample& sample);

/// Biased (divisor n) sample covariance:
///   entry(k,l) = n^-1 sum_i x_i(k) x_i(l) - xbar(k) xbar(l).
SymmetricMatrix sample_covariance_biased(const Sample& sample);

/// Cyclic Jacobi eigensolver for symmetric matrices. Converges when the
/// off-diagonal Frobenius norm drops below 1e-12 * (1 + ||A||_F); throws
/// NonConvergence after 100 sweeps.
Spectrum eigen_symmetric(const SymmetricMatrix& a);

/// Haar-distributed random orthogonal matrix (QR of a Gaussian matrix with
/// positive diagonal correction). Used to rotate diagonal models into
/// dense-covariance ones.
Matrix haar_orthogonal(std::size_t d, Rng& rng);

/// Rotate every observation: row_i -> Q * row_i.
Sample rotate_rows(const Sample& sample, const Matrix& q);

}  // namespace meantest
