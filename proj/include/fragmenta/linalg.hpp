// Copyright 2026 The Fragmenta Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fragmenta/parallel.hpp"

namespace fragmenta {

using Complex = std::complex<double>;

/// Dense amplitudes over the computational basis; index = packed configuration.
using StateVector = std::vector<Complex>;

inline Eigen::Map<Eigen::VectorXcd> as_eigen(StateVector& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner product of vectors with different dimensions");
  const auto n = static_cast<Eigen::Index>(a.size());
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), n).dot(Eigen::Map<const Eigen::VectorXcd>(b.data(), n));
}

inline double norm(std::span<const Complex> a) {
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), static_cast<Eigen::Index>(a.size())).norm();
}

inline StateVector basis_state(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("basis index outside the state space");
  StateVector v(dim, Complex{0, 0});
  v[index] = 1;
  return v;
}

inline double max_abs_difference(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("vectors with different dimensions");
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

/// Sparse complex operator in compressed-row layout.
class SparseOperator {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Complex value;
  };

  SparseOperator() = default;
  explicit SparseOperator(std::size_t dim) : dim_(dim), row_ptr_(dim + 1, 0) {}

  /// Duplicate (row, col) entries are summed; exact zeros are dropped.
  static SparseOperator from_entries(std::size_t dim, std::vector<Entry> entries, bool hermitian = false) {
    for (const Entry& e : entries) {
      if (e.row >= dim || e.col >= dim) throw std::out_of_range("sparse entry outside the operator dimension");
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
    SparseOperator op(dim);
    op.hermitian_ = hermitian;
    op.cols_.reserve(entries.size());
    op.values_.reserve(entries.size());
    std::size_t k = 0;
    while (k < entries.size()) {
      const std::size_t r = entries[k].row;
      const std::size_t c = entries[k].col;
      Complex sum = 0;
      for (; k < entries.size() && entries[k].row == r && entries[k].col == c; ++k) sum += entries[k].value;
      if (sum != Complex{0, 0}) {
        op.cols_.push_back(static_cast<std::uint32_t>(c));
        op.values_.push_back(sum);
        ++op.row_ptr_[r + 1];
      }
    }
    for (std::size_t r = 0; r < dim; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
    return op;
  }

  static SparseOperator identity(std::size_t dim) {
    std::vector<Entry> e;
    e.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) e.push_back({k, k, 1.0});
    return from_entries(dim, std::move(e), true);
  }

  /// Permutation |target(k)><k|.
  template <typename Map>
  static SparseOperator permutation(std::size_t dim, Map&& target) {
    std::vector<Entry> e;
    e.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) e.push_back({static_cast<std::size_t>(target(k)), k, 1.0});
    return from_entries(dim, std::move(e));
  }

  std::size_t dimension() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }
  bool hermitian() const { return hermitian_; }
  void set_hermitian(bool h) { hermitian_ = h; }

  std::span<const std::uint32_t> row_cols(std::size_t r) const {
    return {cols_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<const Complex> row_values(std::size_t r) const {
    return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }

  Complex at(std::size_t r, std::size_t c) const {
    const auto cols = row_cols(r);
    const auto it = std::lower_bound(cols.begin(), cols.end(), static_cast<std::uint32_t>(c));
    if (it == cols.end() || *it != c) return 0;
    return row_values(r)[static_cast<std::size_t>(it - cols.begin())];
  }

  std::vector<Entry> entries() const {
    std::vector<Entry> out;
    out.reserve(nnz());
    for (std::size_t r = 0; r < dim_; ++r) {
      const auto cols = row_cols(r);
      const auto vals = row_values(r);
      for (std::size_t k = 0; k < cols.size(); ++k) out.push_back({r, cols[k], vals[k]});
    }
    return out;
  }

  /// out = A * in; rows are processed in parallel stripes.
  void multiply(std::span<const Complex> in, std::span<Complex> out) const {
    if (in.size() != dim_ || out.size() != dim_) throw std::invalid_argument("matvec dimension mismatch");
    parallel_for(dim_, [&](std::size_t begin, std::size_t end) {
      for (std::size_t r = begin; r < end; ++r) {
        Complex acc = 0;
        for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * in[cols_[k]];
        out[r] = acc;
      }
    });
  }

  StateVector apply(std::span<const Complex> in) const {
    StateVector out(dim_);
    multiply(in, out);
    return out;
  }

  Complex expectation(std::span<const Complex> psi) const { return inner(psi, apply(psi)); }

  SparseOperator adjoint() const {
    std::vector<Entry> e = entries();
    for (Entry& x : e) {
      std::swap(x.row, x.col);
      x.value = std::conj(x.value);
    }
    return from_entries(dim_, std::move(e), hermitian_);
  }

  double frobenius_norm() const {
    double acc = 0;
    for (const Complex& v : values_) acc += std::norm(v);
    return std::sqrt(acc);
  }

  /// Largest absolute row sum (induced infinity norm).
  double max_row_sum() const {
    double m = 0;
    for (std::size_t r = 0; r < dim_; ++r) {
      double s = 0;
      for (const Complex& v : row_values(r)) s += std::abs(v);
      m = std::max(m, s);
    }
    return m;
  }

  friend SparseOperator operator+(const SparseOperator& a, const SparseOperator& b) { return combine(a, b, 1.0); }
  friend SparseOperator operator-(const SparseOperator& a, const SparseOperator& b) { return combine(a, b, -1.0); }

  friend SparseOperator operator*(Complex s, const SparseOperator& a) {
    SparseOperator out = a;
    for (Complex& v : out.values_) v *= s;
    out.hermitian_ = a.hermitian_ && s.imag() == 0;
    return out;
  }

  friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
    check_same(a, b);
    std::vector<Entry> e;
    for (std::size_t r = 0; r < a.dim_; ++r) {
      const auto acols = a.row_cols(r);
      const auto avals = a.row_values(r);
      for (std::size_t k = 0; k < acols.size(); ++k) {
        const auto bcols = b.row_cols(acols[k]);
        const auto bvals = b.row_values(acols[k]);
        for (std::size_t j = 0; j < bcols.size(); ++j) e.push_back({r, bcols[j], avals[k] * bvals[j]});
      }
    }
    return from_entries(a.dim_, std::move(e));
  }

 private:
  static void check_same(const SparseOperator& a, const SparseOperator& b) {
    if (a.dim_ != b.dim_) throw std::invalid_argument("operator dimension mismatch");
  }

  static SparseOperator combine(const SparseOperator& a, const SparseOperator& b, double sign) {
    check_same(a, b);
    std::vector<Entry> e = a.entries();
    for (Entry x : b.entries()) {
      x.value *= sign;
      e.push_back(x);
    }
    return from_entries(a.dim_, std::move(e), a.hermitian_ && b.hermitian_);
  }

  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> cols_;
  std::vector<Complex> values_;
  bool hermitian_ = false;
};

inline SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) { return a * b - b * a; }

inline SparseOperator anticommutator(const SparseOperator& a, const SparseOperator& b) { return a * b + b * a; }

/// Frobenius norm of A - A^dagger.
inline double hermiticity_residual(const SparseOperator& a) { return (a - a.adjoint()).frobenius_norm(); }

}  // namespace fragmenta
