#pragma once

#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "deltak/errors.hpp"
#include "deltak/rational.hpp"
#include "deltak/ratfunc.hpp"

namespace deltak {

/// Dense matrix over an exact field (Rational or RatFunc). The field's zero
/// and one are carried explicitly because RatFunc elements need a signature.
template <class F>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, F zero, F one)
      : rows_(rows), cols_(cols), zero_(std::move(zero)), one_(std::move(one)), data_(rows * cols, zero_) {}

  Matrix(std::size_t rows, std::size_t cols)
    requires std::is_same_v<F, Rational>
      : Matrix(rows, cols, Rational(0), Rational(1)) {}

  static Matrix from_rows(const std::vector<std::vector<F>>& rows, F zero, F one) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c, std::move(zero), std::move(one));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw PreconditionError("Matrix: ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<F>>& rows)
    requires std::is_same_v<F, Rational>
  {
    return from_rows(rows, Rational(0), Rational(1));
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const F& zero() const { return zero_; }
  const F& one() const { return one_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_square() const { return rows_ == cols_; }

  /// Reduced row echelon form; `pivots` receives the pivot column of each
  /// nonzero row.
  Matrix rref(std::vector<std::size_t>* pivots = nullptr) const {
    Matrix m(*this);
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && is_zero(m(p, c))) ++p;
      if (p == rows_) continue;
      if (p != r) {
        for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(r, j));
      }
      const F inv = one_ / m(r, c);
      for (std::size_t j = c; j < cols_; ++j) m(r, j) = m(r, j) * inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || is_zero(m(i, c))) continue;
        const F f = m(i, c);
        for (std::size_t j = c; j < cols_; ++j) {
          if (!is_zero(m(r, j))) m(i, j) = m(i, j) - f * m(r, j);
        }
      }
      piv.push_back(c);
      ++r;
    }
    if (pivots) *pivots = std::move(piv);
    return m;
  }

  std::size_t rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
  }

  /// Basis of {v : M v = 0}: one vector per free column, with a one in that
  /// column and zeros in the other free columns.
  std::vector<std::vector<F>> nullspace() const {
    std::vector<std::size_t> piv;
    const Matrix r = rref(&piv);
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<F> v(cols_, zero_);
      v[f] = one_;
      for (std::size_t i = 0; i < piv.size(); ++i) {
        if (!is_zero(r(i, f))) v[piv[i]] = zero_ - r(i, f);
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  std::vector<F> apply(std::span<const F> v) const {
    if (v.size() != cols_) throw PreconditionError("Matrix::apply: dimension mismatch");
    std::vector<F> out(rows_, zero_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!is_zero(data_[i * cols_ + j]) && !is_zero(v[j])) out[i] = out[i] + data_[i * cols_ + j] * v[j];
      }
    }
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw PreconditionError("Matrix product: dimension mismatch");
    Matrix out(rows_, o.cols_, zero_, one_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        if (is_zero((*this)(i, k))) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) = out(i, j) + (*this)(i, k) * o(k, j);
      }
    }
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_, zero_, one_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  F zero_;
  F one_;
  std::vector<F> data_;
};

/// Row-reduces a list of vectors and returns the nonzero rows of the
/// reduced echelon form: a canonical basis of their span.
template <class F>
std::vector<std::vector<F>> canonical_span(const std::vector<std::vector<F>>& vectors, std::size_t dim,
                                           const F& zero, const F& one) {
  if (vectors.empty()) return {};
  Matrix<F> m = Matrix<F>::from_rows(vectors, zero, one);
  std::vector<std::size_t> piv;
  const Matrix<F> r = m.rref(&piv);
  std::vector<std::vector<F>> out;
  for (std::size_t i = 0; i < piv.size(); ++i) {
    std::vector<F> row(dim, zero);
    for (std::size_t j = 0; j < dim; ++j) row[j] = r(i, j);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace deltak
