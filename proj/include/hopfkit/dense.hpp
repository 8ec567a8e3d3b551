#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopfkit/scalar.hpp"
#include "hopfkit/sparse.hpp"

namespace hopfkit {

/// Row-major dense matrix over one field.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(field)) {}

  static DenseMatrix identity(FieldSpec field, std::size_t n) {
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(field);
    return m;
  }

  static DenseMatrix from_rows(FieldSpec field, const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    DenseMatrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) {
        if (rows[i][j].field() != field) throw FieldError("field mismatch in matrix entry");
        m.at(i, j) = rows[i][j];
      }
    }
    return m;
  }

  static DenseMatrix from_ints(FieldSpec field, const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<Scalar>> s;
    for (const auto& row : rows) {
      auto& out = s.emplace_back();
      for (long long v : row) out.emplace_back(field, v);
    }
    return from_rows(field, s);
  }

  /// Column j of the result is cols[j].
  static DenseMatrix from_columns(FieldSpec field, std::size_t rows, const std::vector<SparseVec>& cols) {
    DenseMatrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].dim() != rows) throw DimensionError("column length mismatch");
      for (const auto& [i, c] : cols[j].entries()) m.at(i, j) = c;
    }
    return m;
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  SparseVec column(std::size_t j) const {
    std::vector<SparseVec::Entry> e;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!at(i, j).is_zero()) e.emplace_back(i, at(i, j));
    return SparseVec::from_sorted(field_, rows_, std::move(e));
  }

  DenseMatrix transpose() const {
    DenseMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  SparseVec apply(const SparseVec& v) const {
    if (v.field() != field_) throw FieldError("field mismatch in matrix-vector product");
    if (v.dim() != cols_) throw DimensionError("matrix-vector dimension mismatch");
    std::vector<Scalar> acc(rows_, Scalar::zero(field_));
    for (const auto& [j, c] : v.entries())
      for (std::size_t i = 0; i < rows_; ++i)
        if (!at(i, j).is_zero()) acc[i] += at(i, j) * c;
    return SparseVec::from_dense(field_, acc);
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.field_ != b.field_) throw FieldError("field mismatch in matrix product");
    if (a.cols_ != b.rows_) throw DimensionError("matrix product dimension mismatch");
    DenseMatrix r(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b.at(k, j).is_zero()) r.at(i, j) += aik * b.at(k, j);
      }
    return r;
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    a.check_same_shape(b);
    DenseMatrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
    return r;
  }
  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    a.check_same_shape(b);
    DenseMatrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] -= b.data_[k];
    return r;
  }
  DenseMatrix operator-() const {
    DenseMatrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// "1,2;3,4" style literal: rows separated by ';', entries by ','.
  static DenseMatrix parse(FieldSpec field, std::string_view text) {
    std::vector<std::vector<Scalar>> rows;
    std::size_t start = 0;
    while (true) {
      const std::size_t end = text.find(';', start);
      const std::string_view row = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      std::vector<Scalar> r;
      std::size_t s = 0;
      while (true) {
        const std::size_t e = row.find(',', s);
        std::string_view item = row.substr(s, e == std::string_view::npos ? std::string_view::npos : e - s);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        r.push_back(Scalar::parse(field, item));
        if (e == std::string_view::npos) break;
        s = e + 1;
      }
      rows.push_back(std::move(r));
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
    return from_rows(field, rows);
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) s += ";";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += at(i, j).to_string();
      }
    }
    return s;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const DenseMatrix& o) const {
    if (field_ != o.field_) throw FieldError("field mismatch in matrix arithmetic");
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shapes differ");
  }

  FieldSpec field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

namespace detail {

/// Gauss-Jordan on an augmented matrix in place. Pivots are taken column by
/// column, using the first row (from the top of the unreduced block) whose entry
/// is nonzero. Returns the pivot column of each pivot row.
inline std::vector<std::size_t> rref(DenseMatrix& m, std::size_t ncols_to_pivot) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols_to_pivot && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m.at(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    const Scalar inv = m.at(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      const Scalar f = m.at(r, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!m.at(row, j).is_zero()) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Solves Mx = b exactly. Free variables are set to zero, so the returned
/// solution is the canonical one attached to the pivot columns.
inline std::optional<SparseVec> solve_linear(const DenseMatrix& M, const SparseVec& b) {
  if (M.field() != b.field()) throw FieldError("field mismatch in solve_linear");
  if (M.rows() != b.dim()) throw DimensionError("solve_linear: rows != rhs dimension");
  DenseMatrix aug(M.field(), M.rows(), M.cols() + 1);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) aug.at(i, j) = M.at(i, j);
  for (const auto& [i, c] : b.entries()) aug.at(i, M.cols()) = c;
  const auto pivots = detail::rref(aug, M.cols());
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (!aug.at(r, M.cols()).is_zero()) return std::nullopt;
  std::vector<SparseVec::Entry> x;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    if (!aug.at(r, M.cols()).is_zero()) x.emplace_back(pivots[r], aug.at(r, M.cols()));
  return SparseVec::from_sorted(M.field(), M.cols(), std::move(x));
}

/// A basis of {x : Mx = 0}, one vector per free column, taken in column order.
inline std::vector<SparseVec> nullspace(const DenseMatrix& M) {
  DenseMatrix r = M;
  const auto pivots = detail::rref(r, M.cols());
  std::vector<bool> is_pivot(M.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<SparseVec> basis;
  for (std::size_t f = 0; f < M.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(M.cols(), Scalar::zero(M.field()));
    v[f] = Scalar::one(M.field());
    for (std::size_t row = 0; row < pivots.size(); ++row) v[pivots[row]] = -r.at(row, f);
    basis.push_back(SparseVec::from_dense(M.field(), v));
  }
  return basis;
}

inline std::optional<DenseMatrix> invert_matrix(const DenseMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("invert_matrix: matrix is not square");
  const std::size_t n = M.rows();
  DenseMatrix aug(M.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, n + i) = Scalar::one(M.field());
  }
  if (detail::rref(aug, n).size() != n) return std::nullopt;
  DenseMatrix inv(M.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

inline std::size_t rank(const DenseMatrix& M) {
  DenseMatrix copy = M;
  return detail::rref(copy, M.cols()).size();
}

inline Scalar determinant(const DenseMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("determinant: matrix is not square");
  DenseMatrix a = M;
  const std::size_t n = a.rows();
  Scalar det = Scalar::one(M.field());
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a.at(p, col).is_zero()) ++p;
    if (p == n) return Scalar::zero(M.field());
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(col, j));
      det = -det;
    }
    det *= a.at(col, col);
    const Scalar inv = a.at(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a.at(r, col).is_zero()) continue;
      const Scalar f = a.at(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
    }
  }
  return det;
}

}  // namespace hopfkit
