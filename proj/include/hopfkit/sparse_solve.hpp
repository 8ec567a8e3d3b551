#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "hopfkit/sparse.hpp"

namespace hopfkit {

/// Incremental row echelon form for large sparse systems with several
/// right-hand sides. Equation rows have dimension unknowns + rhs_count; the
/// trailing coordinates hold the right-hand sides.
///
/// The set of leading columns only depends on the row space, so the solution
/// returned (free variables zero) matches solve_linear on the dense system.
class SparseEchelon {
 public:
  SparseEchelon(FieldSpec field, std::size_t unknowns, std::size_t rhs_count)
      : field_(field), n_(unknowns), m_(rhs_count) {}

  /// Returns false once the system has become inconsistent.
  bool add_equation(SparseVec row) {
    if (row.field() != field_) throw FieldError("field mismatch in sparse system");
    if (row.dim() != n_ + m_) throw DimensionError("equation has wrong dimension");
    if (inconsistent_) return false;
    while (!row.is_zero()) {
      const auto& [lead, coef] = row.entries().front();
      if (lead >= n_) {
        inconsistent_ = true;
        return false;
      }
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        const Scalar inv = coef.inverse();
        pivots_.emplace(lead, inv * row);
        return true;
      }
      row = SparseVec::axpy(row, -coef, it->second);
    }
    return true;
  }

  bool consistent() const noexcept { return !inconsistent_; }
  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t unknowns() const noexcept { return n_; }

  /// Pivot columns in increasing order.
  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> out;
    for (const auto& [c, r] : pivots_) out.push_back(c);
    return out;
  }

  /// One solution vector per right-hand side, or nullopt when inconsistent.
  std::optional<std::vector<SparseVec>> solve() const {
    if (inconsistent_) return std::nullopt;
    // x[k][col] assembled by back substitution from the last pivot upwards.
    std::vector<std::map<std::size_t, Scalar>> x(m_);
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      const std::size_t col = it->first;
      const SparseVec& row = it->second;
      std::vector<Scalar> value(m_, Scalar::zero(field_));
      for (const auto& [j, c] : row.entries()) {
        if (j == col) continue;
        if (j >= n_) {
          value[j - n_] += c;
        } else {
          for (std::size_t k = 0; k < m_; ++k) {
            auto f = x[k].find(j);
            if (f != x[k].end()) value[k] -= c * f->second;
          }
        }
      }
      for (std::size_t k = 0; k < m_; ++k)
        if (!value[k].is_zero()) x[k].emplace(col, std::move(value[k]));
    }
    std::vector<SparseVec> out;
    out.reserve(m_);
    for (auto& xs : x) {
      std::vector<SparseVec::Entry> e(xs.begin(), xs.end());
      out.push_back(SparseVec::from_sorted(field_, n_, std::move(e)));
    }
    return out;
  }

 private:
  FieldSpec field_;
  std::size_t n_, m_;
  bool inconsistent_ = false;
  std::map<std::size_t, SparseVec> pivots_;
};

/// Solves A X = B where A is given by its columns (each of dimension rows) and
/// B by its columns. Returns one solution per right-hand side.
inline std::optional<std::vector<SparseVec>> solve_sparse_columns(FieldSpec field, std::size_t rows,
                                                                  const std::vector<SparseVec>& a_cols,
                                                                  const std::vector<SparseVec>& b_cols) {
  const std::size_t n = a_cols.size(), m = b_cols.size();
  std::vector<std::vector<SparseVec::Entry>> row_entries(rows);
  for (std::size_t j = 0; j < n; ++j) {
    if (a_cols[j].dim() != rows) throw DimensionError("column length mismatch");
    for (const auto& [i, c] : a_cols[j].entries()) row_entries[i].emplace_back(j, c);
  }
  for (std::size_t k = 0; k < m; ++k) {
    if (b_cols[k].dim() != rows) throw DimensionError("rhs length mismatch");
    for (const auto& [i, c] : b_cols[k].entries()) row_entries[i].emplace_back(n + k, c);
  }
  SparseEchelon ech(field, n, m);
  for (auto& re : row_entries)
    if (!ech.add_equation(SparseVec::from_sorted(field, n + m, std::move(re)))) return std::nullopt;
  return ech.solve();
}

}  // namespace hopfkit
