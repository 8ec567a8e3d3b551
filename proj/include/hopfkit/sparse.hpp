#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/scalar.hpp"

namespace hopfkit {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse vector over a fixed field. Entries are sorted by index and never hold zero.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseVec() = default;
  SparseVec(FieldSpec field, std::size_t dim) : field_(field), dim_(dim) {}

  static SparseVec basis(FieldSpec field, std::size_t dim, std::size_t i) {
    return basis(field, dim, i, Scalar::one(field));
  }
  static SparseVec basis(FieldSpec field, std::size_t dim, std::size_t i, Scalar coef) {
    SparseVec v(field, dim);
    v.check_index(i);
    if (!coef.is_zero()) v.entries_.emplace_back(i, std::move(coef));
    return v;
  }

  /// Sorts, merges duplicate indices and drops zeros.
  static SparseVec from_entries(FieldSpec field, std::size_t dim, std::vector<Entry> entries) {
    SparseVec v(field, dim);
    for (const auto& [i, c] : entries) {
      v.check_index(i);
      if (c.field() != field) throw FieldError("field mismatch in sparse vector entry");
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& e : entries) {
      if (!v.entries_.empty() && v.entries_.back().first == e.first) {
        v.entries_.back().second += e.second;
      } else {
        if (!v.entries_.empty() && v.entries_.back().second.is_zero()) v.entries_.pop_back();
        v.entries_.push_back(std::move(e));
      }
    }
    if (!v.entries_.empty() && v.entries_.back().second.is_zero()) v.entries_.pop_back();
    return v;
  }

  /// Trusted construction from entries already sorted, unique and nonzero.
  static SparseVec from_sorted(FieldSpec field, std::size_t dim, std::vector<Entry> entries) {
    SparseVec v(field, dim);
    v.entries_ = std::move(entries);
    return v;
  }

  static SparseVec from_dense(FieldSpec field, std::span<const Scalar> values) {
    SparseVec v(field, values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      if (!values[i].is_zero()) v.entries_.emplace_back(i, values[i]);
    return v;
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const Entry> entries() const noexcept { return entries_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }

  Scalar get(std::size_t i) const {
    check_index(i);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) return it->second;
    return Scalar::zero(field_);
  }

  std::vector<Scalar> to_dense() const {
    std::vector<Scalar> out(dim_, Scalar::zero(field_));
    for (const auto& [i, c] : entries_) out[i] = c;
    return out;
  }

  SparseVec operator-() const {
    SparseVec r = *this;
    for (auto& e : r.entries_) e.second = -e.second;
    return r;
  }

  friend SparseVec operator+(const SparseVec& a, const SparseVec& b) { return axpy(a, Scalar::one(a.field_), b); }
  friend SparseVec operator-(const SparseVec& a, const SparseVec& b) { return axpy(a, -Scalar::one(a.field_), b); }

  friend SparseVec operator*(const Scalar& s, const SparseVec& v) {
    if (s.field() != v.field_) throw FieldError("field mismatch in scalar multiple");
    SparseVec r(v.field_, v.dim_);
    if (s.is_zero()) return r;
    r.entries_.reserve(v.entries_.size());
    for (const auto& [i, c] : v.entries_) r.entries_.emplace_back(i, s * c);
    return r;
  }

  /// a + s*b, merged in one pass.
  static SparseVec axpy(const SparseVec& a, const Scalar& s, const SparseVec& b) {
    if (a.field_ != b.field_ || s.field() != a.field_) throw FieldError("field mismatch in vector sum");
    if (a.dim_ != b.dim_) throw DimensionError("dimension mismatch in vector sum");
    SparseVec r(a.field_, a.dim_);
    if (s.is_zero()) return a;
    r.entries_.reserve(a.entries_.size() + b.entries_.size());
    auto ia = a.entries_.begin(), ib = b.entries_.begin();
    while (ia != a.entries_.end() || ib != b.entries_.end()) {
      if (ib == b.entries_.end() || (ia != a.entries_.end() && ia->first < ib->first)) {
        r.entries_.push_back(*ia++);
      } else if (ia == a.entries_.end() || ib->first < ia->first) {
        r.entries_.emplace_back(ib->first, s * ib->second);
        ++ib;
      } else {
        Scalar c = ia->second + s * ib->second;
        if (!c.is_zero()) r.entries_.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    return r;
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

  /// Human form such as `3*e2 - 1/2*e5`; with labels, `3*x1 - 1/2*c`.
  template <class LabelFn>
  std::string to_string(LabelFn&& label) const {
    if (entries_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [i, c] : entries_) {
      std::string coef = c.to_string();
      bool neg = !coef.empty() && coef[0] == '-';
      if (neg) coef.erase(0, 1);
      if (first)
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      first = false;
      if (coef != "1") out += coef + "*";
      out += label(i);
    }
    return out;
  }
  std::string to_string() const {
    return to_string([](std::size_t i) { return "e" + std::to_string(i); });
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= dim_) throw std::out_of_range("index " + std::to_string(i) + " outside dimension " + std::to_string(dim_));
  }

  FieldSpec field_;
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

/// Collects (index, coefficient) contributions and merges them once at the end.
class SparseAccumulator {
 public:
  SparseAccumulator(FieldSpec field, std::size_t dim) : field_(field), dim_(dim) {}

  void add(std::size_t i, Scalar c) {
    if (!c.is_zero()) pending_.emplace_back(i, std::move(c));
  }
  void add(const SparseVec& v, const Scalar& scale) {
    if (scale.is_zero()) return;
    for (const auto& [i, c] : v.entries()) pending_.emplace_back(i, scale * c);
  }
  void add(const SparseVec& v) {
    for (const auto& e : v.entries()) pending_.push_back(e);
  }
  void reserve(std::size_t n) { pending_.reserve(n); }

  SparseVec finish() && { return SparseVec::from_entries(field_, dim_, std::move(pending_)); }

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::vector<SparseVec::Entry> pending_;
};

}  // namespace hopfkit
