#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/operator.hpp"

namespace hopfkit {

/// A linear map whose columns are computed on demand. Composites of tensor
/// products and compositions are evaluated column by column, so identities on
/// large tensor powers can be checked without materialising any matrix.
class LazyOperator {
 public:
  using Shape = LinearOperator::Shape;
  using Column = std::function<SparseVec(std::size_t)>;

  LazyOperator(FieldSpec field, Shape domain, Shape codomain, Column column)
      : field_(field), dom_(std::move(domain)), cod_(std::move(codomain)), col_(std::move(column)) {}

  LazyOperator(const LinearOperator& op)  // NOLINT: wrapping is the common case
      : LazyOperator(std::make_shared<const LinearOperator>(op)) {}

  explicit LazyOperator(std::shared_ptr<const LinearOperator> op)
      : field_(op->field()), dom_(op->domain()), cod_(op->codomain()) {
    col_ = [op = std::move(op)](std::size_t j) { return op->column(j); };
  }

  static LazyOperator identity(FieldSpec field, Shape shape) {
    const std::size_t n = LinearOperator::size_of(shape);
    LazyOperator out(field, shape, shape, [field, n](std::size_t j) { return SparseVec::basis(field, n, j); });
    out.identity_ = true;
    return out;
  }

  const FieldSpec& field() const noexcept { return field_; }
  const Shape& domain() const noexcept { return dom_; }
  const Shape& codomain() const noexcept { return cod_; }
  std::size_t domain_dim() const { return LinearOperator::size_of(dom_); }
  std::size_t codomain_dim() const { return LinearOperator::size_of(cod_); }
  bool is_plain_identity() const noexcept { return identity_; }

  SparseVec column(std::size_t j) const { return col_(j); }

  SparseVec apply(const SparseVec& v) const {
    if (identity_) return v;
    if (v.nnz() == 1 && v.entries().front().second.is_one()) return col_(v.entries().front().first);
    SparseAccumulator acc(field_, codomain_dim());
    for (const auto& [j, c] : v.entries()) acc.add(col_(j), c);
    return std::move(acc).finish();
  }

  /// a ∘ b.
  friend LazyOperator operator*(const LazyOperator& a, const LazyOperator& b) {
    if (a.domain_dim() != b.codomain_dim())
      throw DimensionError("operator shape mismatch in composition: " + LinearOperator::shape_string(b.cod_) +
                           " into " + LinearOperator::shape_string(a.dom_));
    if (a.identity_) return LazyOperator(b.field_, b.dom_, a.cod_, b.col_);
    if (b.identity_) return LazyOperator(a.field_, b.dom_, a.cod_, a.col_);
    return {a.field_, b.dom_, a.cod_, [a, b](std::size_t j) { return a.apply(b.col_(j)); }};
  }

  friend LazyOperator tensor(const LazyOperator& a, const LazyOperator& b) {
    Shape dom = a.dom_, cod = a.cod_;
    dom.insert(dom.end(), b.dom_.begin(), b.dom_.end());
    cod.insert(cod.end(), b.cod_.begin(), b.cod_.end());
    if (a.identity_ && b.identity_) return identity(a.field_, dom);
    const std::size_t db = b.domain_dim(), cb = b.codomain_dim();
    const FieldSpec F = a.field_;
    if (a.identity_) {
      const std::size_t ca = a.codomain_dim();
      return {F, std::move(dom), std::move(cod), [b, db, cb, ca, F](std::size_t j) {
                const SparseVec y = b.col_(j % db);
                const std::size_t off = (j / db) * cb;
                std::vector<SparseVec::Entry> e;
                e.reserve(y.nnz());
                for (const auto& [k, c] : y.entries()) e.emplace_back(off + k, c);
                return SparseVec::from_sorted(F, ca * cb, std::move(e));
              }};
    }
    if (b.identity_) {
      const std::size_t ca = a.codomain_dim();
      return {F, std::move(dom), std::move(cod), [a, db, cb, ca, F](std::size_t j) {
                const SparseVec x = a.col_(j / db);
                const std::size_t k = j % db;
                std::vector<SparseVec::Entry> e;
                e.reserve(x.nnz());
                for (const auto& [i, c] : x.entries()) e.emplace_back(i * cb + k, c);
                return SparseVec::from_sorted(F, ca * cb, std::move(e));
              }};
    }
    return {F, std::move(dom), std::move(cod), [a, b, db](std::size_t j) { return kron(a.col_(j / db), b.col_(j % db)); }};
  }

  friend LazyOperator tensor(const LazyOperator& a, const LazyOperator& b, const LazyOperator& c) {
    return tensor(tensor(a, b), c);
  }

  LinearOperator materialize() const {
    return LinearOperator::from_function(field_, dom_, cod_, [this](std::size_t j) { return col_(j); });
  }

 private:
  FieldSpec field_;
  Shape dom_, cod_;
  Column col_;
  bool identity_ = false;
};

using IndexLabel = std::function<std::string(std::size_t)>;

/// Exact column-by-column comparison; the witness is the first differing
/// domain basis vector.
inline VerificationReport compare_lazy(const std::string& name, const LazyOperator& lhs, const LazyOperator& rhs,
                                       const IndexLabel& dom_label, const IndexLabel& cod_label) {
  if (lhs.domain_dim() != rhs.domain_dim() || lhs.codomain_dim() != rhs.codomain_dim())
    throw DimensionError("operator shape mismatch in " + name + ": " + LinearOperator::shape_string(lhs.domain()) +
                         "→" + LinearOperator::shape_string(lhs.codomain()) + " vs " +
                         LinearOperator::shape_string(rhs.domain()) + "→" +
                         LinearOperator::shape_string(rhs.codomain()));
  const std::size_t n = lhs.domain_dim();
  for (std::size_t j = 0; j < n; ++j) {
    SparseVec l = lhs.column(j), r = rhs.column(j);
    if (l == r) continue;
    return VerificationReport::fail(name, {"at " + dom_label(j), {j}, l.to_string(cod_label), r.to_string(cod_label)});
  }
  return VerificationReport::pass(name);
}

}  // namespace hopfkit
