#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/dense.hpp"
#include "hopfkit/report.hpp"
#include "hopfkit/sparse.hpp"

namespace hopfkit {

/// Basis labels of a tensor product of spaces, leftmost factor most significant.
inline std::vector<std::string> tensor_labels(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x + "⊗" + y);
  return out;
}

/// Kronecker product of coordinate vectors.
inline SparseVec kron(const SparseVec& a, const SparseVec& b) {
  std::vector<SparseVec::Entry> out;
  out.reserve(a.nnz() * b.nnz());
  for (const auto& [i, x] : a.entries())
    for (const auto& [j, y] : b.entries()) out.emplace_back(i * b.dim() + j, x * y);
  return SparseVec::from_sorted(a.field(), a.dim() * b.dim(), std::move(out));
}

/// An exact linear map between tensor products of spaces. The shapes record
/// the factor dimensions so that tensoring and composing can be checked; the
/// matrix is stored as the images of the domain basis vectors.
class LinearOperator {
 public:
  using Shape = std::vector<std::size_t>;

  LinearOperator(FieldSpec field, Shape domain, Shape codomain, std::vector<SparseVec> columns)
      : field_(field), dom_(std::move(domain)), cod_(std::move(codomain)), cols_(std::move(columns)) {
    if (cols_.size() != size_of(dom_)) throw DimensionError("operator has wrong number of columns for its domain");
    for (const auto& c : cols_) {
      if (c.dim() != size_of(cod_)) throw DimensionError("operator column has wrong codomain dimension");
      if (c.field() != field_) throw FieldError("operator mixes fields");
    }
  }

  static LinearOperator identity(FieldSpec field, Shape shape) {
    const std::size_t n = size_of(shape);
    std::vector<SparseVec> cols;
    cols.reserve(n);
    for (std::size_t i = 0; i < n; ++i) cols.push_back(SparseVec::basis(field, n, i));
    return {field, shape, shape, std::move(cols)};
  }

  /// The map built column by column from a function on domain basis indices.
  static LinearOperator from_function(FieldSpec field, Shape domain, Shape codomain,
                                      const std::function<SparseVec(std::size_t)>& image) {
    std::vector<SparseVec> cols;
    const std::size_t n = size_of(domain);
    cols.reserve(n);
    for (std::size_t j = 0; j < n; ++j) cols.push_back(image(j));
    return {field, std::move(domain), std::move(codomain), std::move(cols)};
  }

  /// x⊗y ↦ y⊗x for spaces of dimensions a and b.
  static LinearOperator flip(FieldSpec field, std::size_t a, std::size_t b) {
    return from_function(field, {a, b}, {b, a},
                         [&](std::size_t j) { return SparseVec::basis(field, a * b, (j % b) * a + j / b); });
  }

  static std::size_t size_of(const Shape& s) {
    return std::accumulate(s.begin(), s.end(), std::size_t{1}, std::multiplies<>());
  }

  const FieldSpec& field() const noexcept { return field_; }
  const Shape& domain() const noexcept { return dom_; }
  const Shape& codomain() const noexcept { return cod_; }
  std::size_t domain_dim() const noexcept { return cols_.size(); }
  std::size_t codomain_dim() const { return size_of(cod_); }
  const SparseVec& column(std::size_t j) const { return cols_.at(j); }

  SparseVec apply(const SparseVec& v) const {
    if (v.dim() != domain_dim()) throw DimensionError("operator applied to a vector of the wrong dimension");
    SparseAccumulator acc(field_, codomain_dim());
    for (const auto& [j, c] : v.entries()) acc.add(cols_[j], c);
    return std::move(acc).finish();
  }

  /// this ∘ other.
  LinearOperator after(const LinearOperator& other) const {
    if (size_of(other.cod_) != domain_dim())
      throw DimensionError("operator shape mismatch in composition: " + shape_string(other.cod_) + " into " +
                           shape_string(dom_));
    std::vector<SparseVec> cols;
    cols.reserve(other.domain_dim());
    for (const auto& c : other.cols_) cols.push_back(apply(c));
    return {field_, other.dom_, cod_, std::move(cols)};
  }

  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) { return a.after(b); }

  /// a⊗b acting on the concatenated shapes.
  friend LinearOperator tensor(const LinearOperator& a, const LinearOperator& b) {
    Shape dom = a.dom_, cod = a.cod_;
    dom.insert(dom.end(), b.dom_.begin(), b.dom_.end());
    cod.insert(cod.end(), b.cod_.begin(), b.cod_.end());
    std::vector<SparseVec> cols;
    cols.reserve(a.domain_dim() * b.domain_dim());
    for (const auto& x : a.cols_)
      for (const auto& y : b.cols_) cols.push_back(kron(x, y));
    return {a.field_, std::move(dom), std::move(cod), std::move(cols)};
  }

  DenseMatrix to_dense() const {
    DenseMatrix m(field_, codomain_dim(), domain_dim());
    for (std::size_t j = 0; j < cols_.size(); ++j)
      for (const auto& [i, c] : cols_[j].entries()) m.at(i, j) = c;
    return m;
  }

  std::optional<LinearOperator> inverse() const {
    if (domain_dim() != codomain_dim()) return std::nullopt;
    auto inv = invert_matrix(to_dense());
    if (!inv) return std::nullopt;
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < inv->cols(); ++j) cols.push_back(inv->column(j));
    return LinearOperator(field_, cod_, dom_, std::move(cols));
  }

  bool is_identity() const {
    if (domain_dim() != codomain_dim()) return false;
    for (std::size_t j = 0; j < cols_.size(); ++j)
      if (cols_[j] != SparseVec::basis(field_, cols_.size(), j)) return false;
    return true;
  }

  /// Equal as matrices; shapes may group factors differently.
  friend bool operator==(const LinearOperator& a, const LinearOperator& b) { return a.cols_ == b.cols_; }

  static std::string shape_string(const Shape& s) {
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "×" : "") + std::to_string(s[k]);
    return out.empty() ? "1" : out;
  }

 private:
  FieldSpec field_;
  Shape dom_, cod_;
  std::vector<SparseVec> cols_;
};

LinearOperator tensor(const LinearOperator& a, const LinearOperator& b);

inline LinearOperator tensor(const LinearOperator& a, const LinearOperator& b, const LinearOperator& c) {
  return tensor(tensor(a, b), c);
}

/// Exact comparison; the witness is the first domain basis vector on which the
/// two maps differ, with both images rendered in the codomain labels.
inline VerificationReport compare_operators(const std::string& name, const LinearOperator& lhs,
                                            const LinearOperator& rhs, const std::vector<std::string>& dom_labels,
                                            const std::vector<std::string>& cod_labels) {
  if (lhs.domain_dim() != rhs.domain_dim() || lhs.codomain_dim() != rhs.codomain_dim())
    throw DimensionError("operator shape mismatch in " + name + ": " + LinearOperator::shape_string(lhs.domain()) +
                         "→" + LinearOperator::shape_string(lhs.codomain()) + " vs " +
                         LinearOperator::shape_string(rhs.domain()) + "→" +
                         LinearOperator::shape_string(rhs.codomain()));
  auto label = [&](std::size_t i) { return i < cod_labels.size() ? cod_labels[i] : "e" + std::to_string(i); };
  for (std::size_t j = 0; j < lhs.domain_dim(); ++j) {
    if (lhs.column(j) == rhs.column(j)) continue;
    const std::string at = j < dom_labels.size() ? dom_labels[j] : "e" + std::to_string(j);
    return VerificationReport::fail(name, {"at " + at, {j}, lhs.column(j).to_string(label), rhs.column(j).to_string(label)});
  }
  return VerificationReport::pass(name);
}

}  // namespace hopfkit
