#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/report.hpp"
#include "hopfkit/sparse.hpp"

namespace hopfkit {

/// Raw structure constants of a finite-dimensional algebra with basis b_0..b_{n-1}.
/// mul[i*n + j] = b_i b_j.
struct AlgebraData {
  FieldSpec field;
  std::size_t dim = 0;
  std::vector<std::string> basis;
  std::vector<SparseVec> mul;
  SparseVec unit;
  std::optional<std::vector<int>> grading;  // degree per basis element; parity is what matters
};

/// Immutable structure-constant algebra. The constructor only checks shapes;
/// the algebra laws are certified by verify_algebra_axioms (or by the Hopf gate).
class Algebra {
 public:
  explicit Algebra(AlgebraData d) : d_(std::move(d)) {
    const std::size_t n = d_.dim;
    if (n == 0) throw DimensionError("algebra dimension must be positive");
    if (d_.basis.empty())
      for (std::size_t i = 0; i < n; ++i) d_.basis.push_back("b" + std::to_string(i));
    if (d_.basis.size() != n) throw DimensionError("basis label count != dimension");
    if (d_.mul.size() != n * n) throw DimensionError("multiplication table must have dim^2 entries");
    for (const auto& v : d_.mul) check_vec(v);
    check_vec(d_.unit);
    if (d_.grading && d_.grading->size() != n) throw DimensionError("grading length != dimension");
  }

  const FieldSpec& field() const noexcept { return d_.field; }
  std::size_t dim() const noexcept { return d_.dim; }
  const std::string& label(std::size_t i) const { return d_.basis.at(i); }
  const std::vector<std::string>& labels() const noexcept { return d_.basis; }
  const SparseVec& product(std::size_t i, std::size_t j) const { return d_.mul[i * d_.dim + j]; }
  const SparseVec& unit() const noexcept { return d_.unit; }
  const std::optional<std::vector<int>>& grading() const noexcept { return d_.grading; }
  int parity(std::size_t i) const { return d_.grading ? (((*d_.grading)[i] % 2) + 2) % 2 : 0; }
  const AlgebraData& data() const noexcept { return d_; }

  SparseVec basis_vector(std::size_t i) const { return SparseVec::basis(d_.field, d_.dim, i); }

  SparseVec multiply(const SparseVec& a, const SparseVec& b) const {
    check_vec(a);
    check_vec(b);
    SparseAccumulator acc(d_.field, d_.dim);
    for (const auto& [i, x] : a.entries())
      for (const auto& [j, y] : b.entries()) acc.add(product(i, j), x * y);
    return std::move(acc).finish();
  }

  std::string render(const SparseVec& v) const {
    return v.to_string([this](std::size_t i) { return d_.basis[i]; });
  }

  /// Structural equality of the multiplication, unit and field.
  bool same_structure(const Algebra& o) const {
    return d_.field == o.d_.field && d_.dim == o.d_.dim && d_.mul == o.d_.mul && d_.unit == o.d_.unit;
  }

 private:
  void check_vec(const SparseVec& v) const {
    if (v.field() != d_.field) throw FieldError("algebra data mixes fields");
    if (v.dim() != d_.dim) throw DimensionError("algebra vector has wrong dimension");
  }

  AlgebraData d_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline VerificationReport check_associativity(const Algebra& A) {
  const std::size_t n = A.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec& ij = A.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        SparseVec lhs = A.multiply(ij, A.basis_vector(k));
        SparseVec rhs = A.multiply(A.basis_vector(i), A.product(j, k));
        if (lhs != rhs)
          return VerificationReport::fail(
              "associativity", {"basis (" + A.label(i) + ", " + A.label(j) + ", " + A.label(k) + ")",
                                {i, j, k}, A.render(lhs), A.render(rhs)});
      }
    }
  return VerificationReport::pass("associativity");
}

inline VerificationReport check_unit(const Algebra& A) {
  for (std::size_t i = 0; i < A.dim(); ++i) {
    const SparseVec b = A.basis_vector(i);
    const SparseVec l = A.multiply(A.unit(), b), r = A.multiply(b, A.unit());
    if (l != b) return VerificationReport::fail("unit", {"1*" + A.label(i), {i}, A.render(l), A.render(b)});
    if (r != b) return VerificationReport::fail("unit", {A.label(i) + "*1", {i}, A.render(r), A.render(b)});
  }
  return VerificationReport::pass("unit");
}

/// Multiplication respects the Z/2 grading (only when a grading is present).
inline VerificationReport check_grading(const Algebra& A) {
  if (!A.grading()) return VerificationReport::pass("grading");
  for (const auto& [i, c] : A.unit().entries())
    if (A.parity(i) != 0) return VerificationReport::fail("grading", {"unit", {i}, A.label(i), "even"});
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < A.dim(); ++j)
      for (const auto& [k, c] : A.product(i, j).entries())
        if (A.parity(k) != (A.parity(i) + A.parity(j)) % 2)
          return VerificationReport::fail(
              "grading", {"basis (" + A.label(i) + ", " + A.label(j) + ")", {i, j}, A.label(k), "wrong parity"});
  return VerificationReport::pass("grading");
}

inline VerificationReport verify_algebra_axioms(const Algebra& A) {
  return timed([&] {
    return VerificationReport::combine("algebra-axioms", {check_associativity(A), check_unit(A), check_grading(A)});
  });
}

inline VerificationReport check_commutative(const Algebra& A) {
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = i + 1; j < A.dim(); ++j)
      if (A.product(i, j) != A.product(j, i))
        return VerificationReport::fail("commutative", {"basis (" + A.label(i) + ", " + A.label(j) + ")", {i, j},
                                                        A.render(A.product(i, j)), A.render(A.product(j, i))});
  return VerificationReport::pass("commutative");
}

class AlgebraAxiomError : public std::runtime_error {
 public:
  explicit AlgebraAxiomError(VerificationReport r)
      : std::runtime_error("algebra axioms fail: " + (r.witness ? r.witness->location : r.check_name)),
        report_(std::move(r)) {}
  const VerificationReport& report() const noexcept { return report_; }

 private:
  VerificationReport report_;
};

/// Validated construction: associativity, unit and grading compatibility.
inline AlgebraPtr make_algebra(AlgebraData d) {
  auto A = std::make_shared<const Algebra>(std::move(d));
  auto rep = verify_algebra_axioms(*A);
  if (!rep.passed) throw AlgebraAxiomError(std::move(rep));
  return A;
}

}  // namespace hopfkit
