#pragma once

#include <stdexcept>
#include <utility>

#include "hopfkit/twisted.hpp"

namespace hopfkit {

/// A graded algebra with a differential of degree one.
struct DGAlgebra {
  AlgebraPtr A;
  LinearOperator d;

  int degree(std::size_t i) const { return (*A->grading())[i]; }
  SparseVec diff(const SparseVec& v) const { return d.apply(v); }
};

class DGValidationError : public std::invalid_argument {
 public:
  explicit DGValidationError(VerificationReport r)
      : std::invalid_argument("not a DG algebra: " + (r.witness ? r.witness->location : r.check_name)),
        report_(std::move(r)) {}
  const VerificationReport& report() const noexcept { return report_; }

 private:
  VerificationReport report_;
};

/// d raises degree by one, d² = 0, and d(ωζ) = d(ω)ζ + (−1)^{|ω|}ωd(ζ) on basis pairs.
inline VerificationReport verify_dg(const DGAlgebra& D) {
  return timed([&] {
    const Algebra& A = *D.A;
    if (!A.grading()) throw DimensionError("a DG algebra needs a degree per basis element");
    const std::size_t n = A.dim();
    if (D.d.domain_dim() != n || D.d.codomain_dim() != n) throw DimensionError("d must be an operator on A");
    std::vector<VerificationReport> parts;

    VerificationReport deg = VerificationReport::pass("degree");
    for (std::size_t j = 0; j < n && deg.passed; ++j)
      for (const auto& [i, c] : D.d.column(j).entries())
        if (D.degree(i) != D.degree(j) + 1) {
          deg = VerificationReport::fail("degree", {"d(" + A.label(j) + ")", {j}, A.label(i), "degree + 1"});
          break;
        }
    parts.push_back(std::move(deg));

    VerificationReport sq = VerificationReport::pass("d²");
    for (std::size_t j = 0; j < n; ++j)
      if (const SparseVec dd = D.diff(D.d.column(j)); !dd.is_zero()) {
        sq = VerificationReport::fail("d²", {"d²(" + A.label(j) + ")", {j}, A.render(dd), "0"});
        break;
      }
    parts.push_back(std::move(sq));

    VerificationReport leib = VerificationReport::pass("leibniz");
    for (std::size_t a = 0; a < n && leib.passed; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const SparseVec l = D.diff(A.product(a, b));
        const Scalar s(A.field(), D.degree(a) % 2 ? -1 : 1);
        const SparseVec r = A.multiply(D.d.column(a), A.basis_vector(b)) +
                            s * A.multiply(A.basis_vector(a), D.d.column(b));
        if (l != r) {
          leib = VerificationReport::fail("leibniz", {"d(" + A.label(a) + A.label(b) + ")", {a, b}, A.render(l), A.render(r)});
          break;
        }
      }
    parts.push_back(std::move(leib));
    return VerificationReport::combine("dg-algebra", std::move(parts));
  });
}

inline DGAlgebra make_dg(AlgebraPtr A, LinearOperator d) {
  DGAlgebra D{std::move(A), std::move(d)};
  auto r = verify_dg(D);
  if (!r.passed) throw DGValidationError(std::move(r));
  return D;
}

/// Exterior algebra on e1..e6 with d(e1) = e3e4, d(e2) = e5e6 and d(eᵢ) = 0
/// otherwise, extended by the Leibniz rule.
inline DGAlgebra fedosov_reference_dg(FieldSpec F) {
  const AlgebraPtr A = exterior_algebra(F, 6);
  const std::size_t n = A->dim();
  std::vector<SparseVec> dgen(6, SparseVec(F, n));
  dgen[0] = SparseVec::basis(F, n, 0b001100);
  dgen[1] = SparseVec::basis(F, n, 0b110000);
  auto d = LinearOperator::from_function(F, {n}, {n}, [&](std::size_t S) {
    // d(x₁⋯x_k) = Σ (−1)^{i−1} x₁⋯x_{i−1} d(x_i) x_{i+1}⋯x_k for generators x.
    SparseAccumulator acc(F, n);
    int sign = 1;
    for (std::size_t i = 0; i < 6; ++i) {
      if (!(S >> i & 1)) continue;
      const std::size_t below = S & ((std::size_t{1} << i) - 1), above = S & ~((std::size_t{2} << i) - 1);
      const SparseVec term = A->multiply(A->multiply(A->basis_vector(below), dgen[i]), A->basis_vector(above));
      acc.add(term, Scalar(F, sign));
      sign = -sign;
    }
    return std::move(acc).finish();
  });
  return make_dg(A, std::move(d));
}

/// T(ω⊗ζ) = ω⊗ζ − (−1)^{|ω|} dω⊗dζ with companions
/// ω⊗ζ⊗η − (−1)^{|ω|+|ζ|} dω⊗ζ⊗dη.
inline TwistCandidate fedosov_twist(const DGAlgebra& D) {
  const FieldSpec F = D.A->field();
  const std::size_t n = D.A->dim();
  auto T = LinearOperator::from_function(F, {n, n}, {n, n}, [&](std::size_t j) {
    const std::size_t w = j / n, z = j % n;
    const Scalar s(F, D.degree(w) % 2 ? 1 : -1);
    return SparseVec::basis(F, n * n, j) + s * kron(D.d.column(w), D.d.column(z));
  });
  auto T3 = LinearOperator::from_function(F, {n, n, n}, {n, n, n}, [&](std::size_t j) {
    const std::size_t w = j / (n * n), z = (j / n) % n, e = j % n;
    const Scalar s(F, (D.degree(w) + D.degree(z)) % 2 ? 1 : -1);
    return SparseVec::basis(F, n * n * n, j) + s * kron(kron(D.d.column(w), SparseVec::basis(F, n, z)), D.d.column(e));
  });
  return {D.A, std::move(T), std::make_pair(T3, T3), true};
}

/// ω∘ζ = ωζ − (−1)^{|ω|} d(ω)d(ζ) evaluated directly.
inline SparseVec fedosov_product(const DGAlgebra& D, std::size_t w, std::size_t z) {
  const Algebra& A = *D.A;
  const Scalar s(A.field(), D.degree(w) % 2 ? 1 : -1);
  return A.product(w, z) + s * A.multiply(D.d.column(w), D.d.column(z));
}

struct FedosovReference {
  DGAlgebra dg;
  TwistCandidate twist;
};

inline FedosovReference fedosov_reference(FieldSpec F) {
  DGAlgebra D = fedosov_reference_dg(F);
  TwistCandidate tc = fedosov_twist(D);
  return {std::move(D), std::move(tc)};
}

}  // namespace hopfkit
