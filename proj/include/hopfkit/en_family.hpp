#pragma once

#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfkit/constructions.hpp"
#include "hopfkit/dense.hpp"
#include "hopfkit/qt.hpp"

namespace hopfkit {

class CrossCheckError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// n for an algebra built by build_en (dimension 2^{n+1}).
inline int en_rank(const FiniteDimHopf& E) {
  const std::size_t d = E.dim();
  if (d < 2 || !std::has_single_bit(d)) throw std::invalid_argument("not an E(n) algebra");
  return std::countr_zero(d) - 1;
}

/// R0 = ½(1⊗1 + c⊗1 + 1⊗c − c⊗c).
inline TensorElement en_r0(const FiniteDimHopf& E) {
  const FieldSpec F = E.field();
  const std::size_t c = en_index(1, {});
  const auto& A = E.algebra();
  const TensorElement sum = TensorElement::basis(A, {0, 0}) + TensorElement::basis(A, {c, 0}) +
                            TensorElement::basis(A, {0, c}) - TensorElement::basis(A, {c, c});
  return Scalar::fraction(F, 1, 2) * sum;
}

/// T_{i,j}(a) = 1⊗1 + a·x_i⊗cx_j.
inline TensorElement en_tij(const FiniteDimHopf& E, int i, int j, const Scalar& a) {
  const int n = en_rank(E);
  if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("T_{i,j} index outside 1..n");
  const auto& A = E.algebra();
  return TensorElement::unit(A, 2) + a * TensorElement::basis(A, {en_index(0, {i}), en_index(1, {j})});
}

namespace detail {

inline void check_square(const FiniteDimHopf& E, const DenseMatrix& A) {
  const auto n = static_cast<std::size_t>(en_rank(E));
  if (A.rows() != n || A.cols() != n) throw DimensionError("matrix must be n×n for E(n)");
  if (A.field() != E.field()) throw FieldError("matrix and algebra fields differ");
}

}  // namespace detail

inline TensorElement en_tA_product(const FiniteDimHopf& E, const DenseMatrix& A) {
  detail::check_square(E, A);
  const int n = en_rank(E);
  TensorElement T = TensorElement::unit(E.algebra(), 2);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const Scalar& a = A.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
      if (!a.is_zero()) T = T * en_tij(E, i, j, a);
    }
  return T;
}

/// 1⊗1 + Σ_{|P|=|F|>0} (−1)^{|P|(|P|−1)/2} det(P,F) x_P ⊗ c^{|P|} x_F.
inline TensorElement en_tA_determinant(const FiniteDimHopf& E, const DenseMatrix& A) {
  detail::check_square(E, A);
  const int n = en_rank(E);
  const FieldSpec F = E.field();
  const std::size_t N = E.dim();
  SparseAccumulator acc(F, N * N);
  acc.add(0, Scalar::one(F));
  const std::size_t full = std::size_t{1} << n;
  for (std::size_t P = 1; P < full; ++P)
    for (std::size_t Fm = 1; Fm < full; ++Fm) {
      const int s = std::popcount(P);
      if (s != std::popcount(Fm)) continue;
      std::vector<std::size_t> rows, cols;
      for (int k = 0; k < n; ++k) {
        if (P >> k & 1) rows.push_back(static_cast<std::size_t>(k));
        if (Fm >> k & 1) cols.push_back(static_cast<std::size_t>(k));
      }
      DenseMatrix minor(F, rows.size(), cols.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) minor.at(r, c) = A.at(rows[r], cols[c]);
      Scalar det = determinant(minor);
      if (det.is_zero()) continue;
      if ((s * (s - 1) / 2) % 2) det = -det;
      acc.add((2 * P) * N + (static_cast<std::size_t>(s % 2) + 2 * Fm), det);
    }
  return {E.algebra(), 2, std::move(acc).finish()};
}

/// T_A, computed both ways; a disagreement is an implementation bug.
inline TensorElement en_tA(const FiniteDimHopf& E, const DenseMatrix& A) {
  TensorElement p = en_tA_product(E, A), d = en_tA_determinant(E, A);
  if (p != d) throw CrossCheckError("T_A product and determinant expansions disagree for A = " + A.to_string());
  return p;
}

inline TensorElement en_rA(const FiniteDimHopf& E, const DenseMatrix& A) { return en_r0(E) * en_tA(E, A); }

inline bool is_symmetric(const DenseMatrix& A) { return A == A.transpose(); }

/// T_AT_B = T_{A+B}, R_AT_B = R_{A+B}, (T_A)21R_B = R_{B−Aᵗ}, (R_A)21R_B = T_{B−Aᵗ}
/// and R_A⁻¹ = (R_{Aᵗ})21.
inline VerificationReport check_en_relations(const FiniteDimHopf& E, const DenseMatrix& A, const DenseMatrix& B) {
  return timed([&] {
    const TensorElement TA = en_tA(E, A), TB = en_tA(E, B), RA = en_rA(E, A), RB = en_rA(E, B);
    const DenseMatrix BmAt = B - A.transpose();
    std::vector<VerificationReport> parts{
        detail::compare("T_AT_B = T_{A+B}", "T_AT_B", TA * TB, en_tA(E, A + B)),
        detail::compare("R_AT_B = R_{A+B}", "R_AT_B", RA * TB, en_rA(E, A + B)),
        detail::compare("(T_A)21R_B = R_{B-At}", "(T_A)21R_B", flip21(TA) * RB, en_rA(E, BmAt)),
        detail::compare("(R_A)21R_B = T_{B-At}", "(R_A)21R_B", flip21(RA) * RB, en_tA(E, BmAt))};
    const auto inv = invert_tensor_element(RA);
    const TensorElement expect = flip21(en_rA(E, A.transpose()));
    if (!inv)
      parts.push_back(VerificationReport::fail("R_A^-1 = (R_At)21", {"R_A", {}, RA.to_string(), "no inverse"}));
    else
      parts.push_back(detail::compare("R_A^-1 = (R_At)21", "R_A⁻¹", *inv, expect));
    return VerificationReport::combine("en-relations", std::move(parts));
  });
}

/// (R_A)12(R_B)13(R_C)23 = (R_C)23(R_B)13(R_A)12.
inline VerificationReport check_modifgen(const FiniteDimHopf& E, const DenseMatrix& A, const DenseMatrix& B,
                                         const DenseMatrix& C) {
  return timed([&] {
    const TensorElement a = leg(en_rA(E, A), 1, 2, 3), b = leg(en_rA(E, B), 1, 3, 3), c = leg(en_rA(E, C), 2, 3, 3);
    return detail::compare("modified-ybe", "(R_A)12(R_B)13(R_C)23 vs (R_C)23(R_B)13(R_A)12", a * b * c, c * b * a);
  });
}

}  // namespace hopfkit
