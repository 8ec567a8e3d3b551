#pragma once

#include <optional>
#include <stdexcept>
#include <utility>

#include "hopfkit/constructions.hpp"
#include "hopfkit/qt.hpp"

namespace hopfkit {

class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline TensorElement element(const FiniteDimHopf& H, const SparseVec& h) { return {H.algebra(), 1, h}; }

enum class InverseSide { right, left };

/// Δ(z)(z⁻¹⊗z⁻¹), or (z⁻¹⊗z⁻¹)Δ(z) for InverseSide::left.
inline TensorElement coboundary_twist(const FiniteDimHopf& H, const SparseVec& z, InverseSide side = InverseSide::right) {
  if (!H.counit_of(z).is_one()) throw std::invalid_argument("coboundary twist needs ε(z) = 1");
  const auto zi = invert_tensor_element(element(H, z));
  if (!zi) throw std::invalid_argument("coboundary twist needs an invertible z");
  const std::vector<SparseVec> f{zi->coeffs(), zi->coeffs()};
  const TensorElement zz = TensorElement::pure(H.algebra(), f);
  const TensorElement dz = H.coproduct(z);
  return side == InverseSide::right ? dz * zz : zz * dz;
}

/// (Δ(z)⊗1)(1⊗Δ(z)) = (1⊗Δ(z))(Δ(z)⊗1) in H^{⊗3}.
inline VerificationReport is_d_element(const FiniteDimHopf& H, const SparseVec& z) {
  return timed([&] {
    const TensorElement dz = H.coproduct(z);
    const TensorElement l = leg(dz, 1, 2, 3), r = leg(dz, 2, 3, 3);
    return detail::compare("d-element", "(Δ(z)⊗1)(1⊗Δ(z)) vs (1⊗Δ(z))(Δ(z)⊗1)", l * r, r * l);
  });
}

/// (Δ⊗id)F = F23 R12⁻¹ F13 R12 and (id⊗Δ)F = F12 R23⁻¹ F13 R23.
inline VerificationReport check_twist_compat(const FiniteDimHopf& H, const TensorElement& R, const TensorElement& F) {
  return timed([&] {
    const auto Ri = invert_tensor_element(R);
    if (!Ri) return VerificationReport::fail("twist-compat", {"R⁻¹", {}, R.to_string(), "no inverse"});
    const TensorElement F12 = leg(F, 1, 2, 3), F13 = leg(F, 1, 3, 3), F23 = leg(F, 2, 3, 3);
    const TensorElement R12 = leg(R, 1, 2, 3), R23 = leg(R, 2, 3, 3);
    const TensorElement Ri12 = leg(*Ri, 1, 2, 3), Ri23 = leg(*Ri, 2, 3, 3);
    return VerificationReport::combine(
        "twist-compat",
        {detail::compare("(Δ⊗id)F = F23R12⁻¹F13R12", "(Δ⊗id)F", apply_coproduct_leg(H, F, 1), F23 * Ri12 * F13 * R12),
         detail::compare("(id⊗Δ)F = F12R23⁻¹F13R23", "(id⊗Δ)F", apply_coproduct_leg(H, F, 2), F12 * Ri23 * F13 * R23)});
  });
}

struct TwistedQt {
  VerificationReport compat;
  std::optional<std::pair<TensorElement, TensorElement>> structures;  // (RF, F21R)
};

/// When the compatibility conditions hold, RF and F21R must both be quasitriangular.
inline TwistedQt qt_from_twist(const FiniteDimHopf& H, const TensorElement& R, const TensorElement& F) {
  TwistedQt out{check_twist_compat(H, R, F), std::nullopt};
  if (!out.compat.passed) return out;
  TensorElement r1 = R * F, r2 = flip21(F) * R;
  for (const auto* r : {&r1, &r2}) {
    auto q = is_quasitriangular(H, *r);
    if (!q.passed) throw TheoremViolation("compatible twist produced a non-quasitriangular element: " + q.witness->location);
  }
  out.structures.emplace(std::move(r1), std::move(r2));
  return out;
}

// ---------------------------------------------------------------------------
// The families on k[C₂] (basis 1, g).

/// (3+a)/4·1⊗1 + (1−a)/4·(1⊗g + g⊗1 − g⊗g).
inline TensorElement c2_family(const FiniteDimHopf& H, const Scalar& a) {
  if (H.dim() != 2) throw DimensionError("the C2 families live on a 2-dimensional algebra");
  const FieldSpec F = H.field();
  const Scalar four_inv = Scalar(F, 4).inverse();
  const Scalar p = (Scalar(F, 3) + a) * four_inv, q = (Scalar(F, 1) - a) * four_inv;
  const auto& A = H.algebra();
  return p * TensorElement::basis(A, {0, 0}) + q * TensorElement::basis(A, {0, 1}) + q * TensorElement::basis(A, {1, 0}) -
         q * TensorElement::basis(A, {1, 1});
}

inline TensorElement c2_ta(const FiniteDimHopf& H, const Scalar& a) { return c2_family(H, a); }
inline TensorElement c2_ra(const FiniteDimHopf& H, const Scalar& a) { return c2_family(H, a); }

/// θ_α = (1+g)/2 + α(1−g)/2.
inline SparseVec c2_theta(const FiniteDimHopf& H, const Scalar& alpha) {
  const FieldSpec F = H.field();
  const Scalar half = Scalar::fraction(F, 1, 2);
  return SparseVec::from_dense(F, std::vector<Scalar>{half * (Scalar::one(F) + alpha), half * (Scalar::one(F) - alpha)});
}

}  // namespace hopfkit
