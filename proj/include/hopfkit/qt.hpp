#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/hopf.hpp"
#include "hopfkit/report.hpp"
#include "hopfkit/tensor.hpp"

namespace hopfkit {

namespace detail {

/// Exact equality of two tensors; the witness is the first basis tensor at
/// which the coefficients differ.
inline VerificationReport compare(std::string name, std::string where, const TensorElement& l,
                                  const TensorElement& r) {
  if (l == r) return VerificationReport::pass(std::move(name));
  const TensorElement diff = l - r;
  if (diff.is_zero()) return VerificationReport::fail(std::move(name), {std::move(where), {}, l.to_string(), r.to_string()});
  const std::size_t f = diff.coeffs().entries().front().first;
  return VerificationReport::fail(std::move(name),
                                  {where + " at " + diff.render_index(f), split_uniform(f, l.algebra()->dim(), l.legs()),
                                   l.coeffs().get(f).to_string(), r.coeffs().get(f).to_string()});
}

inline void require_two_legs(const TensorElement& x) {
  if (x.legs() != 2) throw DimensionError("expected an element of H⊗H");
}

inline VerificationReport invertible_part(const TensorElement& x, std::optional<TensorElement>* out = nullptr) {
  auto inv = invert_tensor_element(x);
  if (out) *out = inv;
  if (inv) return VerificationReport::pass("invertible");
  return VerificationReport::fail("invertible", {"left multiplication", {}, x.to_string(), "no inverse"});
}

inline VerificationReport counit_part(const FiniteDimHopf& H, const TensorElement& x, const std::string& name) {
  const TensorElement one = TensorElement::unit(H.algebra(), 1);
  const TensorElement l = apply_counit_leg(H, x, 1), r = apply_counit_leg(H, x, 2);
  if (l != one) return VerificationReport::fail(name, {"(ε⊗id)", {}, l.to_string(), one.to_string()});
  if (r != one) return VerificationReport::fail(name, {"(id⊗ε)", {}, r.to_string(), one.to_string()});
  return VerificationReport::pass(name);
}

/// lhs_of(h) = rhs_of(h) on every basis element h.
template <class L, class R>
VerificationReport on_basis(const FiniteDimHopf& H, std::string name, std::string what, L lhs_of, R rhs_of) {
  for (std::size_t i = 0; i < H.dim(); ++i) {
    const TensorElement l = lhs_of(i), r = rhs_of(i);
    if (l != r) return VerificationReport::fail(name, {what + " at h = " + H.label(i), {i}, l.to_string(), r.to_string()});
  }
  return VerificationReport::pass(std::move(name));
}

inline VerificationReport intertwines_cop(const FiniteDimHopf& H, const TensorElement& R, std::string name) {
  return on_basis(
      H, std::move(name), "Δcop(h)R = RΔ(h)",
      [&](std::size_t i) { return flip21(H.coproduct(H.basis_vector(i))) * R; },
      [&](std::size_t i) { return R * H.coproduct(H.basis_vector(i)); });
}

inline VerificationReport commutes_with_delta(const FiniteDimHopf& H, const TensorElement& F, std::string name) {
  return on_basis(
      H, std::move(name), "Δ(h)F = FΔ(h)", [&](std::size_t i) { return H.coproduct(H.basis_vector(i)) * F; },
      [&](std::size_t i) { return F * H.coproduct(H.basis_vector(i)); });
}

}  // namespace detail

/// Element of H⊗H placed on legs (a, b) of H^{⊗k}, e.g. leg(R, 3, 1, 3) = R31.
inline TensorElement leg(const TensorElement& x, std::size_t a, std::size_t b, std::size_t k) {
  return leg_embed(x, {a, b}, k);
}

inline VerificationReport is_quasitriangular(const FiniteDimHopf& H, const TensorElement& R) {
  detail::require_two_legs(R);
  return timed([&] {
    const TensorElement R13 = leg(R, 1, 3, 3), R23 = leg(R, 2, 3, 3), R12 = leg(R, 1, 2, 3);
    return VerificationReport::combine(
        "quasitriangular",
        {detail::invertible_part(R),
         detail::compare("(Δ⊗id)R = R13R23", "(Δ⊗id)R", apply_coproduct_leg(H, R, 1), R13 * R23),
         detail::compare("(id⊗Δ)R = R13R12", "(id⊗Δ)R", apply_coproduct_leg(H, R, 2), R13 * R12),
         detail::counit_part(H, R, "counit"), detail::intertwines_cop(H, R, "Δcop R = R Δ")});
  });
}

inline VerificationReport is_triangular(const FiniteDimHopf& H, const TensorElement& R) {
  detail::require_two_legs(R);
  return timed([&] {
    return detail::compare("triangular", "R21R", flip21(R) * R, TensorElement::unit(H.algebra(), 2));
  });
}

/// R12 R31⁻¹ R23 = R23 R31⁻¹ R12 with R⁻¹ inverted on two legs, then embedded.
inline VerificationReport is_pseudotriangular(const FiniteDimHopf& H, const TensorElement& R) {
  detail::require_two_legs(R);
  (void)H;
  return timed([&] {
    const auto Rinv = invert_tensor_element(R);
    if (!Rinv) return VerificationReport::fail("pseudotriangular", {"R⁻¹", {}, R.to_string(), "no inverse"});
    const TensorElement R12 = leg(R, 1, 2, 3), R23 = leg(R, 2, 3, 3), Ri31 = leg(*Rinv, 3, 1, 3);
    return detail::compare("pseudotriangular", "R12R31⁻¹R23 vs R23R31⁻¹R12", R12 * Ri31 * R23, R23 * Ri31 * R12);
  });
}

inline VerificationReport is_almost_triangular(const FiniteDimHopf& H, const TensorElement& R) {
  detail::require_two_legs(R);
  (void)H;
  return timed([&] {
    auto r = is_central(flip21(R) * R);
    r.check_name = "almost-triangular";
    return r;
  });
}

/// Lazy twist axioms, reported separately so that a non-invertible element
/// can still be seen to satisfy the remaining conditions.
inline VerificationReport is_lazy_twist(const FiniteDimHopf& H, const TensorElement& F) {
  detail::require_two_legs(F);
  return timed([&] {
    const TensorElement F12 = leg(F, 1, 2, 3), F23 = leg(F, 2, 3, 3);
    const TensorElement dl = apply_coproduct_leg(H, F, 1), dr = apply_coproduct_leg(H, F, 2);
    return VerificationReport::combine(
        "lazy-twist",
        {detail::invertible_part(F), detail::counit_part(H, F, "counit"),
         detail::compare("twist equation", "(id⊗Δ)(F)(1⊗F) vs (Δ⊗id)(F)(F⊗1)", dr * F23, dl * F12),
         detail::commutes_with_delta(H, F, "lazy"),
         detail::compare("twist consequence", "(1⊗F)(id⊗Δ)(F) vs (F⊗1)(Δ⊗id)(F)", F23 * dr, F12 * dl)});
  });
}

inline VerificationReport is_neat(const FiniteDimHopf& H, const TensorElement& F) {
  detail::require_two_legs(F);
  (void)H;
  return timed([&] {
    const TensorElement F12 = leg(F, 1, 2, 3), F23 = leg(F, 2, 3, 3);
    return detail::compare("neat", "F12F23 vs F23F12", F12 * F23, F23 * F12);
  });
}

inline VerificationReport is_quasi_coboundary(const FiniteDimHopf& H, const TensorElement& R) {
  detail::require_two_legs(R);
  return timed([&] {
    const TensorElement R12 = leg(R, 1, 2, 3), R23 = leg(R, 2, 3, 3);
    return VerificationReport::combine(
        "quasi-coboundary",
        {detail::invertible_part(R),
         detail::compare("R12(Δ⊗id)R = R23(id⊗Δ)R", "cob1", R12 * apply_coproduct_leg(H, R, 1),
                         R23 * apply_coproduct_leg(H, R, 2)),
         detail::counit_part(H, R, "counit"), detail::intertwines_cop(H, R, "Δcop R = R Δ")});
  });
}

inline VerificationReport is_coboundary(const FiniteDimHopf& H, const TensorElement& R) {
  return timed([&] {
    auto t = is_triangular(H, R);
    t.check_name = "R21R = 1⊗1";
    return VerificationReport::combine("coboundary", {is_quasi_coboundary(H, R), std::move(t)});
  });
}

}  // namespace hopfkit
