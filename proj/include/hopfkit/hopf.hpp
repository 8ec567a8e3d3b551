#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/algebra.hpp"
#include "hopfkit/dense.hpp"
#include "hopfkit/report.hpp"
#include "hopfkit/sparse_solve.hpp"
#include "hopfkit/tensor.hpp"

namespace hopfkit {

/// Structure constants of a Hopf algebra before validation.
/// comul[i] is Δ(b_i) as a vector over n*n (index a*n + b for b_a ⊗ b_b).
/// antipode.at(i, j) is the coefficient of b_i in S(b_j).
struct HopfData {
  FieldSpec field;
  std::size_t dim = 0;
  std::vector<std::string> basis;
  std::vector<SparseVec> mul;
  std::optional<SparseVec> unit;
  std::vector<SparseVec> comul;
  std::vector<Scalar> counit;
  std::optional<DenseMatrix> antipode;
};

class FiniteDimHopf;
VerificationReport verify_hopf_axioms(const FiniteDimHopf& H);

class HopfAxiomError : public std::runtime_error {
 public:
  explicit HopfAxiomError(VerificationReport r)
      : std::runtime_error("Hopf axioms fail: " + (r.witness ? r.witness->location : r.check_name)),
        report_(std::move(r)) {}
  const VerificationReport& report() const noexcept { return report_; }

 private:
  VerificationReport report_;
};

namespace detail {

/// Finds u with u·b_j = b_j = b_j·u for all j.
inline std::optional<SparseVec> solve_unit(const HopfData& d) {
  const std::size_t n = d.dim;
  SparseEchelon ech(d.field, n, 1);
  for (int side = 0; side < 2; ++side)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<SparseAccumulator> rows(n, SparseAccumulator(d.field, n + 1));
      for (std::size_t l = 0; l < n; ++l) {
        const SparseVec& p = side == 0 ? d.mul[l * n + j] : d.mul[j * n + l];
        for (const auto& [m, c] : p.entries()) rows[m].add(l, c);
      }
      rows[j].add(n, Scalar::one(d.field));
      for (auto& r : rows)
        if (!ech.add_equation(std::move(r).finish())) return std::nullopt;
    }
  auto sol = ech.solve();
  if (!sol) return std::nullopt;
  return (*sol)[0];
}

}  // namespace detail

/// Solves μ(S⊗id)Δ(b_i) = ε(b_i)1 for the matrix of S. The right-sided law is
/// checked afterwards; nullopt when either fails.
inline std::optional<DenseMatrix> compute_antipode(const HopfData& d) {
  const std::size_t n = d.dim;
  std::optional<SparseVec> unit = d.unit;
  if (!unit) unit = detail::solve_unit(d);
  if (!unit) return std::nullopt;
  const std::size_t unknowns = n * n;  // unknown j*n + l is the b_l coefficient of S(b_j)
  SparseEchelon ech(d.field, unknowns, 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<SparseAccumulator> rows(n, SparseAccumulator(d.field, unknowns + 1));
    for (const auto& [f, c] : d.comul[i].entries()) {
      const std::size_t j = f / n, k = f % n;
      for (std::size_t l = 0; l < n; ++l)
        for (const auto& [m, e] : d.mul[l * n + k].entries()) rows[m].add(j * n + l, c * e);
    }
    for (const auto& [m, u] : unit->entries()) rows[m].add(unknowns, d.counit[i] * u);
    for (auto& r : rows)
      if (!ech.add_equation(std::move(r).finish())) return std::nullopt;
  }
  auto sol = ech.solve();
  if (!sol) return std::nullopt;
  DenseMatrix S(d.field, n, n);
  for (const auto& [u, c] : (*sol)[0].entries()) S.at(u % n, u / n) = c;
  // Right-sided law μ(id⊗S)Δ = uε.
  for (std::size_t i = 0; i < n; ++i) {
    SparseAccumulator acc(d.field, n);
    for (const auto& [f, c] : d.comul[i].entries()) {
      const std::size_t j = f / n, k = f % n;
      for (std::size_t l = 0; l < n; ++l)
        if (!S.at(l, k).is_zero()) acc.add(d.mul[j * n + l], c * S.at(l, k));
    }
    if (std::move(acc).finish() != d.counit[i] * *unit) return std::nullopt;
  }
  return S;
}

/// Immutable Hopf algebra handle. Obtain one through create(), which runs the
/// full axiom suite and throws HopfAxiomError on the first failure.
class FiniteDimHopf {
 public:
  static FiniteDimHopf create(HopfData d) {
    FiniteDimHopf H = assemble(std::move(d));
    auto rep = verify_hopf_axioms(H);
    if (!rep.passed) throw HopfAxiomError(std::move(rep));
    return H;
  }

  /// Builds without validating; missing unit/antipode are solved for. Used by
  /// the verifier on untrusted data. Returns nullopt plus a report if even the
  /// solve fails.
  static std::pair<std::optional<FiniteDimHopf>, VerificationReport> assemble_unchecked(HopfData d) {
    try {
      return {assemble(std::move(d)), VerificationReport::pass("assemble")};
    } catch (const HopfAxiomError& e) {
      return {std::nullopt, e.report()};
    }
  }

  const AlgebraPtr& algebra() const noexcept { return impl_->alg; }
  const FieldSpec& field() const noexcept { return impl_->alg->field(); }
  std::size_t dim() const noexcept { return impl_->alg->dim(); }
  const std::string& label(std::size_t i) const { return impl_->alg->label(i); }
  const SparseVec& product(std::size_t i, std::size_t j) const { return impl_->alg->product(i, j); }
  const SparseVec& unit() const noexcept { return impl_->alg->unit(); }
  const SparseVec& comul(std::size_t i) const { return impl_->comul.at(i); }
  const Scalar& counit(std::size_t i) const { return impl_->counit.at(i); }
  const DenseMatrix& antipode() const noexcept { return impl_->S; }
  bool antipode_bijective() const noexcept { return impl_->Sinv.has_value(); }
  const DenseMatrix& antipode_inv() const {
    if (!impl_->Sinv) throw std::logic_error("antipode is not bijective");
    return *impl_->Sinv;
  }
  /// Column j of S (or S⁻¹) as a sparse vector, i.e. S(b_j).
  const SparseVec& antipode_col(std::size_t j, bool inverse = false) const {
    if (inverse && !impl_->Sinv) throw std::logic_error("antipode is not bijective");
    return inverse ? impl_->Sinv_cols.at(j) : impl_->S_cols.at(j);
  }

  SparseVec basis_vector(std::size_t i) const { return SparseVec::basis(field(), dim(), i); }
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const { return impl_->alg->multiply(a, b); }
  std::string render(const SparseVec& v) const { return impl_->alg->render(v); }

  /// Δ(h) as a 2-leg element.
  TensorElement coproduct(const SparseVec& h) const {
    SparseAccumulator acc(field(), dim() * dim());
    for (const auto& [i, c] : h.entries()) acc.add(impl_->comul[i], c);
    return {algebra(), 2, std::move(acc).finish()};
  }
  Scalar counit_of(const SparseVec& h) const {
    Scalar s = Scalar::zero(field());
    for (const auto& [i, c] : h.entries()) s += c * impl_->counit[i];
    return s;
  }
  SparseVec apply_antipode(const SparseVec& h, bool inverse = false) const {
    SparseAccumulator acc(field(), dim());
    for (const auto& [i, c] : h.entries()) acc.add(antipode_col(i, inverse), c);
    return std::move(acc).finish();
  }

  HopfData data() const {
    const auto& a = impl_->alg->data();
    return {a.field, a.dim, a.basis, a.mul, a.unit, impl_->comul, impl_->counit, impl_->S};
  }

 private:
  struct Impl {
    AlgebraPtr alg;
    std::vector<SparseVec> comul;
    std::vector<Scalar> counit;
    DenseMatrix S;
    std::optional<DenseMatrix> Sinv;
    std::vector<SparseVec> S_cols, Sinv_cols;
  };

  explicit FiniteDimHopf(std::shared_ptr<const Impl> p) : impl_(std::move(p)) {}

  static FiniteDimHopf assemble(HopfData d) {
    const std::size_t n = d.dim;
    if (n == 0) throw DimensionError("Hopf algebra dimension must be positive");
    if (d.comul.size() != n) throw DimensionError("comultiplication table must have dim entries");
    if (d.counit.size() != n) throw DimensionError("counit must have dim entries");
    if (d.mul.size() != n * n) throw DimensionError("multiplication table must have dim^2 entries");
    for (const auto& v : d.comul) {
      if (v.dim() != n * n) throw DimensionError("coproduct entry has wrong dimension");
      if (v.field() != d.field) throw FieldError("Hopf data mixes fields");
    }
    for (const auto& s : d.counit)
      if (s.field() != d.field) throw FieldError("Hopf data mixes fields");
    if (!d.unit) {
      d.unit = detail::solve_unit(d);
      if (!d.unit)
        throw HopfAxiomError(VerificationReport::fail("unit", {"unit solve", {}, "no two-sided unit", "unit"}));
    }
    if (!d.antipode) {
      d.antipode = compute_antipode(d);
      if (!d.antipode)
        throw HopfAxiomError(
            VerificationReport::fail("antipode", {"antipode solve", {}, "no solution", "convolution inverse of id"}));
    }
    if (d.antipode->rows() != n || d.antipode->cols() != n) throw DimensionError("antipode matrix has wrong shape");
    if (d.antipode->field() != d.field) throw FieldError("Hopf data mixes fields");
    auto impl = std::make_shared<Impl>();
    impl->alg = std::make_shared<const Algebra>(AlgebraData{d.field, n, std::move(d.basis), std::move(d.mul),
                                                            std::move(*d.unit), std::nullopt});
    impl->comul = std::move(d.comul);
    impl->counit = std::move(d.counit);
    impl->S = std::move(*d.antipode);
    impl->Sinv = invert_matrix(impl->S);
    for (std::size_t j = 0; j < n; ++j) {
      impl->S_cols.push_back(impl->S.column(j));
      if (impl->Sinv) impl->Sinv_cols.push_back(impl->Sinv->column(j));
    }
    return FiniteDimHopf(std::move(impl));
  }

  std::shared_ptr<const Impl> impl_;
};

namespace detail {

inline void check_hopf_element(const FiniteDimHopf& H, const TensorElement& x) {
  if (!TensorElement::same_algebra(*H.algebra(), *x.algebra()))
    throw DimensionError("tensor element does not live over this Hopf algebra");
}

inline void check_leg(std::size_t leg, std::size_t k) {
  if (leg < 1 || leg > k) throw std::out_of_range("leg " + std::to_string(leg) + " outside 1.." + std::to_string(k));
}

}  // namespace detail

/// Δ applied at 1-based position `leg`, which splits into legs (leg, leg+1).
inline TensorElement apply_coproduct_leg(const FiniteDimHopf& H, const TensorElement& x, std::size_t leg) {
  detail::check_hopf_element(H, x);
  detail::check_leg(leg, x.legs());
  const std::size_t n = H.dim(), k = x.legs();
  const std::size_t tail = ipow(n, k - leg);
  SparseAccumulator acc(H.field(), ipow(n, k + 1));
  for (const auto& [f, c] : x.coeffs().entries()) {
    const std::size_t suffix = f % tail, i = (f / tail) % n, prefix = f / tail / n;
    for (const auto& [ab, d] : H.comul(i).entries())
      acc.add(((prefix * n * n) + ab) * tail + suffix, c * d);
  }
  return {x.algebra(), k + 1, std::move(acc).finish()};
}

/// ε applied at `leg`, removing it.
inline TensorElement apply_counit_leg(const FiniteDimHopf& H, const TensorElement& x, std::size_t leg) {
  detail::check_hopf_element(H, x);
  detail::check_leg(leg, x.legs());
  const std::size_t n = H.dim(), k = x.legs();
  const std::size_t tail = ipow(n, k - leg);
  SparseAccumulator acc(H.field(), ipow(n, k - 1));
  for (const auto& [f, c] : x.coeffs().entries()) {
    const std::size_t suffix = f % tail, i = (f / tail) % n, prefix = f / tail / n;
    acc.add(prefix * tail + suffix, c * H.counit(i));
  }
  return {x.algebra(), k - 1, std::move(acc).finish()};
}

/// Applies a linear endomorphism of H, given by its columns, at `leg`.
inline TensorElement apply_linear_leg(const TensorElement& x, std::size_t leg,
                                      const std::vector<SparseVec>& columns) {
  detail::check_leg(leg, x.legs());
  const std::size_t n = x.algebra()->dim(), k = x.legs();
  if (columns.size() != n) throw DimensionError("leg map must have one column per basis element");
  const std::size_t tail = ipow(n, k - leg);
  SparseAccumulator acc(x.field(), x.flat_dim());
  for (const auto& [f, c] : x.coeffs().entries()) {
    const std::size_t suffix = f % tail, i = (f / tail) % n, prefix = f / tail / n;
    for (const auto& [j, d] : columns[i].entries()) acc.add((prefix * n + j) * tail + suffix, c * d);
  }
  return {x.algebra(), k, std::move(acc).finish()};
}

inline TensorElement apply_antipode_leg(const FiniteDimHopf& H, const TensorElement& x, std::size_t leg,
                                        bool inverse = false) {
  detail::check_hopf_element(H, x);
  std::vector<SparseVec> cols;
  cols.reserve(H.dim());
  for (std::size_t j = 0; j < H.dim(); ++j) cols.push_back(H.antipode_col(j, inverse));
  return apply_linear_leg(x, leg, cols);
}

/// Multiplies legs `leg` and `leg+1` together, removing one leg.
inline TensorElement multiply_legs(const TensorElement& x, std::size_t leg) {
  detail::check_leg(leg, x.legs());
  detail::check_leg(leg + 1, x.legs());
  const Algebra& A = *x.algebra();
  const std::size_t n = A.dim(), k = x.legs();
  const std::size_t tail = ipow(n, k - leg - 1);
  SparseAccumulator acc(A.field(), ipow(n, k - 1));
  for (const auto& [f, c] : x.coeffs().entries()) {
    const std::size_t suffix = f % tail, j = (f / tail) % n, i = (f / tail / n) % n, prefix = f / tail / n / n;
    for (const auto& [m, d] : A.product(i, j).entries()) acc.add((prefix * n + m) * tail + suffix, c * d);
  }
  return {x.algebra(), k - 1, std::move(acc).finish()};
}

// ---------------------------------------------------------------------------
// Axiom suite. Each check reports the lexicographically first failing basis tuple.

namespace detail {

inline VerificationReport check_coassociativity(const FiniteDimHopf& H) {
  for (std::size_t i = 0; i < H.dim(); ++i) {
    const TensorElement d = H.coproduct(H.basis_vector(i));
    const TensorElement l = apply_coproduct_leg(H, d, 1), r = apply_coproduct_leg(H, d, 2);
    if (l != r) return VerificationReport::fail("coassociativity", {"basis " + H.label(i), {i}, l.to_string(), r.to_string()});
  }
  return VerificationReport::pass("coassociativity");
}

inline VerificationReport check_counit_law(const FiniteDimHopf& H) {
  for (std::size_t i = 0; i < H.dim(); ++i) {
    const TensorElement d = H.coproduct(H.basis_vector(i));
    const TensorElement b = TensorElement::basis(H.algebra(), {i});
    for (std::size_t leg = 1; leg <= 2; ++leg) {
      const TensorElement r = apply_counit_leg(H, d, leg);
      if (r != b)
        return VerificationReport::fail("counit", {"basis " + H.label(i) + (leg == 1 ? " (ε⊗id)" : " (id⊗ε)"), {i},
                                                   r.to_string(), b.to_string()});
    }
  }
  return VerificationReport::pass("counit");
}

inline VerificationReport check_bialgebra(const FiniteDimHopf& H) {
  const std::size_t n = H.dim();
  const TensorElement one2 = TensorElement::unit(H.algebra(), 2);
  const TensorElement du = H.coproduct(H.unit());
  if (du != one2) return VerificationReport::fail("bialgebra", {"Δ(1)", {}, du.to_string(), one2.to_string()});
  if (!H.counit_of(H.unit()).is_one())
    return VerificationReport::fail("bialgebra", {"ε(1)", {}, H.counit_of(H.unit()).to_string(), "1"});
  std::vector<TensorElement> deltas;
  deltas.reserve(n);
  for (std::size_t i = 0; i < n; ++i) deltas.push_back(H.coproduct(H.basis_vector(i)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const TensorElement l = H.coproduct(H.product(i, j)), r = deltas[i] * deltas[j];
      if (l != r)
        return VerificationReport::fail("bialgebra", {"Δ(" + H.label(i) + "·" + H.label(j) + ")", {i, j},
                                                      l.to_string(), r.to_string()});
      const Scalar el = H.counit_of(H.product(i, j)), er = H.counit(i) * H.counit(j);
      if (el != er)
        return VerificationReport::fail("bialgebra", {"ε(" + H.label(i) + "·" + H.label(j) + ")", {i, j},
                                                      el.to_string(), er.to_string()});
    }
  return VerificationReport::pass("bialgebra");
}

inline VerificationReport check_antipode_law(const FiniteDimHopf& H) {
  for (std::size_t i = 0; i < H.dim(); ++i) {
    const TensorElement d = H.coproduct(H.basis_vector(i));
    const SparseVec expect = H.counit(i) * H.unit();
    for (std::size_t side = 1; side <= 2; ++side) {
      const TensorElement m = multiply_legs(apply_antipode_leg(H, d, side), 1);
      if (m.coeffs() != expect)
        return VerificationReport::fail(
            "antipode", {(side == 1 ? "μ(S⊗id)Δ(" : "μ(id⊗S)Δ(") + H.label(i) + ")", {i}, m.to_string(), H.render(expect)});
    }
  }
  return VerificationReport::pass("antipode");
}

inline VerificationReport check_antipode_inverse(const FiniteDimHopf& H) {
  if (!H.antipode_bijective())
    return VerificationReport::fail("antipode-inverse", {"S", {}, "singular", "invertible"});
  const DenseMatrix I = DenseMatrix::identity(H.field(), H.dim());
  if (H.antipode_inv() * H.antipode() != I || H.antipode() * H.antipode_inv() != I)
    return VerificationReport::fail("antipode-inverse", {"S⁻¹S", {}, "≠ id", "id"});
  return VerificationReport::pass("antipode-inverse");
}

}  // namespace detail

inline VerificationReport verify_hopf_axioms(const FiniteDimHopf& H) {
  return timed([&] {
    return VerificationReport::combine(
        "hopf-axioms", {check_associativity(*H.algebra()), check_unit(*H.algebra()), detail::check_coassociativity(H),
                        detail::check_counit_law(H), detail::check_bialgebra(H), detail::check_antipode_law(H),
                        detail::check_antipode_inverse(H)});
  });
}

/// Runs the suite on raw (possibly corrupted) data.
inline VerificationReport verify_hopf_axioms(const HopfData& d) {
  auto [H, rep] = FiniteDimHopf::assemble_unchecked(d);
  if (!H) return VerificationReport::combine("hopf-axioms", {rep});
  return verify_hopf_axioms(*H);
}

inline VerificationReport check_cocommutative(const FiniteDimHopf& H) {
  for (std::size_t i = 0; i < H.dim(); ++i) {
    const TensorElement d = H.coproduct(H.basis_vector(i));
    const TensorElement s = flip21(d);
    if (d != s) return VerificationReport::fail("cocommutative", {"Δ(" + H.label(i) + ")", {i}, d.to_string(), s.to_string()});
  }
  return VerificationReport::pass("cocommutative");
}

inline VerificationReport check_commutative(const FiniteDimHopf& H) {
  auto r = check_commutative(*H.algebra());
  return r;
}

/// The dual Hopf algebra on the dual basis f_i (f_i(b_j) = δ_ij).
inline FiniteDimHopf build_dual(const FiniteDimHopf& H) {
  const std::size_t n = H.dim();
  const FieldSpec F = H.field();
  HopfData d;
  d.field = F;
  d.dim = n;
  for (std::size_t i = 0; i < n; ++i) d.basis.push_back(H.label(i) + "*");
  std::vector<std::vector<SparseVec::Entry>> mul(n * n), comul(n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& [ij, c] : H.comul(k).entries()) mul[ij].emplace_back(k, c);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : H.product(i, j).entries()) comul[k].emplace_back(i * n + j, c);
  for (auto& m : mul) d.mul.push_back(SparseVec::from_entries(F, n, std::move(m)));
  for (auto& c : comul) d.comul.push_back(SparseVec::from_entries(F, n * n, std::move(c)));
  std::vector<Scalar> eps(n, Scalar::zero(F));
  for (std::size_t k = 0; k < n; ++k) eps[k] = H.counit(k);
  d.unit = SparseVec::from_dense(F, eps);
  for (std::size_t k = 0; k < n; ++k) d.counit.push_back(H.unit().get(k));
  d.antipode = H.antipode().transpose();
  return FiniteDimHopf::create(std::move(d));
}

}  // namespace hopfkit
