#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/algebra.hpp"
#include "hopfkit/lazy_operator.hpp"
#include "hopfkit/twists.hpp"
#include "hopfkit/ydmod.hpp"

namespace hopfkit {

/// A precondition of a construction does not hold (bad input, not a theorem failure).
class TwistError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hypotheses of a construction were checked and at least one failed.
class HypothesisError : public std::invalid_argument {
 public:
  explicit HypothesisError(VerificationReport r)
      : std::invalid_argument("hypothesis fails: " + (r.witness ? r.witness->location : r.check_name)),
        report_(std::move(r)) {}
  const VerificationReport& report() const noexcept { return report_; }

 private:
  VerificationReport report_;
};

/// T on A⊗A with its companions on A⊗A⊗A, stored explicitly.
struct TwistCandidate {
  AlgebraPtr A;
  LinearOperator T;
  std::optional<std::pair<LinearOperator, LinearOperator>> companions;
  bool unital = true;
};

/// R-matrix form: the same T with companions T̄₁, T̄₂.
struct RMatrixCandidate {
  AlgebraPtr A;
  LinearOperator T;
  LinearOperator bar1, bar2;
  bool unital = true;
};

// ---------------------------------------------------------------------------
// Structure maps and small algebras.

inline LinearOperator mul_op(const Algebra& A) {
  const std::size_t n = A.dim();
  return LinearOperator::from_function(A.field(), {n, n}, {n}, [&](std::size_t j) { return A.product(j / n, j % n); });
}

inline LinearOperator unit_op(const Algebra& A) {
  return LinearOperator(A.field(), {1}, {A.dim()}, {A.unit()});
}

inline LinearOperator identity_op(const Algebra& A, std::size_t legs = 1) {
  return LinearOperator::identity(A.field(), LinearOperator::Shape(legs, A.dim()));
}

inline LinearOperator plain_flip(const Algebra& A) { return LinearOperator::flip(A.field(), A.dim(), A.dim()); }

/// a⊗b ↦ (−1)^{|a||b|} b⊗a.
inline LinearOperator graded_flip(const Algebra& A) {
  const std::size_t n = A.dim();
  return LinearOperator::from_function(A.field(), {n, n}, {n, n}, [&](std::size_t j) {
    const std::size_t a = j / n, b = j % n;
    const int s = A.parity(a) && A.parity(b) ? -1 : 1;
    return SparseVec::basis(A.field(), n * n, b * n + a, Scalar(A.field(), s));
  });
}

/// k[x]/(x²) with basis 1, x; x is odd when requested.
inline AlgebraPtr dual_numbers(FieldSpec F, bool x_odd = false) {
  AlgebraData d;
  d.field = F;
  d.dim = 2;
  d.basis = {"1", "x"};
  d.mul = {SparseVec::basis(F, 2, 0), SparseVec::basis(F, 2, 1), SparseVec::basis(F, 2, 1), SparseVec(F, 2)};
  d.unit = SparseVec::basis(F, 2, 0);
  if (x_odd) d.grading = std::vector<int>{0, 1};
  return make_algebra(std::move(d));
}

/// Exterior algebra on e1..ek; basis e_S indexed by the bitmask S, graded by |S|.
inline AlgebraPtr exterior_algebra(FieldSpec F, std::size_t k) {
  if (k > 10) throw DimensionError("exterior algebra on more than 10 generators");
  const std::size_t n = std::size_t{1} << k;
  AlgebraData d;
  d.field = F;
  d.dim = n;
  d.grading.emplace();
  for (std::size_t S = 0; S < n; ++S) {
    std::string label;
    for (std::size_t i = 0; i < k; ++i)
      if (S >> i & 1) label += "e" + std::to_string(i + 1);
    d.basis.push_back(label.empty() ? "1" : label);
    d.grading->push_back(std::popcount(S));
  }
  for (std::size_t S = 0; S < n; ++S)
    for (std::size_t T = 0; T < n; ++T)
      d.mul.push_back(S & T ? SparseVec(F, n) : SparseVec::basis(F, n, S | T, Scalar(F, detail::shuffle_sign(S, T))));
  d.unit = SparseVec::basis(F, n, 0);
  return make_algebra(std::move(d));
}

namespace detail {

/// Labels a tensor-power index by the basis labels of A; factors of dimension
/// one are the ground field and print as 1.
inline IndexLabel power_label(const AlgebraPtr& A, LinearOperator::Shape shape) {
  return [A, shape = std::move(shape)](std::size_t j) {
    std::vector<std::string> parts(shape.size());
    for (std::size_t k = shape.size(); k-- > 0;) {
      const std::size_t d = shape[k];
      parts[k] = d == A->dim() ? A->label(j % d) : (d == 1 ? "1" : "e" + std::to_string(j % d));
      j /= d;
    }
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? "⊗" : "") + parts[k];
    return out;
  };
}

/// Operators on tensor powers of one algebra, with the comparisons labelled.
struct Kit {
  AlgebraPtr A;
  LazyOperator id, mu, u, T;

  Kit(AlgebraPtr a, const LinearOperator& t)
      : A(std::move(a)),
        id(LazyOperator::identity(A->field(), {A->dim()})),
        mu(mul_op(*A)),
        u(unit_op(*A)),
        T(t) {
    const std::size_t n = A->dim();
    if (t.domain_dim() != n * n || t.codomain_dim() != n * n) throw DimensionError("T must be an operator on A⊗A");
  }

  LazyOperator L(const LazyOperator& x) const { return tensor(id, x); }  // id⊗x
  LazyOperator R(const LazyOperator& x) const { return tensor(x, id); }  // x⊗id

  VerificationReport eq(const std::string& name, const LazyOperator& l, const LazyOperator& r) const {
    return compare_lazy(name, l, r, power_label(A, l.domain()), power_label(A, l.codomain()));
  }

  void check3(const LinearOperator& op, const std::string& what) const {
    const std::size_t n = A->dim(), N = n * n * n;
    if (op.domain_dim() != N || op.codomain_dim() != N)
      throw DimensionError(what + " must be an operator on A⊗A⊗A");
  }
};

inline std::size_t index_parity(const Algebra& A, std::size_t j, std::size_t legs) {
  std::size_t p = 0;
  for (std::size_t k = 0; k < legs; ++k, j /= A.dim()) p += A.parity(j % A.dim());
  return p % 2;
}

/// Morphisms of graded spaces must preserve parity.
inline VerificationReport check_even(const AlgebraPtr& A, const LinearOperator& op, std::size_t legs,
                                     const std::string& name) {
  if (!A->grading()) return VerificationReport::pass(name);
  for (std::size_t j = 0; j < op.domain_dim(); ++j)
    for (const auto& [i, c] : op.column(j).entries())
      if (index_parity(*A, i, legs) != index_parity(*A, j, legs))
        return VerificationReport::fail(
            name, {"at " + power_label(A, LinearOperator::Shape(legs, A->dim()))(j), {j}, "parity changes", "even"});
  return VerificationReport::pass(name);
}

inline const std::pair<LinearOperator, LinearOperator>& companions_of(const TwistCandidate& tc) {
  if (!tc.companions) throw TwistError("pseudotwistor companions missing");
  return *tc.companions;
}

inline VerificationReport unit_conditions(const Kit& K) {
  return VerificationReport::combine("unit", {K.eq("T(u⊗id) = u⊗id", K.T * K.R(K.u), K.R(K.u)),
                                              K.eq("T(id⊗u) = id⊗u", K.T * K.L(K.u), K.L(K.u))});
}

/// μ∘T with the original unit and grading; nothing verified yet.
inline AlgebraPtr product_through(const AlgebraPtr& A, const LinearOperator& T) {
  const std::size_t n = A->dim();
  const LinearOperator mu = mul_op(*A);
  AlgebraData d = A->data();
  for (std::size_t j = 0; j < n * n; ++j) d.mul[j] = mu.apply(T.column(j));
  return std::make_shared<const Algebra>(std::move(d));
}

inline AlgebraPtr certified_twist(const AlgebraPtr& A, const LinearOperator& T, bool unital) {
  AlgebraPtr B = product_through(A, T);
  auto fail = [](const VerificationReport& r) {
    throw TheoremViolation("twisted product fails " + r.check_name + " at " + r.witness->location);
  };
  if (auto r = check_associativity(*B); !r.passed) fail(r);
  if (unital)
    if (auto r = check_unit(*B); !r.passed) fail(r);
  if (auto r = check_grading(*B); !r.passed) fail(r);
  return B;
}

}  // namespace detail

/// Inverse of an operator. Large unipotent maps I+N with N nilpotent of small
/// index are inverted by the finite Neumann series; everything else goes
/// through dense elimination.
inline std::optional<LinearOperator> invert_operator(const LinearOperator& op) {
  if (op.domain_dim() != op.codomain_dim()) return std::nullopt;
  const std::size_t n = op.domain_dim();
  if (n > 256) {
    const FieldSpec F = op.field();
    std::vector<SparseVec> N;
    N.reserve(n);
    for (std::size_t j = 0; j < n; ++j) N.push_back(op.column(j) - SparseVec::basis(F, n, j));
    const LinearOperator Nop(F, op.codomain(), op.domain(), std::move(N));
    std::vector<SparseVec> sum, term;
    for (std::size_t j = 0; j < n; ++j) sum.push_back(SparseVec::basis(F, n, j));
    term = sum;
    for (int k = 1; k <= 8; ++k) {
      bool zero = true;
      for (std::size_t j = 0; j < n; ++j) {
        term[j] = -Nop.apply(term[j]);
        zero = zero && term[j].is_zero();
        sum[j] = sum[j] + term[j];
      }
      if (zero) return LinearOperator(F, op.codomain(), op.domain(), std::move(sum));
    }
  }
  return op.inverse();
}

// ---------------------------------------------------------------------------
// Pseudotwistors.

inline VerificationReport verify_pseudotwistor(const TwistCandidate& tc) {
  const auto& [t1, t2] = detail::companions_of(tc);
  return timed([&] {
    const detail::Kit K(tc.A, tc.T);
    K.check3(t1, "T̃1");
    K.check3(t2, "T̃2");
    const LazyOperator T1(t1), T2(t2), &T = K.T;
    std::vector<VerificationReport> parts;
    if (tc.A->grading())
      parts.push_back(VerificationReport::combine(
          "even", {detail::check_even(tc.A, tc.T, 2, "T even"), detail::check_even(tc.A, t1, 3, "T̃1 even"),
                   detail::check_even(tc.A, t2, 3, "T̃2 even")}));
    if (tc.unital) parts.push_back(detail::unit_conditions(K));
    parts.push_back(K.eq("catw1", K.L(K.mu) * T1 * K.R(T), T * K.L(K.mu)));
    parts.push_back(K.eq("catw2", K.R(K.mu) * T2 * K.L(T), T * K.R(K.mu)));
    parts.push_back(K.eq("catw3", T1 * K.R(T) * K.L(T), T2 * K.L(T) * K.R(T)));
    return VerificationReport::combine("pseudotwistor", std::move(parts));
  });
}

/// (A, μ∘T, u), re-verified exhaustively. A failure contradicts the
/// construction and throws.
inline AlgebraPtr twist_algebra(const TwistCandidate& tc) { return detail::certified_twist(tc.A, tc.T, tc.unital); }

inline VerificationReport verify_strong(const TwistCandidate& tc) {
  const auto& [t1, t2] = detail::companions_of(tc);
  if (!invert_operator(tc.T)) throw TwistError("T is not invertible");
  return timed([&] {
    const detail::Kit K(tc.A, tc.T);
    K.check3(t1, "T̃1");
    K.check3(t2, "T̃2");
    const LazyOperator T1(t1), T2(t2), &T = K.T;
    auto s1 = K.eq("strongpseudo1", T2 * K.L(T), K.L(T) * T1);
    auto s2 = K.eq("strongpseudo2", T1 * K.R(T), K.R(T) * T2);
    if (!s1.passed || !s2.passed) return VerificationReport::combine("strong", {std::move(s1), std::move(s2)});
    const LazyOperator Taa_a = T2 * K.L(T), Ta_aa = T1 * K.R(T);
    auto lemma = VerificationReport::combine(
        "lemma", {K.eq("T1", K.R(T) * Taa_a, Taa_a * K.R(T)), K.eq("T2", K.L(T) * Ta_aa, Ta_aa * K.L(T)),
                  K.eq("T3", Taa_a * K.R(T), Ta_aa * K.L(T)), K.eq("T4", K.R(T) * T2 * K.L(T), K.L(T) * T1 * K.R(T))});
    if (!lemma.passed && verify_pseudotwistor(tc).passed)
      throw TheoremViolation("strong pseudotwistor violates the lemma: " + lemma.witness->location);
    return VerificationReport::combine("strong", {std::move(s1), std::move(s2), std::move(lemma)});
  });
}

inline VerificationReport verify_pure(const TwistCandidate& tc) {
  const auto& [t1, t2] = detail::companions_of(tc);
  return timed([&] {
    const detail::Kit K(tc.A, tc.T);
    K.check3(t1, "T̃1");
    K.check3(t2, "T̃2");
    const LazyOperator T1(t1), T2(t2);
    return K.eq("purepseudo", K.R(T2) * K.L(T1), K.L(T1) * K.R(T2));
  });
}

// ---------------------------------------------------------------------------
// R-matrices.

/// T₁₃ = (id⊗P)(T⊗id)(id⊗P) with P the plain flip.
inline LinearOperator leg13(const Algebra& A, const LinearOperator& T) {
  const LazyOperator id = LazyOperator::identity(A.field(), {A.dim()}), P(plain_flip(A)), t(T);
  return (tensor(id, P) * tensor(t, id) * tensor(id, P)).materialize();
}

inline VerificationReport verify_rmatrix_categorical(const RMatrixCandidate& rc) {
  return timed([&] {
    const detail::Kit K(rc.A, rc.T);
    K.check3(rc.bar1, "T̄1");
    K.check3(rc.bar2, "T̄2");
    const LazyOperator B1(rc.bar1), B2(rc.bar2), &T = K.T;
    std::vector<VerificationReport> parts;
    if (rc.unital) parts.push_back(detail::unit_conditions(K));
    parts.push_back(K.eq("Rmatrix1", K.L(K.mu) * K.R(T) * B1, T * K.L(K.mu)));
    parts.push_back(K.eq("Rmatrix2", K.R(K.mu) * K.L(T) * B2, T * K.R(K.mu)));
    parts.push_back(K.eq("Rmatrix3", K.R(T) * B1 * K.L(T), K.L(T) * B2 * K.R(T)));
    return VerificationReport::combine("rmatrix", std::move(parts));
  });
}

inline AlgebraPtr rmatrix_algebra(const RMatrixCandidate& rc) { return detail::certified_twist(rc.A, rc.T, rc.unital); }

/// Borcherds' conditions on a plain algebra; on success the algebra μ∘T is
/// built with companions T₁₃ and re-verified.
inline VerificationReport verify_rmatrix_borcherds(const AlgebraPtr& A, const LinearOperator& T) {
  if (A->grading()) throw TwistError("Borcherds R-matrices are checked on plain (ungraded) algebras");
  auto rep = timed([&] {
    const detail::Kit K(A, T);
    const LazyOperator T13(leg13(*A, T)), T12 = K.R(K.T), T23 = K.L(K.T);
    return VerificationReport::combine(
        "borcherds", {detail::unit_conditions(K), K.eq("rmat1", K.L(K.mu) * T12 * T13, K.T * K.L(K.mu)),
                      K.eq("rmat2", K.R(K.mu) * T23 * T13, K.T * K.R(K.mu)),
                      K.eq("rmat3", T12 * T13 * T23, T23 * T13 * T12)});
  });
  if (rep.passed) {
    const LinearOperator t13 = leg13(*A, T);
    rmatrix_algebra({A, T, t13, t13, true});
  }
  return rep;
}

inline RMatrixCandidate pseudotwistor_to_rmatrix(const TwistCandidate& tc) {
  const auto& [t1, t2] = detail::companions_of(tc);
  const auto Ti = invert_operator(tc.T);
  if (!Ti) throw TwistError("T is not invertible");
  const detail::Kit K(tc.A, tc.T);
  const LazyOperator inv(*Ti);
  return {tc.A, tc.T, (K.R(inv) * LazyOperator(t1) * K.R(K.T)).materialize(),
          (K.L(inv) * LazyOperator(t2) * K.L(K.T)).materialize(), tc.unital};
}

inline TwistCandidate rmatrix_to_pseudotwistor(const RMatrixCandidate& rc) {
  const auto Ti = invert_operator(rc.T);
  if (!Ti) throw TwistError("T is not invertible");
  const detail::Kit K(rc.A, rc.T);
  const LazyOperator inv(*Ti);
  return {rc.A, rc.T,
          std::make_pair((K.R(K.T) * LazyOperator(rc.bar1) * K.R(inv)).materialize(),
                         (K.L(K.T) * LazyOperator(rc.bar2) * K.L(inv)).materialize()),
          rc.unital};
}

// ---------------------------------------------------------------------------
// Composition and inversion.

/// partic1–partic4 for the pair (T, D).
inline VerificationReport check_partic(const TwistCandidate& tcT, const TwistCandidate& tcD) {
  const auto& [t1, t2] = detail::companions_of(tcT);
  const auto& [d1, d2] = detail::companions_of(tcD);
  return timed([&] {
    const detail::Kit K(tcT.A, tcT.T);
    const LazyOperator T(tcT.T), D(tcD.T);
    const LazyOperator Taa_a = LazyOperator(t2) * K.L(T), Ta_aa = LazyOperator(t1) * K.R(T);
    const LazyOperator Daa_a = LazyOperator(d2) * K.L(D), Da_aa = LazyOperator(d1) * K.R(D);
    return VerificationReport::combine(
        "partic", {K.eq("partic1", Da_aa * K.L(T), K.L(T) * Da_aa), K.eq("partic2", Daa_a * K.R(T), K.R(T) * Daa_a),
                   K.eq("partic3", Ta_aa * K.L(D), K.L(D) * Ta_aa), K.eq("partic4", Taa_a * K.R(D), K.R(D) * Taa_a)});
  });
}

namespace detail {

inline void require_strong(const TwistCandidate& tc, const std::string& who) {
  if (!verify_pseudotwistor(tc).passed || !verify_strong(tc).passed)
    throw TwistError(who + " needs a strong pseudotwistor");
}

}  // namespace detail

/// U = T∘D with companions T_{A,A⊗A}∘D̃₁∘(T⁻¹⊗id) and T_{A⊗A,A}∘D̃₂∘(id⊗T⁻¹).
inline TwistCandidate compose_pseudotwistors(const TwistCandidate& tcT, const TwistCandidate& tcD) {
  if (!tcT.A->same_structure(*tcD.A)) throw TwistError("composition needs both candidates on the same algebra");
  detail::require_strong(tcT, "composition");
  detail::require_strong(tcD, "composition");
  const auto partic = check_partic(tcT, tcD);
  const bool p12 = partic.parts[0].passed && partic.parts[1].passed;
  const bool p34 = partic.parts[2].passed && partic.parts[3].passed;
  if (!p12)
    throw HypothesisError(VerificationReport::combine("partic1-2", {partic.parts[0], partic.parts[1]}));

  const auto& [t1, t2] = *tcT.companions;
  const auto& [d1, d2] = *tcD.companions;
  const detail::Kit K(tcT.A, tcT.T);
  const LazyOperator T(tcT.T), D(tcD.T), Ti(*invert_operator(tcT.T));
  const LazyOperator Taa_a = LazyOperator(t2) * K.L(T), Ta_aa = LazyOperator(t1) * K.R(T);
  TwistCandidate U{tcT.A, (T * D).materialize(),
                   std::make_pair((Ta_aa * LazyOperator(d1) * K.R(Ti)).materialize(),
                                  (Taa_a * LazyOperator(d2) * K.L(Ti)).materialize()),
                   tcT.unital && tcD.unital};
  if (auto r = verify_pseudotwistor(U); !r.passed)
    throw TheoremViolation("composite is not a pseudotwistor: " + r.witness->location);
  if (p34)
    if (auto r = verify_strong(U); !r.passed)
      throw TheoremViolation("composite is not strong: " + r.witness->location);
  return U;
}

/// V = T⁻¹ with companions T̃₂⁻¹, T̃₁⁻¹.
inline TwistCandidate invert_pseudotwistor(const TwistCandidate& tc) {
  detail::require_strong(tc, "inversion");
  const auto& [t1, t2] = *tc.companions;
  auto i1 = invert_operator(t1), i2 = invert_operator(t2);
  if (!i1 || !i2) throw TwistError("a companion is not invertible");
  TwistCandidate V{tc.A, *invert_operator(tc.T), std::make_pair(std::move(*i2), std::move(*i1)), tc.unital};
  if (auto r = verify_pseudotwistor(V); !r.passed)
    throw TheoremViolation("inverse is not a pseudotwistor: " + r.witness->location);
  if (auto r = verify_strong(V); !r.passed) throw TheoremViolation("inverse is not strong: " + r.witness->location);
  return V;
}

inline TwistCandidate identity_twist(const AlgebraPtr& A) {
  return {A, identity_op(*A, 2), std::make_pair(identity_op(*A, 3), identity_op(*A, 3)), true};
}

// ---------------------------------------------------------------------------
// Module algebras and laycle-induced pseudotwistors.

struct ModuleAlgebra {
  AlgebraPtr A;
  HModule M;
};

inline VerificationReport verify_module_algebra(const ModuleAlgebra& MA) {
  return timed([&] {
    const Algebra& A = *MA.A;
    const HModule& M = MA.M;
    if (M.dim != A.dim()) throw DimensionError("module and algebra dimensions differ");
    auto mod = verify_module(M);
    if (!mod.passed) return VerificationReport::combine("module-algebra", {std::move(mod)});
    const FiniteDimHopf& H = M.H;
    const std::size_t n = H.dim();
    for (std::size_t h = 0; h < n; ++h) {
      const SparseVec l = M.act(h, A.unit()), r = H.counit(h) * A.unit();
      if (l != r) return VerificationReport::fail("module-algebra", {H.label(h) + "·1", {h}, A.render(l), A.render(r)});
    }
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t b = 0; b < A.dim(); ++b) {
          const SparseVec l = M.act(H.basis_vector(h), A.product(a, b));
          SparseAccumulator acc(A.field(), A.dim());
          for (const auto& [f, c] : H.comul(h).entries())
            acc.add(A.multiply(M.act(f / n, A.basis_vector(a)), M.act(f % n, A.basis_vector(b))), c);
          const SparseVec r = std::move(acc).finish();
          if (l != r)
            return VerificationReport::fail(
                "module-algebra", {H.label(h) + "·(" + A.label(a) + A.label(b) + ")", {h, a, b}, A.render(l), A.render(r)});
        }
    return VerificationReport::pass("module-algebra");
  });
}

inline ModuleAlgebra make_module_algebra(AlgebraPtr A, HModule M) {
  ModuleAlgebra MA{std::move(A), std::move(M)};
  if (MA.M.labels.empty()) MA.M.labels = MA.A->labels();
  auto r = verify_module_algebra(MA);
  if (!r.passed) throw HypothesisError(std::move(r));
  return MA;
}

/// H acting on itself by h·a = h₁aS(h₂).
inline ModuleAlgebra adjoint_module_algebra(const FiniteDimHopf& H) {
  const std::size_t n = H.dim();
  HModule M{H, n, {}, H.algebra()->labels()};
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t a = 0; a < n; ++a) {
      SparseAccumulator acc(H.field(), n);
      for (const auto& [f, c] : H.comul(h).entries())
        acc.add(H.multiply(H.product(f / n, a), H.antipode_col(f % n)), c);
      M.action.push_back(std::move(acc).finish());
    }
  return make_module_algebra(H.algebra(), std::move(M));
}

/// A module algebra given by one operator per basis element of H.
inline ModuleAlgebra module_algebra_from_operators(const FiniteDimHopf& H, AlgebraPtr A,
                                                   const std::vector<LinearOperator>& ops) {
  if (ops.size() != H.dim()) throw DimensionError("need one operator per basis element of H");
  HModule M{H, A->dim(), {}, A->labels()};
  for (const auto& op : ops) {
    if (op.domain_dim() != A->dim() || op.codomain_dim() != A->dim()) throw DimensionError("action operator shape");
    for (std::size_t v = 0; v < A->dim(); ++v) M.action.push_back(op.column(v));
  }
  return make_module_algebra(std::move(A), std::move(M));
}

/// k[C₂] = span{1, g} acting on k[x]/(x²) with x odd, g acting by the parity sign.
inline ModuleAlgebra parity_module_algebra(const FiniteDimHopf& H) {
  if (H.dim() != 2) throw DimensionError("the parity action needs k[C2]");
  const FieldSpec F = H.field();
  const AlgebraPtr A = dual_numbers(F, true);
  const auto par = LinearOperator::from_function(
      F, {2}, {2}, [&](std::size_t v) { return SparseVec::basis(F, 2, v, Scalar(F, v ? -1 : 1)); });
  return module_algebra_from_operators(H, A, {identity_op(*A), par});
}

/// X¹·m⊗X²·m'⊗… for X in H^{⊗k}.
inline LinearOperator act_legs(const TensorElement& X, const HModule& M) {
  const std::size_t k = X.legs(), n = M.H.dim(), d = M.dim;
  const LinearOperator::Shape shape(k, d);
  return LinearOperator::from_function(M.field(), shape, shape, [&](std::size_t j) {
    std::vector<std::size_t> v(k);
    for (std::size_t t = k, r = j; t-- > 0; r /= d) v[t] = r % d;
    SparseAccumulator acc(M.field(), LinearOperator::size_of(shape));
    std::vector<std::size_t> h(k);
    for (const auto& [f, c] : X.coeffs().entries()) {
      for (std::size_t t = k, g = f; t-- > 0; g /= n) h[t] = g % n;
      SparseVec out = SparseVec::basis(M.field(), 1, 0);
      for (std::size_t t = 0; t < k; ++t) out = kron(out, M.act(h[t], M.basis(v[t])));
      acc.add(out, c);
    }
    return std::move(acc).finish();
  });
}

/// T = F acting on A⊗A, with T̃₁ = T^b and T̃₂ = T^f of the laycle F.
inline TwistCandidate laycle_induced_pseudotwistor(const FiniteDimHopf& H, const TensorElement& F,
                                                   const ModuleAlgebra& MA) {
  if (!is_lazy_twist(H, F).passed) throw TwistError("F is not a lazy twist");
  const auto Fi = invert_tensor_element(F);
  const TensorElement dF = apply_coproduct_leg(H, F, 1);
  const TensorElement Fi23 = leg(*Fi, 2, 3, 3);
  return {MA.A, act_legs(F, MA.M), std::make_pair(act_legs(Fi23 * dF, MA.M), act_legs(dF * Fi23, MA.M)), true};
}

// ---------------------------------------------------------------------------
// The coboundary isomorphism.

/// A natural automorphism evaluated on A and on A⊗A.
struct NaturalIso {
  LinearOperator on_a, on_aa;
};

/// The action of a central invertible element θ.
inline NaturalIso central_action(const FiniteDimHopf& H, const ModuleAlgebra& MA, const SparseVec& theta) {
  if (!is_central(TensorElement(H.algebra(), 1, theta)).passed) throw TwistError("θ must be central");
  if (!invert_tensor_element(TensorElement(H.algebra(), 1, theta))) throw TwistError("θ must be invertible");
  return {MA.M.action_operator(theta), act_legs(H.coproduct(theta), MA.M)};
}

/// R_A∘μ∘T∘D¹(R) = μ∘T∘(R_A⊗R_A) with D¹(R) = R_{A⊗A}⁻¹∘(R_A⊗R_A).
inline VerificationReport coboundary_iso_check(const TwistCandidate& tc, const NaturalIso& R) {
  detail::require_strong(tc, "the coboundary isomorphism");
  const auto Ri = invert_operator(R.on_aa);
  if (!invert_operator(R.on_a) || !Ri) throw TwistError("R_A is not invertible");
  return timed([&] {
    const detail::Kit K(tc.A, tc.T);
    const LazyOperator RA(R.on_a), RA2 = tensor(RA, RA), D1 = LazyOperator(*Ri) * RA2;
    return K.eq("coboundary-iso", RA * K.mu * K.T * D1, K.mu * K.T * RA2);
  });
}

/// D¹(R)_{A,A} for R the action of θ: the candidate induced by the laycle
/// Δ(θ⁻¹)(θ⊗θ).
inline TwistCandidate d1_pseudotwistor(const FiniteDimHopf& H, const ModuleAlgebra& MA, const SparseVec& theta) {
  const auto ti = invert_tensor_element(TensorElement(H.algebra(), 1, theta));
  if (!ti) throw TwistError("θ must be invertible");
  return laycle_induced_pseudotwistor(H, coboundary_twist(H, ti->coeffs()), MA);
}

// ---------------------------------------------------------------------------
// Twisting maps.

inline VerificationReport twisting_map_suite(const AlgebraPtr& A, const LinearOperator& R) {
  return timed([&] {
    const detail::Kit K(A, R);
    const LazyOperator& r = K.T;
    return VerificationReport::combine(
        "twisting-map", {K.eq("R(u⊗a) = a⊗u", r * K.R(K.u), K.L(K.u)), K.eq("R(a⊗u) = u⊗a", r * K.L(K.u), K.R(K.u)),
                         K.eq("R(μ⊗id)", r * K.R(K.mu), K.L(K.mu) * K.R(r) * K.L(r)),
                         K.eq("R(id⊗μ)", r * K.L(K.mu), K.R(K.mu) * K.L(r) * K.R(r))});
  });
}

namespace detail {

inline VerificationReport invertible_report(const std::string& name, const LinearOperator& op) {
  if (invert_operator(op)) return VerificationReport::pass(name);
  return VerificationReport::fail(name, {"operator", {}, "singular", "invertible"});
}

/// (a⊗id)(id⊗b)(c⊗id) = (id⊗c')(b'⊗id)(id⊗a'), the shape shared by br1–br6.
inline VerificationReport braid_shape(const Kit& K, const std::string& name, const LazyOperator& a,
                                      const LazyOperator& b, const LazyOperator& c, const LazyOperator& a2,
                                      const LazyOperator& b2, const LazyOperator& c2) {
  return K.eq(name, K.R(a) * K.L(b) * K.R(c), K.L(a2) * K.R(b2) * K.L(c2));
}

}  // namespace detail

/// Twisting-map axioms for R and P, invertibility of R, and br1–br4.
inline VerificationReport twm_hypotheses(const AlgebraPtr& A, const LinearOperator& R, const LinearOperator& P) {
  return timed([&] {
    const detail::Kit K(A, R);
    const LazyOperator r(R), p(P);
    auto tr = twisting_map_suite(A, R), tp = twisting_map_suite(A, P);
    tr.check_name = "R twisting";
    tp.check_name = "P twisting";
    return VerificationReport::combine(
        "twm", {std::move(tr), std::move(tp), detail::invertible_report("R invertible", R),
                detail::braid_shape(K, "br1", p, p, p, p, p, p), detail::braid_shape(K, "br2", r, r, r, r, r, r),
                detail::braid_shape(K, "br3", p, p, r, r, p, p), detail::braid_shape(K, "br4", r, p, p, p, p, r)});
  });
}

/// P invertible, br5 and br6.
inline VerificationReport twm_strong_hypotheses(const AlgebraPtr& A, const LinearOperator& R, const LinearOperator& P) {
  return timed([&] {
    const detail::Kit K(A, R);
    const LazyOperator r(R), p(P);
    return VerificationReport::combine("twm-strong", {detail::invertible_report("P invertible", P),
                                                      detail::braid_shape(K, "br5", p, r, r, r, r, p),
                                                      detail::braid_shape(K, "br6", r, r, p, p, r, r)});
  });
}

/// T = R⁻¹∘P with T̃₁ = (R⁻¹⊗id)(id⊗T)(R⊗id) and T̃₂ = (id⊗R⁻¹)(T⊗id)(id⊗R).
/// The conclusions (pseudotwistor, pure, and strong under br5–br6) are
/// re-verified.
inline TwistCandidate twm_pseudotwistor(const AlgebraPtr& A, const LinearOperator& R, const LinearOperator& P) {
  auto hyp = twm_hypotheses(A, R, P);
  if (!hyp.passed) throw HypothesisError(std::move(hyp));
  const detail::Kit K(A, R);
  const LazyOperator r(R), ri(*invert_operator(R)), t = ri * LazyOperator(P);
  TwistCandidate tc{A, t.materialize(),
                    std::make_pair((K.R(ri) * K.L(t) * K.R(r)).materialize(), (K.L(ri) * K.R(t) * K.L(r)).materialize()),
                    true};
  if (auto v = verify_pseudotwistor(tc); !v.passed)
    throw TheoremViolation("R⁻¹P is not a pseudotwistor: " + v.witness->location);
  if (auto v = verify_pure(tc); !v.passed) throw TheoremViolation("R⁻¹P is not pure: " + v.witness->location);
  if (twm_strong_hypotheses(A, R, P).passed)
    if (auto v = verify_strong(tc); !v.passed) throw TheoremViolation("R⁻¹P is not strong: " + v.witness->location);
  return tc;
}

/// Bijective twisting maps with (α⊗id)(id⊗β)(γ⊗id) = (id⊗γ)(β⊗id)(id⊗α) for all members.
inline VerificationReport verify_braid_system(const AlgebraPtr& A, const std::vector<LinearOperator>& family) {
  return timed([&] {
    if (family.empty()) throw TwistError("empty braid system");
    const detail::Kit K(A, family.front());
    std::vector<VerificationReport> parts;
    std::vector<LazyOperator> lz(family.begin(), family.end());
    for (std::size_t i = 0; i < family.size(); ++i) {
      auto t = twisting_map_suite(A, family[i]);
      t.check_name = "member " + std::to_string(i) + " twisting";
      parts.push_back(std::move(t));
      parts.push_back(detail::invertible_report("member " + std::to_string(i) + " bijective", family[i]));
    }
    for (std::size_t a = 0; a < lz.size(); ++a)
      for (std::size_t b = 0; b < lz.size(); ++b)
        for (std::size_t c = 0; c < lz.size(); ++c)
          parts.push_back(detail::braid_shape(
              K, "braid (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")", lz[a], lz[b],
              lz[c], lz[c], lz[b], lz[a]));
    return VerificationReport::combine("braid-system", std::move(parts));
  });
}

/// T_{α,β} = α⁻¹∘β for members α, β of a braid system.
inline TwistCandidate durdevich_pseudotwistor(const AlgebraPtr& A, const std::vector<LinearOperator>& family,
                                              std::size_t alpha, std::size_t beta) {
  auto sys = verify_braid_system(A, family);
  if (!sys.passed) throw HypothesisError(std::move(sys));
  return twm_pseudotwistor(A, family.at(alpha), family.at(beta));
}

// ---------------------------------------------------------------------------
// Nonunital examples with identity companions.

enum class ExampleKind { i, ii, iii };
enum class Side { left, right };

struct ExampleParams {
  std::optional<SparseVec> r;                // kind i: R ∈ A⊗A
  std::optional<LinearOperator> f;           // kind ii: A → A
  std::optional<LinearOperator> delta;       // kind iii: A → A⊗A
  Side side = Side::left;
};

namespace detail {

inline TwistCandidate nonunital(const AlgebraPtr& A, LinearOperator T) {
  return {A, std::move(T), std::make_pair(identity_op(*A, 3), identity_op(*A, 3)), false};
}

/// x(1⊗b) or (a⊗1)x in A⊗A, unsigned (one factor is always the unit).
inline SparseVec times_right(const Algebra& A, const SparseVec& x, std::size_t b) {
  const std::size_t n = A.dim();
  SparseAccumulator acc(A.field(), n * n);
  for (const auto& [f, c] : x.entries())
    for (const auto& [k, d] : A.product(f % n, b).entries()) acc.add((f / n) * n + k, c * d);
  return std::move(acc).finish();
}

inline SparseVec times_left(const Algebra& A, std::size_t a, const SparseVec& x) {
  const std::size_t n = A.dim();
  SparseAccumulator acc(A.field(), n * n);
  for (const auto& [f, c] : x.entries())
    for (const auto& [k, d] : A.product(a, f / n).entries()) acc.add(k * n + f % n, c * d);
  return std::move(acc).finish();
}

}  // namespace detail

/// (i): T(a⊗b) = aR¹⊗R²b.
inline TwistCandidate example_twist_r(const AlgebraPtr& A, const SparseVec& r) {
  const std::size_t n = A->dim();
  if (r.dim() != n * n) throw DimensionError("R must lie in A⊗A");
  return detail::nonunital(A, LinearOperator::from_function(A->field(), {n, n}, {n, n}, [&](std::size_t j) {
                             return detail::times_right(*A, detail::times_left(*A, j / n, r), j % n);
                           }));
}

/// (ii): f(ab) = af(b) gives T = f⊗id; f(ab) = f(a)b gives T = id⊗f.
inline TwistCandidate example_twist_f(const AlgebraPtr& A, const LinearOperator& f, Side side) {
  const detail::Kit K(A, identity_op(*A, 2));
  const LazyOperator F(f);
  auto law = side == Side::left ? K.eq("f(ab) = af(b)", F * K.mu, K.mu * K.L(F))
                                : K.eq("f(ab) = f(a)b", F * K.mu, K.mu * K.R(F));
  if (!law.passed) throw HypothesisError(std::move(law));
  return detail::nonunital(A, (side == Side::left ? K.R(F) : K.L(F)).materialize());
}

/// (iii): δ(ab) = (a⊗1)δ(b) gives T(a⊗b) = δ(a)(1⊗b); δ(ab) = δ(a)(1⊗b) gives T(a⊗b) = (a⊗1)δ(b).
inline TwistCandidate example_twist_delta(const AlgebraPtr& A, const LinearOperator& delta, Side side) {
  const std::size_t n = A->dim();
  if (delta.domain_dim() != n || delta.codomain_dim() != n * n) throw DimensionError("δ must map A to A⊗A");
  const detail::Kit K(A, identity_op(*A, 2));
  const LazyOperator D(delta);
  const LazyOperator rhs(A->field(), {n, n}, {n, n}, [&, side](std::size_t j) {
    return side == Side::left ? detail::times_left(*A, j / n, delta.column(j % n))
                              : detail::times_right(*A, delta.column(j / n), j % n);
  });
  auto law = K.eq(side == Side::left ? "δ(ab) = (a⊗1)δ(b)" : "δ(ab) = δ(a)(1⊗b)", D * K.mu, rhs);
  if (!law.passed) throw HypothesisError(std::move(law));
  return detail::nonunital(A, LinearOperator::from_function(A->field(), {n, n}, {n, n}, [&](std::size_t j) {
                             return side == Side::left ? detail::times_right(*A, delta.column(j / n), j % n)
                                                       : detail::times_left(*A, j / n, delta.column(j % n));
                           }));
}

inline TwistCandidate example_twists(ExampleKind kind, const AlgebraPtr& A, const ExampleParams& p) {
  switch (kind) {
    case ExampleKind::i:
      if (!p.r) throw TwistError("kind i needs R");
      return example_twist_r(A, *p.r);
    case ExampleKind::ii:
      if (!p.f) throw TwistError("kind ii needs f");
      return example_twist_f(A, *p.f, p.side);
    case ExampleKind::iii:
      if (!p.delta) throw TwistError("kind iii needs δ");
      return example_twist_delta(A, *p.delta, p.side);
  }
  throw TwistError("unknown example kind");
}

}  // namespace hopfkit
