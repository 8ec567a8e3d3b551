#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hopfkit/hopf.hpp"
#include "hopfkit/operator.hpp"

namespace hopfkit {

class YDValidationError : public std::logic_error {
 public:
  explicit YDValidationError(VerificationReport r)
      : std::logic_error(r.check_name + " failed" + (r.witness ? ": " + r.witness->location : std::string())),
        report_(std::move(r)) {}
  const VerificationReport& report() const noexcept { return report_; }

 private:
  VerificationReport report_;
};

/// A left H-module given by the structure constants b_h·e_v.
struct HModule {
  FiniteDimHopf H;
  std::size_t dim = 0;
  std::vector<SparseVec> action;  // index h*dim + v
  std::vector<std::string> labels;

  const FieldSpec& field() const noexcept { return H.field(); }
  SparseVec basis(std::size_t v) const { return SparseVec::basis(field(), dim, v); }

  SparseVec act(const SparseVec& h, const SparseVec& v) const {
    SparseAccumulator acc(field(), dim);
    for (const auto& [i, a] : h.entries())
      for (const auto& [j, b] : v.entries()) acc.add(action[i * dim + j], a * b);
    return std::move(acc).finish();
  }
  SparseVec act(std::size_t h, const SparseVec& v) const { return act(H.basis_vector(h), v); }

  /// v ↦ h·v as an operator.
  LinearOperator action_operator(const SparseVec& h) const {
    return LinearOperator::from_function(field(), {dim}, {dim}, [&](std::size_t v) { return act(h, basis(v)); });
  }
};

/// A right H-comodule; coaction[v] lives in M⊗H (module leg most significant).
struct HComodule {
  FiniteDimHopf H;
  std::size_t dim = 0;
  std::vector<SparseVec> coaction;

  SparseVec coact(const SparseVec& v) const {
    SparseAccumulator acc(H.field(), dim * H.dim());
    for (const auto& [i, c] : v.entries()) acc.add(coaction[i], c);
    return std::move(acc).finish();
  }
};

struct YDModule {
  HModule module;
  HComodule comodule;

  std::size_t dim() const noexcept { return module.dim; }
  const FiniteDimHopf& hopf() const noexcept { return module.H; }
  const std::vector<std::string>& labels() const noexcept { return module.labels; }
};

namespace detail {

inline std::string label_or_index(const std::vector<std::string>& labels, std::size_t i) {
  return i < labels.size() ? labels[i] : "e" + std::to_string(i);
}

/// Renders an element of M⊗H.
inline std::string render_mh(const std::vector<std::string>& m_labels, const FiniteDimHopf& H, const SparseVec& v) {
  const std::size_t n = H.dim();
  return v.to_string([&](std::size_t f) { return label_or_index(m_labels, f / n) + "⊗" + H.label(f % n); });
}

/// Δ²(b_h) entries as (i, j, k, coefficient).
struct Triple {
  std::size_t i, j, k;
  Scalar c;
};

inline std::vector<Triple> coproduct2(const FiniteDimHopf& H, std::size_t h) {
  const std::size_t n = H.dim();
  const TensorElement d = apply_coproduct_leg(H, H.coproduct(H.basis_vector(h)), 1);
  std::vector<Triple> out;
  for (const auto& [f, c] : d.coeffs().entries()) out.push_back({f / (n * n), (f / n) % n, f % n, c});
  return out;
}

inline void require_same_hopf(const FiniteDimHopf& a, const FiniteDimHopf& b) {
  if (!TensorElement::same_algebra(*a.algebra(), *b.algebra()))
    throw DimensionError("modules live over different Hopf algebras");
}

}  // namespace detail

inline VerificationReport verify_module(const HModule& M) {
  const auto& H = M.H;
  const std::size_t n = H.dim();
  if (M.action.size() != n * M.dim) throw DimensionError("action table must have dim(H)·dim(M) entries");
  for (std::size_t v = 0; v < M.dim; ++v) {
    const SparseVec e = M.basis(v);
    if (M.act(H.unit(), e) != e)
      return VerificationReport::fail("module", {"1·" + M.labels[v], {v}, M.act(H.unit(), e).to_string(), e.to_string()});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const SparseVec l = M.act(H.product(i, j), e), r = M.act(i, M.act(j, e));
        if (l != r)
          return VerificationReport::fail(
              "module", {"(" + H.label(i) + H.label(j) + ")·" + M.labels[v], {i, j, v}, l.to_string(), r.to_string()});
      }
  }
  return VerificationReport::pass("module");
}

inline VerificationReport verify_comodule(const HComodule& C, const std::vector<std::string>& labels) {
  const auto& H = C.H;
  const std::size_t n = H.dim(), m = C.dim;
  if (C.coaction.size() != m) throw DimensionError("coaction table must have dim(M) entries");
  for (std::size_t v = 0; v < m; ++v) {
    const SparseVec& rho = C.coaction[v];
    if (rho.dim() != m * n) throw DimensionError("coaction entry has wrong dimension");
    // (ρ⊗id)ρ and (id⊗Δ)ρ in M⊗H⊗H.
    SparseAccumulator l(H.field(), m * n * n), r(H.field(), m * n * n);
    SparseAccumulator counit(H.field(), m);
    for (const auto& [f, c] : rho.entries()) {
      const std::size_t a = f / n, x = f % n;
      for (const auto& [g, d] : C.coaction[a].entries()) l.add((g / n * n + g % n) * n + x, c * d);
      for (const auto& [g, d] : H.comul(x).entries()) r.add(a * n * n + g, c * d);
      counit.add(a, c * H.counit(x));
    }
    const SparseVec lv = std::move(l).finish(), rv = std::move(r).finish();
    if (lv != rv)
      return VerificationReport::fail("comodule", {"coassociativity at " + labels[v], {v}, lv.to_string(), rv.to_string()});
    const SparseVec cv = std::move(counit).finish();
    if (cv != SparseVec::basis(H.field(), m, v))
      return VerificationReport::fail("comodule", {"counit at " + labels[v], {v}, cv.to_string(), labels[v]});
  }
  return VerificationReport::pass("comodule");
}

/// (h·m)₍₀₎⊗(h·m)₍₁₎ = h₂·m₍₀₎ ⊗ h₃m₍₁₎S⁻¹(h₁) on all basis pairs.
inline VerificationReport verify_yd_compatibility(const YDModule& M) {
  const auto& H = M.hopf();
  const std::size_t n = H.dim(), m = M.dim();
  for (std::size_t h = 0; h < n; ++h) {
    const auto d2 = detail::coproduct2(H, h);
    for (std::size_t v = 0; v < m; ++v) {
      const SparseVec lhs = M.comodule.coact(M.module.act(h, M.module.basis(v)));
      SparseAccumulator acc(H.field(), m * n);
      for (const auto& t : d2) {
        const SparseVec sinv = H.antipode_col(t.i, true);
        for (const auto& [f, c] : M.comodule.coaction[v].entries()) {
          const SparseVec left = M.module.act(t.j, M.module.basis(f / n));
          const SparseVec right = H.multiply(H.product(t.k, f % n), sinv);
          acc.add(kron(left, right), t.c * c);
        }
      }
      const SparseVec rhs = std::move(acc).finish();
      if (lhs != rhs)
        return VerificationReport::fail(
            "yd-compatibility", {"h=" + H.label(h) + ", m=" + M.labels()[v], {h, v}, detail::render_mh(M.labels(), H, lhs),
                                 detail::render_mh(M.labels(), H, rhs)});
    }
  }
  return VerificationReport::pass("yd-compatibility");
}

inline VerificationReport verify_yd(const YDModule& M) {
  if (M.module.dim != M.comodule.dim) throw DimensionError("module and comodule dimensions differ");
  detail::require_same_hopf(M.module.H, M.comodule.H);
  if (M.module.labels.size() != M.module.dim) throw DimensionError("module needs one label per basis vector");
  return timed([&] {
    return VerificationReport::combine(
        "yd", {verify_module(M.module), verify_comodule(M.comodule, M.labels()), verify_yd_compatibility(M)});
  });
}

inline YDModule validated(YDModule M) {
  auto r = verify_yd(M);
  if (!r.passed) throw YDValidationError(std::move(r));
  return M;
}

// ---------------------------------------------------------------------------
// The standard objects.

/// H with the regular action and ρ₁(h) = h₂⊗h₃S⁻¹(h₁).
inline YDModule regular_yd_h1(const FiniteDimHopf& H) {
  if (!H.antipode_bijective()) throw std::invalid_argument("H1 needs a bijective antipode");
  const std::size_t n = H.dim();
  YDModule M{{H, n, {}, {}}, {H, n, {}}};
  for (std::size_t h = 0; h < n; ++h) {
    M.module.labels.push_back(H.label(h));
    for (std::size_t v = 0; v < n; ++v) M.module.action.push_back(H.product(h, v));
  }
  for (std::size_t v = 0; v < n; ++v) {
    SparseAccumulator acc(H.field(), n * n);
    for (const auto& t : detail::coproduct2(H, v))
      acc.add(kron(H.basis_vector(t.j), H.multiply(H.basis_vector(t.k), H.antipode_col(t.i, true))), t.c);
    M.comodule.coaction.push_back(std::move(acc).finish());
  }
  return validated(std::move(M));
}

/// H with h·g = h₂gS⁻¹(h₁) and ρ₂ = Δ.
inline YDModule regular_yd_h2(const FiniteDimHopf& H) {
  if (!H.antipode_bijective()) throw std::invalid_argument("H2 needs a bijective antipode");
  const std::size_t n = H.dim();
  YDModule M{{H, n, {}, {}}, {H, n, {}}};
  for (std::size_t h = 0; h < n; ++h) {
    M.module.labels.push_back(H.label(h));
    for (std::size_t g = 0; g < n; ++g) {
      SparseAccumulator acc(H.field(), n);
      for (const auto& [f, c] : H.comul(h).entries())
        acc.add(H.multiply(H.product(f % n, g), H.antipode_col(f / n, true)), c);
      M.module.action.push_back(std::move(acc).finish());
    }
  }
  for (std::size_t v = 0; v < n; ++v) M.comodule.coaction.push_back(H.comul(v));
  return validated(std::move(M));
}

/// The one-dimensional unit object: h·1 = ε(h), ρ(1) = 1⊗1.
inline YDModule trivial_yd(const FiniteDimHopf& H) {
  YDModule M{{H, 1, {}, {"k"}}, {H, 1, {H.unit()}}};
  for (std::size_t h = 0; h < H.dim(); ++h) M.module.action.push_back(SparseVec::basis(H.field(), 1, 0, H.counit(h)));
  return validated(std::move(M));
}

/// h·(m⊗n) = h₁·m⊗h₂·n.
inline HModule module_tensor(const HModule& M, const HModule& N) {
  detail::require_same_hopf(M.H, N.H);
  const auto& H = M.H;
  HModule out{H, M.dim * N.dim, {}, tensor_labels(M.labels, N.labels)};
  out.action.reserve(H.dim() * out.dim);
  const std::size_t n = H.dim();
  for (std::size_t h = 0; h < n; ++h) {
    const SparseVec& d = H.comul(h);
    for (std::size_t a = 0; a < M.dim; ++a)
      for (std::size_t b = 0; b < N.dim; ++b) {
        SparseAccumulator acc(H.field(), out.dim);
        for (const auto& [f, c] : d.entries())
          acc.add(kron(M.act(f / n, M.basis(a)), N.act(f % n, N.basis(b))), c);
        out.action.push_back(std::move(acc).finish());
      }
  }
  return out;
}

/// Module structure as above; (m⊗n)₍₀₎⊗(m⊗n)₍₁₎ = m₍₀₎⊗n₍₀₎⊗n₍₁₎m₍₁₎.
inline YDModule yd_tensor(const YDModule& M, const YDModule& N) {
  const auto& H = M.hopf();
  const std::size_t n = H.dim(), dn = N.dim();
  YDModule out{module_tensor(M.module, N.module), {H, M.dim() * dn, {}}};
  for (std::size_t a = 0; a < M.dim(); ++a)
    for (std::size_t b = 0; b < dn; ++b) {
      SparseAccumulator acc(H.field(), out.dim() * n);
      for (const auto& [f, c] : M.comodule.coaction[a].entries())
        for (const auto& [g, d] : N.comodule.coaction[b].entries()) {
          const SparseVec h = H.product(g % n, f % n);
          for (const auto& [k, e] : h.entries()) acc.add(((f / n) * dn + g / n) * n + k, c * d * e);
        }
      out.comodule.coaction.push_back(std::move(acc).finish());
    }
  return validated(std::move(out));
}

/// F¹·m⊗F²·n for F ∈ H⊗H.
inline LinearOperator act_two_legs(const TensorElement& F, const HModule& M, const HModule& N) {
  const std::size_t n = M.H.dim();
  return LinearOperator::from_function(M.field(), {M.dim, N.dim}, {M.dim, N.dim}, [&](std::size_t j) {
    SparseAccumulator acc(M.field(), M.dim * N.dim);
    for (const auto& [f, c] : F.coeffs().entries())
      acc.add(kron(M.act(f / n, M.basis(j / N.dim)), N.act(f % n, N.basis(j % N.dim))), c);
    return std::move(acc).finish();
  });
}

// ---------------------------------------------------------------------------
// Braidings.

namespace detail {

inline LinearOperator yd_braiding_raw(const YDModule& M, const YDModule& N) {
  const std::size_t n = M.hopf().dim(), dm = M.dim(), dn = N.dim();
  return LinearOperator::from_function(M.module.field(), {dm, dn}, {dn, dm}, [&](std::size_t j) {
    SparseAccumulator acc(M.module.field(), dm * dn);
    const SparseVec m = M.module.basis(j / dn);
    for (const auto& [f, c] : N.comodule.coaction[j % dn].entries())
      acc.add(kron(N.module.basis(f / n), M.module.act(f % n, m)), c);
    return std::move(acc).finish();
  });
}

inline LinearOperator yd_braiding_inv_raw(const YDModule& M, const YDModule& N) {
  const auto& H = M.hopf();
  const std::size_t n = H.dim(), dm = M.dim(), dn = N.dim();
  return LinearOperator::from_function(M.module.field(), {dn, dm}, {dm, dn}, [&](std::size_t j) {
    SparseAccumulator acc(M.module.field(), dm * dn);
    const SparseVec m = M.module.basis(j % dm);
    for (const auto& [f, c] : N.comodule.coaction[j / dm].entries())
      acc.add(kron(M.module.act(H.antipode_col(f % n), m), N.module.basis(f / n)), c);
    return std::move(acc).finish();
  });
}

inline void check_inverse_pair(const LinearOperator& c, const LinearOperator& ci, const std::string& what) {
  if (!(ci * c).is_identity() || !(c * ci).is_identity())
    throw YDValidationError(VerificationReport::fail(what, {"c∘c⁻¹", {}, "not the identity", "identity"}));
}

}  // namespace detail

/// c_{M,N}(m⊗n) = n₍₀₎⊗n₍₁₎·m.
inline LinearOperator yd_braiding(const YDModule& M, const YDModule& N) {
  detail::require_same_hopf(M.hopf(), N.hopf());
  LinearOperator c = detail::yd_braiding_raw(M, N);
  detail::check_inverse_pair(c, detail::yd_braiding_inv_raw(M, N), "yd-braiding");
  return c;
}

/// c_{M,N}⁻¹(n⊗m) = S(n₍₁₎)·m⊗n₍₀₎.
inline LinearOperator yd_braiding_inv(const YDModule& M, const YDModule& N) {
  detail::require_same_hopf(M.hopf(), N.hopf());
  LinearOperator ci = detail::yd_braiding_inv_raw(M, N);
  detail::check_inverse_pair(detail::yd_braiding_raw(M, N), ci, "yd-braiding");
  return ci;
}

/// c_{N,M}∘c_{M,N}.
inline LinearOperator double_braiding(const YDModule& M, const YDModule& N) {
  return yd_braiding(N, M) * yd_braiding(M, N);
}

/// x⊗y ↦ y₍₁₎·x₍₀₎ ⊗ x₍₁₎·y₍₀₎, the closed form for commutative and
/// cocommutative H.
inline LinearOperator double_braiding_formula(const YDModule& X, const YDModule& Y) {
  const std::size_t n = X.hopf().dim(), dx = X.dim(), dy = Y.dim();
  return LinearOperator::from_function(X.module.field(), {dx, dy}, {dx, dy}, [&](std::size_t j) {
    SparseAccumulator acc(X.module.field(), dx * dy);
    for (const auto& [f, c] : X.comodule.coaction[j / dy].entries())
      for (const auto& [g, d] : Y.comodule.coaction[j % dy].entries())
        acc.add(kron(X.module.act(g % n, X.module.basis(f / n)), Y.module.act(f % n, Y.module.basis(g / n))), c * d);
    return std::move(acc).finish();
  });
}

/// c_{M,N}(m⊗n) = R²·n⊗R¹·m.
inline LinearOperator module_braiding_from_qt(const TensorElement& R, const HModule& M, const HModule& N) {
  detail::require_same_hopf(M.H, N.H);
  return LinearOperator::flip(M.field(), M.dim, N.dim) * act_two_legs(R, M, N);
}

// ---------------------------------------------------------------------------
// The pointwise harness. A family assigns an operator to each ordered pair of
// objects; it is evaluated on tensor objects built from a finite list of atoms.

inline std::size_t object_dim(const HModule& M) { return M.dim; }
inline std::size_t object_dim(const YDModule& M) { return M.dim(); }
inline const std::vector<std::string>& object_labels(const HModule& M) { return M.labels; }
inline const std::vector<std::string>& object_labels(const YDModule& M) { return M.labels(); }
inline FieldSpec object_field(const HModule& M) { return M.field(); }
inline FieldSpec object_field(const YDModule& M) { return M.module.field(); }
inline HModule tensor_object(const HModule& a, const HModule& b) { return module_tensor(a, b); }
inline YDModule tensor_object(const YDModule& a, const YDModule& b) { return yd_tensor(a, b); }

template <class Obj>
struct OperatorFamily {
  using Fn = std::function<LinearOperator(const Obj&, const Obj&)>;
  std::string name;
  Fn op;
  Fn inverse;  // of op(X,Y); computed by matrix inversion when empty
};

template <class Obj>
struct NamedObject {
  std::string name;
  Obj object;
};

enum class Axiom { c0, c1, twine2, twine3, str1, str2, str3, braid1, braid2, braideq, quasico, pseudosym, a1, a2, baba, b2, cab, t1t };

inline std::string to_string(Axiom a) {
  static const char* names[] = {"c0",      "c1",     "twine2",  "twine3",  "str1",      "str2",
                                "str3",    "braid1", "braid2",  "braideq", "quasico",   "pseudosym",
                                "a1",      "a2",     "baba",    "b2",      "cab",       "t1t"};
  return names[static_cast<int>(a)];
}

inline std::optional<Axiom> axiom_from_string(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(Axiom::t1t); ++k)
    if (to_string(static_cast<Axiom>(k)) == s) return static_cast<Axiom>(k);
  return std::nullopt;
}

inline std::vector<Axiom> laycle_axioms() { return {Axiom::c0, Axiom::c1}; }
inline std::vector<Axiom> twine_axioms() { return {Axiom::c0, Axiom::twine2, Axiom::twine3}; }
inline std::vector<Axiom> strong_twine_axioms() { return {Axiom::str1, Axiom::str2, Axiom::str3}; }
inline std::vector<Axiom> braiding_axioms() { return {Axiom::braid1, Axiom::braid2}; }
inline std::vector<Axiom> pure_braided_axioms() {
  return {Axiom::a1, Axiom::a2, Axiom::baba, Axiom::b2, Axiom::cab, Axiom::t1t};
}

/// Evaluates a family on named objects with memoised tensor objects and
/// operators, and states each axiom as an operator identity.
template <class Obj>
class AxiomHarness {
 public:
  using Node = NamedObject<Obj>;

  AxiomHarness(OperatorFamily<Obj> family, Node unit) : fam_(std::move(family)), unit_(std::move(unit)) {}

  const Node& unit() const noexcept { return unit_; }

  Node tensor(const Node& a, const Node& b) {
    const std::string key = "tensor(" + a.name + "," + b.name + ")";
    auto it = objects_.find(key);
    if (it == objects_.end()) it = objects_.emplace(key, Node{key, tensor_object(a.object, b.object)}).first;
    return it->second;
  }
  Node tensor(const Node& a, const Node& b, const Node& c) { return tensor(tensor(a, b), c); }

  const LinearOperator& T(const Node& a, const Node& b) {
    const auto key = std::make_pair(a.name, b.name);
    auto it = ops_.find(key);
    if (it == ops_.end()) it = ops_.emplace(key, fam_.op(a.object, b.object)).first;
    return it->second;
  }

  const LinearOperator& Tinv(const Node& a, const Node& b) {
    const auto key = std::make_pair(a.name, b.name);
    auto it = inv_.find(key);
    if (it == inv_.end()) {
      if (fam_.inverse) {
        it = inv_.emplace(key, fam_.inverse(a.object, b.object)).first;
      } else {
        auto inv = T(a, b).inverse();
        if (!inv) throw std::domain_error(fam_.name + " is not invertible on (" + a.name + "," + b.name + ")");
        it = inv_.emplace(key, std::move(*inv)).first;
      }
    }
    return it->second;
  }

  LinearOperator id(const Node& a) const { return LinearOperator::identity(object_field(a.object), {object_dim(a.object)}); }

  /// T^b_{X,Y,Z} = (id_X⊗T_{Y,Z}⁻¹)∘T_{X⊗Y,Z}; second form T_{X,Y⊗Z}∘(T_{X,Y}⁻¹⊗id_Z).
  LinearOperator Tb(const Node& x, const Node& y, const Node& z, bool second = false) {
    if (second) return T(x, tensor(y, z)) * hopfkit::tensor(Tinv(x, y), id(z));
    return hopfkit::tensor(id(x), Tinv(y, z)) * T(tensor(x, y), z);
  }
  /// T^f_{X,Y,Z} = T_{X⊗Y,Z}∘(id_X⊗T_{Y,Z}⁻¹); second form (T_{X,Y}⁻¹⊗id_Z)∘T_{X,Y⊗Z}.
  LinearOperator Tf(const Node& x, const Node& y, const Node& z, bool second = false) {
    if (second) return hopfkit::tensor(Tinv(x, y), id(z)) * T(x, tensor(y, z));
    return T(tensor(x, y), z) * hopfkit::tensor(id(x), Tinv(y, z));
  }

  std::vector<std::string> labels(std::initializer_list<const Node*> nodes) const {
    std::vector<std::string> out{""};
    bool first = true;
    for (const Node* n : nodes) {
      out = first ? object_labels(n->object) : tensor_labels(out, object_labels(n->object));
      first = false;
    }
    return out;
  }

  static int arity(Axiom a) {
    switch (a) {
      case Axiom::c0:
      case Axiom::str1: return 0;
      case Axiom::t1t: return 2;
      case Axiom::twine3:
      case Axiom::a1:
      case Axiom::a2:
      case Axiom::baba:
      case Axiom::b2:
      case Axiom::cab: return 4;
      default: return 3;
    }
  }

  /// One instance of an axiom on a tuple of objects.
  VerificationReport check(Axiom ax, const std::vector<Node>& t) {
    const std::string name = to_string(ax);
    auto cmp = [&](const LinearOperator& l, const LinearOperator& r, std::vector<std::string> dom,
                   std::vector<std::string> cod) { return compare_operators(name, l, r, dom, cod); };
    using hopfkit::tensor;
    switch (ax) {
      case Axiom::c0:
      case Axiom::str1: {
        const auto l = labels({&unit_});
        return cmp(T(unit_, unit_), id(unit_), l, l);
      }
      case Axiom::c1:
      case Axiom::twine2:
      case Axiom::str2: {
        const Node &x = t[0], &y = t[1], &z = t[2];
        const auto l = labels({&x, &y, &z});
        return cmp(tensor(T(x, y), id(z)) * T(this->tensor(x, y), z), tensor(id(x), T(y, z)) * T(x, this->tensor(y, z)),
                   l, l);
      }
      case Axiom::str3: {
        const Node &x = t[0], &y = t[1], &z = t[2];
        const auto l = labels({&x, &y, &z});
        const LinearOperator a = tensor(T(x, y), id(z)), b = tensor(id(x), T(y, z));
        return cmp(a * b, b * a, l, l);
      }
      case Axiom::twine3: {
        const Node &x = t[0], &y = t[1], &z = t[2], &w = t[3];
        const auto l = labels({&x, &y, &z, &w});
        const LinearOperator a = tensor(T(this->tensor(x, y), z), id(w));
        const LinearOperator b = tensor(id(x), Tinv(y, z), id(w));
        const LinearOperator c = tensor(id(x), T(y, this->tensor(z, w)));
        return cmp(a * b * c, c * b * a, l, l);
      }
      case Axiom::braid1: {
        const Node &x = t[0], &y = t[1], &z = t[2];
        return cmp(T(x, this->tensor(y, z)), tensor(id(y), T(x, z)) * tensor(T(x, y), id(z)), labels({&x, &y, &z}),
                   labels({&y, &z, &x}));
      }
      case Axiom::braid2: {
        const Node &x = t[0], &y = t[1], &z = t[2];
        return cmp(T(this->tensor(x, y), z), tensor(T(x, z), id(y)) * tensor(id(x), T(y, z)), labels({&x, &y, &z}),
                   labels({&z, &x, &y}));
      }
      case Axiom::braideq: {
        const Node &x = t[0], &y = t[1], &z = t[2];
        return cmp(tensor(T(y, z), id(x)) * tensor(id(y), T(x, z)) * tensor(T(x, y), id(z)),
                   tensor(id(z), T(x, y)) * tensor(T(x, z), id(y)) * tensor(id(x), T(y, z)), labels({&x, &y, &z}),
                   labels({&z, &y, &x}));
      }
      case Axiom::quasico: {
        const Node &x = t[0], &y = t[1], &z = t[2];
        return cmp(T(x, this->tensor(z, y)) * tensor(id(x), T(y, z)), T(this->tensor(y, x), z) * tensor(T(x, y), id(z)),
                   labels({&x, &y, &z}), labels({&z, &y, &x}));
      }
      case Axiom::pseudosym: {
        const Node &x = t[0], &y = t[1], &z = t[2];
        return cmp(tensor(T(y, z), id(x)) * tensor(id(y), Tinv(z, x)) * tensor(T(x, y), id(z)),
                   tensor(id(z), T(x, y)) * tensor(Tinv(z, x), id(y)) * tensor(id(x), T(y, z)), labels({&x, &y, &z}),
                   labels({&z, &y, &x}));
      }
      case Axiom::a1: {
        const Node &u = t[0], &v = t[1], &w = t[2], &x = t[3];
        const auto l = labels({&u, &v, &w, &x});
        return cmp(Tf(this->tensor(u, v), w, x), Tf(u, this->tensor(v, w), x) * tensor(id(u), Tf(v, w, x)), l, l);
      }
      case Axiom::a2: {
        const Node &u = t[0], &v = t[1], &w = t[2], &x = t[3];
        const auto l = labels({&u, &v, &w, &x});
        return cmp(Tf(u, v, this->tensor(w, x)), tensor(Tf(u, v, w), id(x)) * Tf(u, this->tensor(v, w), x), l, l);
      }
      case Axiom::baba: {
        const Node &u = t[0], &v = t[1], &w = t[2], &x = t[3];
        const auto l = labels({&u, &v, &w, &x});
        return cmp(Tb(this->tensor(u, v), w, x), tensor(id(u), Tb(v, w, x)) * Tb(u, this->tensor(v, w), x), l, l);
      }
      case Axiom::b2: {
        const Node &u = t[0], &v = t[1], &w = t[2], &x = t[3];
        const auto l = labels({&u, &v, &w, &x});
        return cmp(Tb(u, v, this->tensor(w, x)), Tb(u, this->tensor(v, w), x) * tensor(Tb(u, v, w), id(x)), l, l);
      }
      case Axiom::cab: {
        const Node &u = t[0], &v = t[1], &w = t[2], &x = t[3];
        const auto l = labels({&u, &v, &w, &x});
        const LinearOperator a = tensor(Tf(u, v, w), id(x)), b = tensor(id(u), Tb(v, w, x));
        return cmp(a * b, b * a, l, l);
      }
      case Axiom::t1t: {
        const Node &u = t[0], &v = t[1];
        const auto l = labels({&u, &unit_, &v});
        return cmp(Tf(u, unit_, v), Tb(u, unit_, v), l, l);
      }
    }
    throw std::logic_error("unknown axiom");
  }

  /// Every tuple of atoms, in lexicographic order; stops at the first failure.
  VerificationReport check_all(Axiom ax, const std::vector<Node>& atoms) {
    const int k = arity(ax);
    std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
    if (k > 0 && atoms.empty()) return VerificationReport::pass(to_string(ax));
    for (;;) {
      std::vector<Node> tuple;
      std::string where;
      for (auto i : idx) {
        tuple.push_back(atoms[i]);
        where += (where.empty() ? "" : ",") + atoms[i].name;
      }
      auto r = check(ax, tuple);
      if (!r.passed) {
        r.witness->location = "(" + where + ") " + r.witness->location;
        return r;
      }
      std::size_t p = idx.size();
      while (p > 0 && ++idx[p - 1] == atoms.size()) idx[--p] = 0;
      if (p == 0) return VerificationReport::pass(to_string(ax));
    }
  }

 private:
  OperatorFamily<Obj> fam_;
  Node unit_;
  std::map<std::string, Node> objects_;
  std::map<std::pair<std::string, std::string>, LinearOperator> ops_, inv_;
};

template <class Obj>
VerificationReport pointwise_axiom_suite(const std::vector<NamedObject<Obj>>& atoms, const NamedObject<Obj>& unit,
                                         const OperatorFamily<Obj>& family, const std::vector<Axiom>& axioms) {
  return timed([&] {
    AxiomHarness<Obj> h(family, unit);
    std::vector<VerificationReport> parts;
    for (auto a : axioms) parts.push_back(h.check_all(a, atoms));
    return VerificationReport::combine(family.name, std::move(parts));
  });
}

// ---------------------------------------------------------------------------
// Families.

inline OperatorFamily<YDModule> yd_braiding_family() {
  return {"yd-braiding", [](const YDModule& a, const YDModule& b) { return yd_braiding(a, b); },
          [](const YDModule& a, const YDModule& b) { return yd_braiding_inv(a, b); }};
}

inline OperatorFamily<YDModule> double_braiding_family() {
  return {"double-braiding", [](const YDModule& a, const YDModule& b) { return double_braiding(a, b); },
          [](const YDModule& a, const YDModule& b) { return yd_braiding_inv(a, b) * yd_braiding_inv(b, a); }};
}

template <class Obj>
OperatorFamily<Obj> identity_family() {
  auto id = [](const Obj& a, const Obj& b) {
    return LinearOperator::identity(object_field(a), {object_dim(a), object_dim(b)});
  };
  return {"identity", id, id};
}

/// c_{M,N} = flip∘(R acting on M⊗N); the inverse uses R⁻¹.
inline OperatorFamily<HModule> qt_braiding_family(const TensorElement& R) {
  const auto Ri = invert_tensor_element(R);
  if (!Ri) throw std::invalid_argument("R is not invertible");
  return {"qt-braiding", [R](const HModule& a, const HModule& b) { return module_braiding_from_qt(R, a, b); },
          [Ri = *Ri](const HModule& a, const HModule& b) {
            return act_two_legs(Ri, a, b) * LinearOperator::flip(a.field(), b.dim, a.dim);
          }};
}

/// T_{M,N} = F acting on M⊗N.
inline OperatorFamily<HModule> twist_family(const TensorElement& F) {
  const auto Fi = invert_tensor_element(F);
  if (!Fi) throw std::invalid_argument("twist is not invertible");
  return {"twist", [F](const HModule& a, const HModule& b) { return act_two_legs(F, a, b); },
          [Fi = *Fi](const HModule& a, const HModule& b) { return act_two_legs(Fi, a, b); }};
}

/// D¹(R)_{X,Y} = (R_X⊗R_Y)∘R_{X⊗Y}⁻¹ with R_X the action of z.
inline OperatorFamily<HModule> d1_family(const FiniteDimHopf& H, const SparseVec& z) {
  const auto zi = invert_tensor_element(TensorElement(H.algebra(), 1, z));
  if (!zi) throw std::invalid_argument("z is not invertible");
  const SparseVec zinv = zi->coeffs();
  auto R = [](const HModule& M, const SparseVec& h) { return M.action_operator(h); };
  return {"D1",
          [=](const HModule& a, const HModule& b) {
            return tensor(R(a, z), R(b, z)) * R(module_tensor(a, b), zinv);
          },
          [=](const HModule& a, const HModule& b) {
            return R(module_tensor(a, b), z) * tensor(R(a, zinv), R(b, zinv));
          }};
}

/// c^T_{X,Y} = T_{Y,X}∘c_{X,Y}∘T_{X,Y}⁻¹, re-verified as a braiding on the atoms.
template <class Obj>
std::pair<OperatorFamily<Obj>, VerificationReport> conjugate_braiding_pointwise(
    const std::vector<NamedObject<Obj>>& atoms, const NamedObject<Obj>& unit, const OperatorFamily<Obj>& c,
    const OperatorFamily<Obj>& T) {
  auto inv = [](const OperatorFamily<Obj>& f, const Obj& a, const Obj& b) {
    if (f.inverse) return f.inverse(a, b);
    auto i = f.op(a, b).inverse();
    if (!i) throw std::domain_error(f.name + " is not invertible on some pair");
    return *i;
  };
  OperatorFamily<Obj> cT{
      c.name + "^" + T.name,
      [=](const Obj& a, const Obj& b) { return T.op(b, a) * c.op(a, b) * inv(T, a, b); },
      [=](const Obj& a, const Obj& b) { return T.op(a, b) * inv(c, a, b) * inv(T, b, a); }};
  auto report = pointwise_axiom_suite(atoms, unit, cT, braiding_axioms());
  return {std::move(cT), std::move(report)};
}

/// The two expressions for each of T^b and T^f, and whether T^b = T^f.
struct Companions {
  LinearOperator tb, tf;
  VerificationReport formulas;
  VerificationReport equal;
};

template <class Obj>
Companions companions_tb_tf(const OperatorFamily<Obj>& T, const NamedObject<Obj>& x, const NamedObject<Obj>& y,
                            const NamedObject<Obj>& z, const NamedObject<Obj>& unit) {
  AxiomHarness<Obj> h(T, unit);
  const auto l = h.labels({&x, &y, &z});
  LinearOperator tb = h.Tb(x, y, z), tf = h.Tf(x, y, z);
  auto formulas = VerificationReport::combine(
      "companion-formulas",
      {compare_operators("Tb forms agree", tb, h.Tb(x, y, z, true), l, l),
       compare_operators("Tf forms agree", tf, h.Tf(x, y, z, true), l, l)});
  auto equal = compare_operators("Tb = Tf", tb, tf, l, l);
  return {std::move(tb), std::move(tf), std::move(formulas), std::move(equal)};
}

/// Both sides of the pseudosymmetry condition for the canonical braiding.
inline VerificationReport check_pseudosymmetry_triple(const NamedObject<YDModule>& x, const NamedObject<YDModule>& y,
                                                      const NamedObject<YDModule>& z) {
  return timed([&] {
    AxiomHarness<YDModule> h(yd_braiding_family(), {"trivial", trivial_yd(x.object.hopf())});
    return h.check(Axiom::pseudosym, {x, y, z});
  });
}

// ---------------------------------------------------------------------------
// Replays of the two computations showing that pseudosymmetry forces
// cocommutativity and commutativity.

struct ProofReplay {
  VerificationReport elements;    // pseudosymmetry on the chosen elements
  VerificationReport contracted;  // after applying id⊗ε⊗id
  VerificationReport conclusion;  // cocommutativity, resp. commutativity
};

namespace detail {

/// (id⊗ε⊗id) on X⊗Y⊗Z where Y is H with its counit.
inline SparseVec contract_middle(const FiniteDimHopf& H, std::size_t dx, std::size_t dz, const SparseVec& v) {
  const std::size_t n = H.dim();
  SparseAccumulator acc(H.field(), dx * dz);
  for (const auto& [f, c] : v.entries()) {
    const std::size_t a = f / (n * dz), b = (f / dz) % n, k = f % dz;
    acc.add(a * dz + k, c * H.counit(b));
  }
  return std::move(acc).finish();
}

inline VerificationReport replay(const FiniteDimHopf& H, bool third_is_h1) {
  const std::size_t n = H.dim();
  const NamedObject<YDModule> h1{"H1", regular_yd_h1(H)}, h2{"H2", regular_yd_h2(H)};
  const auto& z = third_is_h1 ? h1 : h2;
  AxiomHarness<YDModule> hr(yd_braiding_family(), {"trivial", trivial_yd(H)});
  const LinearOperator lhs = tensor(hr.T(h2, z), hr.id(h1)) * tensor(hr.id(h2), hr.Tinv(z, h1)) * tensor(hr.T(h1, h2), hr.id(z));
  const LinearOperator rhs = tensor(hr.id(z), hr.T(h1, h2)) * tensor(hr.Tinv(z, h1), hr.id(h2)) * tensor(hr.id(h1), hr.T(h2, z));
  const auto cod = hr.labels({&z, &h2, &h1});
  auto lab = [&](std::size_t i) { return cod[i]; };
  const std::vector<std::string> zx = tensor_labels(object_labels(z.object), object_labels(h1.object));
  auto lab2 = [&](std::size_t i) { return zx[i]; };
  for (std::size_t g = 0; g < n; ++g) {
    // First replay: 1⊗h⊗1 for every h (g plays h). Second: 1⊗g⊗h.
    for (std::size_t h = 0; h < (third_is_h1 ? 1 : n); ++h) {
      const SparseVec last = third_is_h1 ? H.unit() : H.basis_vector(h);
      const SparseVec v = kron(kron(H.unit(), H.basis_vector(g)), last);
      const SparseVec l = lhs.apply(v), r = rhs.apply(v);
      const std::string at = "1⊗" + H.label(g) + "⊗" + (third_is_h1 ? std::string("1") : H.label(h));
      if (l != r) {
        const SparseVec cl = contract_middle(H, n, n, l), cr = contract_middle(H, n, n, r);
        return VerificationReport::combine(
            "replay", {VerificationReport::fail("elements", {"at " + at, {g, h}, l.to_string(lab), r.to_string(lab)}),
                       cl == cr ? VerificationReport::pass("contracted")
                                : VerificationReport::fail("contracted", {"at " + at, {g, h}, cl.to_string(lab2),
                                                                          cr.to_string(lab2)})});
      }
    }
  }
  return VerificationReport::pass("replay");
}

}  // namespace detail

/// X = H1, Y = H2, Z = H1 on 1⊗h⊗1; contracting gives h₁S(h₃)⊗h₂ = 1⊗h.
inline ProofReplay replay_cocommutativity(const FiniteDimHopf& H) {
  auto r = detail::replay(H, true);
  ProofReplay out{VerificationReport::pass("elements"), VerificationReport::pass("contracted"),
                  check_cocommutative(H)};
  if (!r.passed) {
    out.elements = r.parts.at(0);
    out.contracted = r.parts.at(1);
  }
  return out;
}

/// X = H1, Y = H2, Z = H2 on 1⊗g⊗h.
inline ProofReplay replay_commutativity(const FiniteDimHopf& H) {
  auto r = detail::replay(H, false);
  ProofReplay out{VerificationReport::pass("elements"), VerificationReport::pass("contracted"), check_commutative(H)};
  if (!r.passed) {
    out.elements = r.parts.at(0);
    out.contracted = r.parts.at(1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Module spec grammar: H1 | H2 | trivial | tensor(<spec>,<spec>).

class ModuleSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

class ModuleSpecParser {
 public:
  ModuleSpecParser(const FiniteDimHopf& H, std::string_view s) : H_(H), s_(s) {}

  NamedObject<YDModule> parse() {
    auto m = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return m;
  }

 private:
  NamedObject<YDModule> expr() {
    skip();
    if (take("tensor")) {
      skip();
      expect('(');
      auto a = expr();
      skip();
      expect(',');
      auto b = expr();
      skip();
      expect(')');
      return {"tensor(" + a.name + "," + b.name + ")", yd_tensor(a.object, b.object)};
    }
    if (take("trivial")) return {"trivial", trivial_yd(H_)};
    if (take("H1")) return {"H1", cached(h1_, [&] { return regular_yd_h1(H_); })};
    if (take("H2")) return {"H2", cached(h2_, [&] { return regular_yd_h2(H_); })};
    fail("expected H1, H2, trivial or tensor(...)");
  }

  template <class F>
  const YDModule& cached(std::optional<YDModule>& slot, F&& make) {
    if (!slot) slot = make();
    return *slot;
  }

  bool take(std::string_view word) {
    if (s_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ModuleSpecError("module spec '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  const FiniteDimHopf& H_;
  std::string_view s_;
  std::size_t pos_ = 0;
  std::optional<YDModule> h1_, h2_;
};

}  // namespace detail

inline NamedObject<YDModule> parse_module_spec(const FiniteDimHopf& H, std::string_view spec) {
  return detail::ModuleSpecParser(H, spec).parse();
}

}  // namespace hopfkit
