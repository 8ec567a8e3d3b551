#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/hopf.hpp"
#include "hopfkit/report.hpp"
#include "hopfkit/sparse_solve.hpp"

namespace hopfkit {

/// γ : H → k by its values on the basis.
struct Functional {
  std::vector<Scalar> values;

  Scalar operator()(const SparseVec& h) const {
    Scalar s = Scalar::zero(h.field());
    for (const auto& [i, c] : h.entries()) s += c * values.at(i);
    return s;
  }
  friend bool operator==(const Functional&, const Functional&) = default;
};

/// σ : H⊗H → k with values[i*n + j] = σ(b_i, b_j).
struct BilinearForm {
  std::size_t n = 0;
  std::vector<Scalar> values;

  const Scalar& at(std::size_t i, std::size_t j) const { return values.at(i * n + j); }
  Scalar operator()(const SparseVec& a, const SparseVec& b) const {
    Scalar s = Scalar::zero(a.field());
    for (const auto& [i, x] : a.entries())
      for (const auto& [j, y] : b.entries()) s += x * y * at(i, j);
    return s;
  }
  friend bool operator==(const BilinearForm&, const BilinearForm&) = default;
};

inline Functional counit_functional(const FiniteDimHopf& H) {
  Functional g;
  for (std::size_t i = 0; i < H.dim(); ++i) g.values.push_back(H.counit(i));
  return g;
}

/// ε⊗ε, the unit for convolution.
inline BilinearForm trivial_form(const FiniteDimHopf& H) {
  BilinearForm s{H.dim(), {}};
  for (std::size_t i = 0; i < H.dim(); ++i)
    for (std::size_t j = 0; j < H.dim(); ++j) s.values.push_back(H.counit(i) * H.counit(j));
  return s;
}

namespace detail {

inline void check_form(const FiniteDimHopf& H, const BilinearForm& s) {
  if (s.n != H.dim() || s.values.size() != H.dim() * H.dim()) throw DimensionError("bilinear form has wrong shape");
}

inline void check_functional(const FiniteDimHopf& H, const Functional& g) {
  if (g.values.size() != H.dim()) throw DimensionError("functional has wrong shape");
}

}  // namespace detail

/// (σ*τ)(a, b) = σ(a₁, b₁)τ(a₂, b₂).
inline BilinearForm convolve(const FiniteDimHopf& H, const BilinearForm& s, const BilinearForm& t) {
  detail::check_form(H, s);
  detail::check_form(H, t);
  const std::size_t n = H.dim();
  BilinearForm r{n, std::vector<Scalar>(n * n, Scalar::zero(H.field()))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& [fa, ca] : H.comul(a).entries())
        for (const auto& [fb, cb] : H.comul(b).entries())
          r.values[a * n + b] += ca * cb * s.at(fa / n, fb / n) * t.at(fa % n, fb % n);
  return r;
}

inline Functional convolve(const FiniteDimHopf& H, const Functional& g, const Functional& d) {
  detail::check_functional(H, g);
  detail::check_functional(H, d);
  const std::size_t n = H.dim();
  Functional r{std::vector<Scalar>(n, Scalar::zero(H.field()))};
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& [f, c] : H.comul(a).entries()) r.values[a] += c * g.values[f / n] * d.values[f % n];
  return r;
}

/// Two-sided convolution inverse: solve σ*τ = ε⊗ε, then confirm τ*σ = ε⊗ε.
inline std::optional<BilinearForm> convolution_inverse(const FiniteDimHopf& H, const BilinearForm& s) {
  detail::check_form(H, s);
  const std::size_t n = H.dim(), u = n * n;
  const BilinearForm e = trivial_form(H);
  SparseEchelon ech(H.field(), u, 1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      SparseAccumulator row(H.field(), u + 1);
      for (const auto& [fa, ca] : H.comul(a).entries())
        for (const auto& [fb, cb] : H.comul(b).entries())
          row.add((fa % n) * n + fb % n, ca * cb * s.at(fa / n, fb / n));
      row.add(u, e.at(a, b));
      if (!ech.add_equation(std::move(row).finish())) return std::nullopt;
    }
  auto sol = ech.solve();
  if (!sol) return std::nullopt;
  BilinearForm t{n, (*sol)[0].to_dense()};
  if (convolve(H, t, s) != e) return std::nullopt;
  return t;
}

inline std::optional<Functional> convolution_inverse(const FiniteDimHopf& H, const Functional& g) {
  detail::check_functional(H, g);
  const std::size_t n = H.dim();
  SparseEchelon ech(H.field(), n, 1);
  for (std::size_t a = 0; a < n; ++a) {
    SparseAccumulator row(H.field(), n + 1);
    for (const auto& [f, c] : H.comul(a).entries()) row.add(f % n, c * g.values[f / n]);
    row.add(n, H.counit(a));
    if (!ech.add_equation(std::move(row).finish())) return std::nullopt;
  }
  auto sol = ech.solve();
  if (!sol) return std::nullopt;
  Functional d{(*sol)[0].to_dense()};
  if (convolve(H, d, g) != counit_functional(H)) return std::nullopt;
  return d;
}

inline bool is_normalized(const FiniteDimHopf& H, const BilinearForm& s) {
  detail::check_form(H, s);
  const SparseVec& one = H.unit();
  for (std::size_t i = 0; i < H.dim(); ++i) {
    const SparseVec b = H.basis_vector(i);
    if (s(one, b) != H.counit(i) || s(b, one) != H.counit(i)) return false;
  }
  return true;
}

inline bool is_normalized(const FiniteDimHopf& H, const Functional& g) { return g(H.unit()).is_one(); }

namespace detail {

inline std::string triple_label(const FiniteDimHopf& H, std::size_t a, std::size_t b, std::size_t c) {
  return "basis (" + H.label(a) + ", " + H.label(b) + ", " + H.label(c) + ")";
}

/// Σ over Δ(b_a) ⊗ Δ(b_b) terms: f(a₁, a₂, b₁, b₂, coefficient).
template <class F>
void each_pair_term(const FiniteDimHopf& H, std::size_t a, std::size_t b, F&& f) {
  const std::size_t n = H.dim();
  for (const auto& [fa, ca] : H.comul(a).entries())
    for (const auto& [fb, cb] : H.comul(b).entries()) f(fa / n, fa % n, fb / n, fb % n, ca * cb);
}

template <class L, class R>
VerificationReport on_triples(const FiniteDimHopf& H, std::string name, L lhs, R rhs) {
  const std::size_t n = H.dim();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        const Scalar l = lhs(a, b, c), r = rhs(a, b, c);
        if (l != r) return VerificationReport::fail(name, {triple_label(H, a, b, c), {a, b, c}, l.to_string(), r.to_string()});
      }
  return VerificationReport::pass(std::move(name));
}

}  // namespace detail

/// σ(a₁,b₁)σ(a₂b₂,c) = σ(b₁,c₁)σ(a,b₂c₂).
inline VerificationReport is_left_2cocycle(const FiniteDimHopf& H, const BilinearForm& s) {
  detail::check_form(H, s);
  return timed([&] {
    return detail::on_triples(
        H, "left-2-cocycle",
        [&](std::size_t a, std::size_t b, std::size_t c) {
          Scalar acc = Scalar::zero(H.field());
          detail::each_pair_term(H, a, b, [&](auto a1, auto a2, auto b1, auto b2, const Scalar& k) {
            acc += k * s.at(a1, b1) * s(H.product(a2, b2), H.basis_vector(c));
          });
          return acc;
        },
        [&](std::size_t a, std::size_t b, std::size_t c) {
          Scalar acc = Scalar::zero(H.field());
          detail::each_pair_term(H, b, c, [&](auto b1, auto b2, auto c1, auto c2, const Scalar& k) {
            acc += k * s.at(b1, c1) * s(H.basis_vector(a), H.product(b2, c2));
          });
          return acc;
        });
  });
}

/// σ(a₁b₁,c)σ(a₂,b₂) = σ(a,b₁c₁)σ(b₂,c₂).
inline VerificationReport is_right_2cocycle(const FiniteDimHopf& H, const BilinearForm& s) {
  detail::check_form(H, s);
  return timed([&] {
    return detail::on_triples(
        H, "right-2-cocycle",
        [&](std::size_t a, std::size_t b, std::size_t c) {
          Scalar acc = Scalar::zero(H.field());
          detail::each_pair_term(H, a, b, [&](auto a1, auto a2, auto b1, auto b2, const Scalar& k) {
            acc += k * s(H.product(a1, b1), H.basis_vector(c)) * s.at(a2, b2);
          });
          return acc;
        },
        [&](std::size_t a, std::size_t b, std::size_t c) {
          Scalar acc = Scalar::zero(H.field());
          detail::each_pair_term(H, b, c, [&](auto b1, auto b2, auto c1, auto c2, const Scalar& k) {
            acc += k * s(H.basis_vector(a), H.product(b1, c1)) * s.at(b2, c2);
          });
          return acc;
        });
  });
}

/// σ(h₁,h'₁)h₂h'₂ = h₁h'₁σ(h₂,h'₂) as elements of H.
inline VerificationReport is_lazy_cocycle(const FiniteDimHopf& H, const BilinearForm& s) {
  detail::check_form(H, s);
  return timed([&] {
    const std::size_t n = H.dim();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        SparseAccumulator l(H.field(), n), r(H.field(), n);
        detail::each_pair_term(H, a, b, [&](auto a1, auto a2, auto b1, auto b2, const Scalar& k) {
          l.add(H.product(a2, b2), k * s.at(a1, b1));
          r.add(H.product(a1, b1), k * s.at(a2, b2));
        });
        const SparseVec lv = std::move(l).finish(), rv = std::move(r).finish();
        if (lv != rv)
          return VerificationReport::fail("lazy", {"basis (" + H.label(a) + ", " + H.label(b) + ")", {a, b}, H.render(lv),
                                                   H.render(rv)});
      }
    return VerificationReport::pass("lazy");
  });
}

/// D¹(γ)(h,h') = γ(h₁)γ(h'₁)γ⁻¹(h₂h'₂).
inline BilinearForm d1(const FiniteDimHopf& H, const Functional& g) {
  detail::check_functional(H, g);
  const auto ginv = convolution_inverse(H, g);
  if (!ginv) throw std::invalid_argument("D1 needs a convolution invertible functional");
  const std::size_t n = H.dim();
  BilinearForm s{n, std::vector<Scalar>(n * n, Scalar::zero(H.field()))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      detail::each_pair_term(H, a, b, [&](auto a1, auto a2, auto b1, auto b2, const Scalar& k) {
        s.values[a * n + b] += k * g.values[a1] * g.values[b1] * (*ginv)(H.product(a2, b2));
      });
  return s;
}

enum class TwistSide { left, right };
enum class Normalization { require, skip };

struct TwistedAlgebra {
  AlgebraPtr algebra;
  VerificationReport associativity;
};

/// Left: h·h' = σ(h₁,h'₁)h₂h'₂. Right: h·h' = h₁h'₁σ(h₂,h'₂).
/// Associativity is checked on every basis triple and returned alongside.
inline TwistedAlgebra twisted_algebra_cocycle(const FiniteDimHopf& H, const BilinearForm& s, TwistSide side,
                                              Normalization norm = Normalization::require) {
  detail::check_form(H, s);
  if (norm == Normalization::require && !is_normalized(H, s))
    throw std::invalid_argument("twisted product needs a normalized bilinear form");
  const std::size_t n = H.dim();
  AlgebraData d{H.field(), n, H.algebra()->labels(), {}, H.unit(), std::nullopt};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      SparseAccumulator acc(H.field(), n);
      detail::each_pair_term(H, a, b, [&](auto a1, auto a2, auto b1, auto b2, const Scalar& k) {
        if (side == TwistSide::left)
          acc.add(H.product(a2, b2), k * s.at(a1, b1));
        else
          acc.add(H.product(a1, b1), k * s.at(a2, b2));
      });
      d.mul.push_back(std::move(acc).finish());
    }
  auto A = std::make_shared<const Algebra>(std::move(d));
  auto rep = check_associativity(*A);
  return {std::move(A), std::move(rep)};
}

}  // namespace hopfkit
