#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/en_family.hpp"
#include "hopfkit/qt.hpp"
#include "hopfkit/twists.hpp"

namespace hopfkit {

enum class ZsqKind { laycle, quasibraiding };

inline std::string to_string(ZsqKind k) { return k == ZsqKind::laycle ? "laycle" : "quasibraiding"; }

class ZsqValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An element of the group of lazy twists and quasi-coboundaries, tagged by
/// which of the two it is. The same tensor can occur with either tag.
struct ZsqElement {
  ZsqKind kind;
  TensorElement element;

  friend bool operator==(const ZsqElement& a, const ZsqElement& b) { return a.kind == b.kind && a.element == b.element; }
};

inline VerificationReport validate_zsq(const FiniteDimHopf& H, const ZsqElement& u) {
  return u.kind == ZsqKind::laycle ? is_lazy_twist(H, u.element) : is_quasi_coboundary(H, u.element);
}

inline ZsqElement make_zsq(const FiniteDimHopf& H, ZsqKind kind, TensorElement x) {
  ZsqElement u{kind, std::move(x)};
  auto r = validate_zsq(H, u);
  if (!r.passed) throw ZsqValidationError(to_string(kind) + " check fails: " + r.witness->location);
  return u;
}

inline ZsqElement zsq_identity(const FiniteDimHopf& H) { return {ZsqKind::laycle, TensorElement::unit(H.algebra(), 2)}; }

/// ST, T21R, RT and R21P for the four kind combinations; laycle-type elements
/// form an index-2 subgroup, so the kind multiplies like ±1.
inline ZsqElement zsq_mul(const FiniteDimHopf& H, const ZsqElement& u, const ZsqElement& v, bool revalidate = true) {
  const bool ul = u.kind == ZsqKind::laycle, vl = v.kind == ZsqKind::laycle;
  const TensorElement& left = ul == vl ? (ul ? u.element : flip21(u.element)) : (ul ? flip21(u.element) : u.element);
  ZsqElement w{ul == vl ? ZsqKind::laycle : ZsqKind::quasibraiding, left * v.element};
  if (revalidate) {
    auto r = validate_zsq(H, w);
    if (!r.passed) throw ZsqValidationError("product left the group (" + r.witness->location + "): inputs were not valid");
  }
  return w;
}

inline ZsqElement zsq_inverse(const ZsqElement& u) {
  const auto inv = invert_tensor_element(u.element);
  if (!inv) throw ZsqValidationError("element is not invertible");
  // For a quasi-braiding R the inverse P satisfies R21P = 1⊗1.
  return {u.kind, u.kind == ZsqKind::laycle ? *inv : flip21(*inv)};
}

// ---------------------------------------------------------------------------
// G_n = {T_A, R_A} and its identification with Z₂ ⋉ M_n(k).

struct GnElement {
  bool g = false;  // false ↦ T_A, true ↦ R_A
  DenseMatrix A;
};

inline ZsqElement gn_to_zsq(const FiniteDimHopf& E, const GnElement& x) {
  return x.g ? ZsqElement{ZsqKind::quasibraiding, en_rA(E, x.A)} : ZsqElement{ZsqKind::laycle, en_tA(E, x.A)};
}

/// (s,A)(t,B) = (st, A·t + B) with A·g = −Aᵗ.
inline GnElement gn_mul(const GnElement& x, const GnElement& y) {
  return {x.g != y.g, (y.g ? -x.A.transpose() : x.A) + y.A};
}

inline DenseMatrix random_matrix(FieldSpec F, std::size_t n, std::mt19937_64& rng) {
  DenseMatrix A(F, n, n);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int v = F.is_prime_field() ? static_cast<int>(rng() % F.modulus()) : dist(rng);
      A.at(i, j) = Scalar(F, v);
    }
  return A;
}

/// zsq_mul of the images agrees with the semidirect law on sampled pairs,
/// and R_{Aᵗ} is the inverse of R_A.
inline VerificationReport verify_gn_semidirect(const FiniteDimHopf& E, std::size_t samples, std::uint64_t seed = 0) {
  return timed([&] {
    const auto n = static_cast<std::size_t>(en_rank(E));
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      const GnElement x{rng() % 2 == 1, random_matrix(E.field(), n, rng)};
      const GnElement y{rng() % 2 == 1, random_matrix(E.field(), n, rng)};
      const ZsqElement got = zsq_mul(E, gn_to_zsq(E, x), gn_to_zsq(E, y));
      const GnElement law = gn_mul(x, y);
      const ZsqElement want = gn_to_zsq(E, law);
      if (!(got == want)) {
        const std::string where = std::string(x.g ? "R" : "T") + "_[" + x.A.to_string() + "] * " + (y.g ? "R" : "T") +
                                  "_[" + y.A.to_string() + "]";
        return VerificationReport::fail("gn-semidirect", {where, {s}, to_string(got.kind) + " " + got.element.to_string(),
                                                          to_string(want.kind) + " " + want.element.to_string()});
      }
      if (x.g) {
        const ZsqElement inv = zsq_inverse(gn_to_zsq(E, x));
        const ZsqElement expect = gn_to_zsq(E, {true, x.A.transpose()});
        if (!(inv == expect))
          return VerificationReport::fail("gn-semidirect", {"inverse of R_[" + x.A.to_string() + "]", {s},
                                                            inv.element.to_string(), expect.element.to_string()});
      }
    }
    return VerificationReport::pass("gn-semidirect");
  });
}

// ---------------------------------------------------------------------------
// Lazy cohomology of k[C₂] by exhaustive enumeration over GF(p).

namespace detail {

/// All elements of H⊗H over a prime field, in lexicographic coefficient order.
template <class F>
void for_each_two_tensor(const FiniteDimHopf& H, F&& f) {
  const std::uint64_t p = H.field().modulus();
  const std::size_t N = H.dim() * H.dim();
  std::vector<std::uint64_t> digits(N, 0);
  for (;;) {
    std::vector<Scalar> v;
    v.reserve(N);
    for (auto d : digits) v.push_back(Scalar(H.field(), static_cast<long long>(d)));
    f(TensorElement(H.algebra(), 2, SparseVec::from_dense(H.field(), v)));
    std::size_t k = N;
    while (k > 0 && ++digits[k - 1] == p) digits[--k] = 0;
    if (k == 0) return;
  }
}

inline std::vector<Scalar> field_units(FieldSpec F) {
  std::vector<Scalar> out;
  for (std::uint64_t a = 1; a < F.modulus(); ++a) out.push_back(Scalar(F, static_cast<long long>(a)));
  return out;
}

}  // namespace detail

struct C2Cohomology {
  FieldSpec field;
  std::vector<Scalar> lazy_twist_params;      // a with T_a among the enumerated lazy twists
  std::vector<Scalar> coboundary_params;      // a with T_a = Δ(θ)(θ⁻¹⊗θ⁻¹) for some θ
  std::vector<Scalar> quasi_coboundary_params;
  std::vector<Scalar> quasitriangular_params;
  bool twists_match_formula = false;          // enumerated lazy twists = {T_a : a ∈ k*}
  bool quasi_match_formula = false;           // enumerated quasi-coboundaries = {R_a : a ∈ k*}
  bool coboundaries_are_squares = false;      // coboundaries = {T_a : a ∈ (k*)²}
  bool theta_formula_holds = false;           // Δ(θ_α)(θ_α⁻¹⊗θ_α⁻¹) = T_{α⁻²}
  bool twist_law_holds = false;               // T_aT_b = T_{ab}
  bool t0_twist_like = false;                 // T_0 fails only invertibility
  std::size_t group_order = 0;                // |Z²(H)|
  std::size_t quotient_order = 0;
  std::string quotient_type;
};

/// Names an abelian group of order ≤ 16 from its element orders.
inline std::string abelian_type(const std::vector<std::size_t>& orders) {
  const std::size_t n = orders.size();
  if (n == 1) return "trivial";
  std::map<std::size_t, std::size_t> count;
  for (auto o : orders) ++count[o];
  if (count.count(n)) return "C" + std::to_string(n);
  if (count[1] + count[2] == n) {
    std::string s;
    for (std::size_t m = n; m > 1; m /= 2) s += s.empty() ? "C2" : "×C2";
    return s;
  }
  return "order " + std::to_string(n);
}

inline C2Cohomology lazy_cohomology_c2(FieldSpec F) {
  if (!F.is_prime_field()) throw FieldError("lazy cohomology enumeration needs a prime field");
  const FiniteDimHopf H = group_algebra(cyclic_group(2), F);
  C2Cohomology out;
  out.field = F;
  const std::vector<Scalar> units = detail::field_units(F);

  std::vector<TensorElement> twists, quasi;
  detail::for_each_two_tensor(H, [&](const TensorElement& x) {
    if (is_lazy_twist(H, x).passed) twists.push_back(x);
    if (is_quasi_coboundary(H, x).passed) quasi.push_back(x);
  });
  auto params_of = [&](const std::vector<TensorElement>& xs, std::vector<Scalar>& params) {
    // Every enumerated element must be some T_a with a ≠ 0, and every such T_a must occur.
    std::size_t matched = 0;
    for (const auto& a : units)
      if (std::find(xs.begin(), xs.end(), c2_ta(H, a)) != xs.end()) {
        params.push_back(a);
        ++matched;
      }
    return matched == units.size() && xs.size() == units.size();
  };
  out.twists_match_formula = params_of(twists, out.lazy_twist_params);
  out.quasi_match_formula = params_of(quasi, out.quasi_coboundary_params);
  for (const auto& a : out.quasi_coboundary_params)
    if (is_quasitriangular(H, c2_ra(H, a)).passed) out.quasitriangular_params.push_back(a);

  // Coboundaries from all invertible normalized θ = u·1 + (1−u)·g.
  std::vector<TensorElement> cobs;
  for (std::uint64_t u = 0; u < F.modulus(); ++u) {
    const Scalar us(F, static_cast<long long>(u));
    const SparseVec theta = SparseVec::from_dense(F, std::vector<Scalar>{us, Scalar::one(F) - us});
    if (!invert_tensor_element(element(H, theta))) continue;
    const TensorElement t = coboundary_twist(H, theta);
    if (std::find(cobs.begin(), cobs.end(), t) == cobs.end()) cobs.push_back(t);
  }
  std::set<std::string> squares;
  for (const auto& a : units) squares.insert((a * a).to_string());
  bool cob_ok = true;
  for (const auto& a : units) {
    const bool is_cob = std::find(cobs.begin(), cobs.end(), c2_ta(H, a)) != cobs.end();
    if (is_cob) out.coboundary_params.push_back(a);
    cob_ok = cob_ok && (is_cob == (squares.count(a.to_string()) > 0));
  }
  out.coboundaries_are_squares = cob_ok && cobs.size() == squares.size();

  out.theta_formula_holds = true;
  for (const auto& alpha : units)
    out.theta_formula_holds = out.theta_formula_holds &&
                              coboundary_twist(H, c2_theta(H, alpha)) == c2_ta(H, (alpha * alpha).inverse());
  out.twist_law_holds = true;
  for (const auto& a : units)
    for (const auto& b : units) out.twist_law_holds = out.twist_law_holds && c2_ta(H, a) * c2_ta(H, b) == c2_ta(H, a * b);
  {
    const auto r = is_lazy_twist(H, c2_ta(H, Scalar::zero(F)));
    bool others = true;
    for (const auto& p : r.parts)
      if (p.check_name != "invertible") others = others && p.passed;
    out.t0_twist_like = !r.find("invertible")->passed && others;
  }

  // The group Z²(H), its subgroup B², and the quotient.
  std::vector<ZsqElement> Z, B;
  for (const auto& t : twists) Z.push_back({ZsqKind::laycle, t});
  for (const auto& q : quasi) Z.push_back({ZsqKind::quasibraiding, q});
  for (const auto& c : cobs) B.push_back({ZsqKind::laycle, c});
  out.group_order = Z.size();
  auto index_of = [&](const ZsqElement& x) {
    return static_cast<std::size_t>(std::find(Z.begin(), Z.end(), x) - Z.begin());
  };
  std::vector<std::size_t> coset(Z.size(), Z.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < Z.size(); ++i) {
    if (coset[i] != Z.size()) continue;
    for (const auto& b : B) coset[index_of(zsq_mul(H, Z[i], b, false))] = reps.size();
    reps.push_back(i);
  }
  out.quotient_order = reps.size();
  const std::size_t id_coset = coset[index_of(zsq_identity(H))];
  std::vector<std::size_t> orders;
  for (std::size_t r : reps) {
    std::size_t ord = 1;
    ZsqElement x = Z[r];
    while (coset[index_of(x)] != id_coset) {
      x = zsq_mul(H, x, Z[r], false);
      ++ord;
    }
    orders.push_back(ord);
  }
  out.quotient_type = abelian_type(orders);
  return out;
}

}  // namespace hopfkit
