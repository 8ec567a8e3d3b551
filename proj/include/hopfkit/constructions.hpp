#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hopfkit/hopf.hpp"
#include "hopfkit/qt.hpp"
#include "hopfkit/tensor.hpp"

namespace hopfkit {

class GroupTableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class FiniteGroup {
 public:
  /// Validates that `cayley` (cayley[a][b] = index of a·b) is a group table.
  FiniteGroup(std::vector<std::vector<std::size_t>> cayley, std::vector<std::string> labels)
      : table_(std::move(cayley)), labels_(std::move(labels)) {
    const std::size_t m = table_.size();
    if (m == 0) throw GroupTableError("group must be nonempty");
    if (labels_.size() != m) throw GroupTableError("one label per element required");
    for (const auto& row : table_) {
      if (row.size() != m) throw GroupTableError("Cayley table must be square");
      for (std::size_t v : row)
        if (v >= m) throw GroupTableError("Cayley table entry out of range");
    }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw GroupTableError("not associative at (" + labels_[a] + ", " + labels_[b] + ", " + labels_[c] + ")");
    identity_ = m;
    for (std::size_t e = 0; e < m && identity_ == m; ++e) {
      bool ok = true;
      for (std::size_t a = 0; a < m && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
      if (ok) identity_ = e;
    }
    if (identity_ == m) throw GroupTableError("no identity element");
    inverse_.assign(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (mul(a, b) == identity_ && mul(b, a) == identity_) inverse_[a] = b;
    for (std::size_t a = 0; a < m; ++a)
      if (inverse_[a] == m) throw GroupTableError("element " + labels_[a] + " has no inverse");
  }

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t inverse(std::size_t a) const { return inverse_.at(a); }
  const std::string& label(std::size_t a) const { return labels_.at(a); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<std::vector<std::size_t>>& cayley() const noexcept { return table_; }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = a + 1; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::string> labels_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "1" : a == 1 ? "g" : "g" + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

namespace detail {

inline std::string cycle_notation(const std::vector<int>& p) {
  std::string s;
  std::vector<bool> seen(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    s += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      s += std::to_string(j + 1);
    }
    s += ")";
  }
  return s.empty() ? "e" : s;
}

}  // namespace detail

/// Permutations of {1..n} in lexicographic order; a·b means "apply b, then a".
inline FiniteGroup symmetric_group(std::size_t n) {
  if (n == 0 || n > 4) throw std::invalid_argument("symmetric group degree must be in 1..4");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::size_t m = perms.size();
  std::vector<std::vector<std::size_t>> t(m, std::vector<std::size_t>(m));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(detail::cycle_notation(perms[a]));
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<int> c(n);
      for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][static_cast<std::size_t>(perms[b][i])];
      t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

inline FiniteGroup direct_product(const FiniteGroup& G, const FiniteGroup& K) {
  const std::size_t m = G.order(), k = K.order();
  std::vector<std::vector<std::size_t>> t(m * k, std::vector<std::size_t>(m * k));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m * k; ++a) {
    labels.push_back("(" + G.label(a / k) + "," + K.label(a % k) + ")");
    for (std::size_t b = 0; b < m * k; ++b) t[a][b] = G.mul(a / k, b / k) * k + K.mul(a % k, b % k);
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

/// Grammar: cyclic:<n> | sym:<n> (n ≤ 4) | product:<spec>,<spec>.
inline FiniteGroup named_group(std::string_view spec) {
  auto number = [&](std::string_view s) -> std::size_t {
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw std::invalid_argument("bad group size in '" + std::string(spec) + "'");
    return std::stoul(std::string(s));
  };
  if (spec.starts_with("cyclic:")) {
    const std::size_t n = number(spec.substr(7));
    if (n == 0 || n > 64) throw std::invalid_argument("cyclic order must be in 1..64");
    return cyclic_group(n);
  }
  if (spec.starts_with("sym:")) {
    const std::size_t n = number(spec.substr(4));
    if (n == 0 || n > 4) throw std::invalid_argument("sym degree must be in 1..4");
    return symmetric_group(n);
  }
  if (spec.starts_with("product:")) {
    const std::string_view rest = spec.substr(8);
    // The first comma at which the left part parses is the separator.
    for (std::size_t pos = rest.find(','); pos != std::string_view::npos; pos = rest.find(',', pos + 1)) {
      std::optional<FiniteGroup> left;
      try {
        left.emplace(named_group(rest.substr(0, pos)));
      } catch (const std::invalid_argument&) {
        continue;
      }
      return direct_product(*left, named_group(rest.substr(pos + 1)));
    }
    throw std::invalid_argument("bad product spec '" + std::string(spec) + "'");
  }
  throw std::invalid_argument("unknown group spec '" + std::string(spec) + "'");
}

inline FiniteDimHopf group_algebra(const FiniteGroup& G, FieldSpec field) {
  const std::size_t m = G.order();
  HopfData d;
  d.field = field;
  d.dim = m;
  d.basis = G.labels();
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) d.mul.push_back(SparseVec::basis(field, m, G.mul(a, b)));
  d.unit = SparseVec::basis(field, m, G.identity());
  for (std::size_t a = 0; a < m; ++a) {
    d.comul.push_back(SparseVec::basis(field, m * m, a * m + a));
    d.counit.push_back(Scalar::one(field));
  }
  return FiniteDimHopf::create(std::move(d));
}

// ---------------------------------------------------------------------------
// E(n)

struct EnBasisIndex {
  int a = 0;               // exponent of c
  std::vector<int> P;      // strictly increasing subset of 1..n

  std::size_t flat() const {
    std::size_t mask = 0;
    for (int i : P) mask |= std::size_t{1} << (i - 1);
    return static_cast<std::size_t>(a) + 2 * mask;
  }
  static EnBasisIndex from_flat(std::size_t f) {
    EnBasisIndex e;
    e.a = static_cast<int>(f & 1);
    const std::size_t mask = f >> 1;
    for (int i = 1; (mask >> (i - 1)) != 0; ++i)
      if (mask >> (i - 1) & 1) e.P.push_back(i);
    return e;
  }
  std::string label() const {
    std::string s = a ? "c" : "";
    for (int i : P) s += "x" + std::to_string(i);
    return s.empty() ? "1" : s;
  }
};

inline constexpr int en_max_n = 6;

namespace detail {

/// Parity of the permutation sorting the concatenation of the index sets.
inline int shuffle_sign(std::size_t maskP, std::size_t maskQ) {
  int inversions = 0;
  for (std::size_t q = maskQ; q; q &= q - 1) {
    const std::size_t bit = q & (~q + 1);
    inversions += std::popcount(maskP & ~(bit | (bit - 1)));  // elements of P greater than this element of Q
  }
  return inversions % 2 ? -1 : 1;
}

}  // namespace detail

inline std::size_t en_index(int a, std::initializer_list<int> P) { return EnBasisIndex{a, std::vector<int>(P)}.flat(); }

/// The 2^{n+1}-dimensional algebra on c^a x_P with c² = 1, x_i² = 0,
/// x_i c = -c x_i and x_i x_j = -x_j x_i.
inline FiniteDimHopf build_en(int n, FieldSpec field) {
  if (n < 0 || n > en_max_n) throw std::invalid_argument("E(n) requires 0 <= n <= " + std::to_string(en_max_n));
  const std::size_t N = std::size_t{2} << n;
  HopfData d;
  d.field = field;
  d.dim = N;
  for (std::size_t f = 0; f < N; ++f) d.basis.push_back(EnBasisIndex::from_flat(f).label());
  for (std::size_t f = 0; f < N; ++f)
    for (std::size_t g = 0; g < N; ++g) {
      const std::size_t a = f & 1, P = f >> 1, b = g & 1, Q = g >> 1;
      if (P & Q) {
        d.mul.emplace_back(field, N);
        continue;
      }
      int sign = detail::shuffle_sign(P, Q);
      if (b && std::popcount(P) % 2) sign = -sign;
      d.mul.push_back(SparseVec::basis(field, N, ((a + b) & 1) + 2 * (P | Q), Scalar(field, sign)));
    }
  d.unit = SparseVec::basis(field, N, 0);
  // Δ is extended multiplicatively from Δ(c) = c⊗c and Δ(x_i) = 1⊗x_i + x_i⊗c.
  const auto alg = std::make_shared<const Algebra>(AlgebraData{field, N, d.basis, d.mul, *d.unit, std::nullopt});
  const std::size_t c = en_index(1, {});
  const TensorElement dc = TensorElement::basis(alg, {c, c});
  for (std::size_t f = 0; f < N; ++f) {
    const EnBasisIndex e = EnBasisIndex::from_flat(f);
    TensorElement acc = e.a ? dc : TensorElement::unit(alg, 2);
    for (int i : e.P) {
      const std::size_t xi = en_index(0, {i});
      acc = acc * (TensorElement::basis(alg, {0, xi}) + TensorElement::basis(alg, {xi, c}));
    }
    d.comul.push_back(acc.coeffs());
    d.counit.push_back(e.P.empty() ? Scalar::one(field) : Scalar::zero(field));
  }
  return FiniteDimHopf::create(std::move(d));
}

// ---------------------------------------------------------------------------
// Drinfeld double of a group algebra

enum class DoubleConvention {
  conjugation,  // Δ(δ_g x) = Σ_{ab=g} δ_a x ⊗ δ_b x
  mirror,       // Δ(δ_g x) = Σ_{ba=g} δ_a x ⊗ δ_b x
};

inline std::string to_string(DoubleConvention c) { return c == DoubleConvention::conjugation ? "conjugation" : "mirror"; }

struct DrinfeldDouble {
  FiniteDimHopf H;
  TensorElement R;
  DoubleConvention convention;
  /// Outcome of each convention tried, in order.
  std::vector<std::pair<DoubleConvention, VerificationReport>> attempts;
};

class ConventionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t double_max_group_order = 8;

/// Raw data of D(k[G]) on the basis δ_g x (index g·|G| + x) under a convention.
inline HopfData drinfeld_double_data(const FiniteGroup& G, FieldSpec field, DoubleConvention conv) {
  const std::size_t m = G.order(), N = m * m;
  HopfData d;
  d.field = field;
  d.dim = N;
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t x = 0; x < m; ++x) d.basis.push_back("δ" + G.label(g) + "·" + G.label(x));
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t h = 0; h < m; ++h)
        for (std::size_t y = 0; y < m; ++y) {
          if (g == G.mul(G.mul(x, h), G.inverse(x)))
            d.mul.push_back(SparseVec::basis(field, N, g * m + G.mul(x, y)));
          else
            d.mul.emplace_back(field, N);
        }
  SparseAccumulator unit(field, N);
  for (std::size_t g = 0; g < m; ++g) unit.add(g * m + G.identity(), Scalar::one(field));
  d.unit = std::move(unit).finish();
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t x = 0; x < m; ++x) {
      SparseAccumulator acc(field, N * N);
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
          const std::size_t prod = conv == DoubleConvention::conjugation ? G.mul(a, b) : G.mul(b, a);
          if (prod == g) acc.add((a * m + x) * N + (b * m + x), Scalar::one(field));
        }
      d.comul.push_back(std::move(acc).finish());
      d.counit.push_back(g == G.identity() ? Scalar::one(field) : Scalar::zero(field));
    }
  return d;
}

/// R = Σ_{g,h} (δ_h g) ⊗ (δ_g e).
inline TensorElement drinfeld_double_r(const FiniteGroup& G, const FiniteDimHopf& D) {
  const std::size_t m = G.order(), N = m * m;
  SparseAccumulator acc(D.field(), N * N);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h) acc.add((h * m + g) * N + (g * m + G.identity()), Scalar::one(D.field()));
  return {D.algebra(), 2, std::move(acc).finish()};
}

/// Tries the conjugation convention first and falls back to the mirror one;
/// the shipped structure is the first that passes both axiom suites.
inline DrinfeldDouble drinfeld_double_group(const FiniteGroup& G, FieldSpec field) {
  if (G.order() > double_max_group_order)
    throw SizeCapError("Drinfeld double needs |G|^2 <= 64, got |G| = " + std::to_string(G.order()));
  std::vector<std::pair<DoubleConvention, VerificationReport>> attempts;
  for (DoubleConvention conv : {DoubleConvention::conjugation, DoubleConvention::mirror}) {
    auto [H, rep] = FiniteDimHopf::assemble_unchecked(drinfeld_double_data(G, field, conv));
    if (!H) {
      attempts.emplace_back(conv, std::move(rep));
      continue;
    }
    auto hopf = verify_hopf_axioms(*H);
    if (!hopf.passed) {
      attempts.emplace_back(conv, std::move(hopf));
      continue;
    }
    TensorElement R = drinfeld_double_r(G, *H);
    auto qt = is_quasitriangular(*H, R);
    const bool ok = qt.passed;
    attempts.emplace_back(conv, VerificationReport::combine("double-" + to_string(conv), {std::move(hopf), std::move(qt)}));
    if (ok) return {std::move(*H), std::move(R), conv, std::move(attempts)};
  }
  std::string why;
  for (const auto& [c, r] : attempts) why += " " + to_string(c) + ": " + (r.witness ? r.witness->location : r.check_name) + ";";
  throw ConventionError("no Drinfeld double convention validates:" + why);
}

}  // namespace hopfkit
