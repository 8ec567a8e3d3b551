#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hopfkit/algebra.hpp"
#include "hopfkit/multi_index.hpp"
#include "hopfkit/report.hpp"
#include "hopfkit/sparse.hpp"
#include "hopfkit/sparse_solve.hpp"

namespace hopfkit {

class SizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_inversion_cap = 65536;

/// Element of A^{⊗k}, stored as a sparse vector over n^k flat indices
/// (leftmost leg most significant). k = 0 elements are plain scalars.
class TensorElement {
 public:
  TensorElement(AlgebraPtr alg, std::size_t legs)
      : alg_(std::move(alg)), legs_(legs), v_(alg_->field(), ipow(alg_->dim(), legs)) {}
  TensorElement(AlgebraPtr alg, std::size_t legs, SparseVec coeffs)
      : alg_(std::move(alg)), legs_(legs), v_(std::move(coeffs)) {
    if (v_.dim() != ipow(alg_->dim(), legs_)) throw DimensionError("tensor coefficient vector has wrong dimension");
    if (v_.field() != alg_->field()) throw FieldError("tensor coefficients in the wrong field");
  }

  static TensorElement unit(AlgebraPtr alg, std::size_t legs) {
    std::vector<SparseVec> f(legs, alg->unit());
    return pure(std::move(alg), f);
  }
  static TensorElement scalar(AlgebraPtr alg, Scalar s) {
    const FieldSpec f = alg->field();
    return TensorElement(std::move(alg), 0, SparseVec::basis(f, 1, 0, std::move(s)));
  }
  /// b_{i_1} ⊗ ... ⊗ b_{i_k}.
  static TensorElement basis(AlgebraPtr alg, std::span<const std::size_t> idx) {
    const std::size_t n = alg->dim();
    for (std::size_t i : idx)
      if (i >= n) throw std::out_of_range("basis index out of range");
    const FieldSpec f = alg->field();
    const std::size_t k = idx.size();
    return TensorElement(std::move(alg), k, SparseVec::basis(f, ipow(n, k), join_uniform(idx, n)));
  }
  static TensorElement basis(AlgebraPtr alg, std::initializer_list<std::size_t> idx) {
    std::vector<std::size_t> v(idx);
    return basis(std::move(alg), std::span<const std::size_t>(v));
  }
  /// v_1 ⊗ ... ⊗ v_k for vectors in A.
  static TensorElement pure(AlgebraPtr alg, std::span<const SparseVec> factors) {
    const std::size_t n = alg->dim();
    std::vector<SparseVec::Entry> cur{{0, Scalar::one(alg->field())}};
    for (const auto& f : factors) {
      if (f.dim() != n) throw DimensionError("tensor factor has wrong dimension");
      std::vector<SparseVec::Entry> next;
      next.reserve(cur.size() * f.nnz());
      for (const auto& [a, x] : cur)
        for (const auto& [b, y] : f.entries()) next.emplace_back(a * n + b, x * y);
      cur = std::move(next);
    }
    const std::size_t k = factors.size();
    const FieldSpec fs = alg->field();
    return TensorElement(std::move(alg), k, SparseVec::from_sorted(fs, ipow(n, k), std::move(cur)));
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  std::size_t legs() const noexcept { return legs_; }
  const SparseVec& coeffs() const noexcept { return v_; }
  const FieldSpec& field() const noexcept { return alg_->field(); }
  std::size_t flat_dim() const noexcept { return v_.dim(); }
  bool is_zero() const noexcept { return v_.is_zero(); }

  Scalar coefficient(std::span<const std::size_t> idx) const { return v_.get(join_uniform(idx, alg_->dim())); }

  TensorElement operator-() const { return {alg_, legs_, -v_}; }
  friend TensorElement operator+(const TensorElement& a, const TensorElement& b) {
    a.check_compatible(b);
    return {a.alg_, a.legs_, a.v_ + b.v_};
  }
  friend TensorElement operator-(const TensorElement& a, const TensorElement& b) {
    a.check_compatible(b);
    return {a.alg_, a.legs_, a.v_ - b.v_};
  }
  friend TensorElement operator*(const Scalar& s, const TensorElement& x) { return {x.alg_, x.legs_, s * x.v_}; }

  /// Legwise product in A^{⊗k}.
  friend TensorElement operator*(const TensorElement& x, const TensorElement& y) {
    x.check_compatible(y);
    const Algebra& A = *x.alg_;
    const std::size_t n = A.dim(), k = x.legs_;
    SparseAccumulator acc(A.field(), x.v_.dim());
    std::vector<std::size_t> xi(k), yi(k);
    std::vector<SparseVec::Entry> cur, next;
    for (const auto& [fx, cx] : x.v_.entries()) {
      decompose(fx, n, xi);
      for (const auto& [fy, cy] : y.v_.entries()) {
        decompose(fy, n, yi);
        cur.clear();
        cur.emplace_back(0, cx * cy);
        for (std::size_t l = 0; l < k && !cur.empty(); ++l) {
          const SparseVec& p = A.product(xi[l], yi[l]);
          next.clear();
          for (const auto& [a, s] : cur)
            for (const auto& [b, t] : p.entries()) next.emplace_back(a * n + b, s * t);
          std::swap(cur, next);
        }
        for (auto& e : cur) acc.add(e.first, std::move(e.second));
      }
    }
    return {x.alg_, k, std::move(acc).finish()};
  }

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.legs_ == b.legs_ && a.v_ == b.v_ && same_algebra(*a.alg_, *b.alg_);
  }

  static bool same_algebra(const Algebra& a, const Algebra& b) { return &a == &b || a.same_structure(b); }

  std::string to_string() const {
    const std::size_t n = alg_->dim();
    return v_.to_string([&](std::size_t flat) { return render_index(flat, n); });
  }

  std::string render_index(std::size_t flat) const { return render_index(flat, alg_->dim()); }

  /// Labels of a basis tensor joined by ⊗, e.g. "1⊗x1⊗1".
  std::string render_index(std::size_t flat, std::size_t n) const {
    if (legs_ == 0) return "1";
    const auto idx = split_uniform(flat, n, legs_);
    std::string s;
    for (std::size_t l = 0; l < legs_; ++l) {
      if (l) s += "⊗";
      s += alg_->label(idx[l]);
    }
    return s;
  }

  void check_compatible(const TensorElement& o) const {
    if (legs_ != o.legs_) throw DimensionError("tensor leg count mismatch");
    if (!same_algebra(*alg_, *o.alg_)) throw DimensionError("tensor elements live over different algebras");
  }

  static void decompose(std::size_t flat, std::size_t n, std::vector<std::size_t>& out) {
    for (std::size_t j = out.size(); j-- > 0;) {
      out[j] = flat % n;
      flat /= n;
    }
  }

 private:
  AlgebraPtr alg_;
  std::size_t legs_;
  SparseVec v_;
};

inline TensorElement multiply_tensor(const TensorElement& x, const TensorElement& y) { return x * y; }

/// Places leg i of x at 1-based position target[i] of a k-leg tensor; empty
/// positions receive the unit. leg_embed(R, {2,1}, 2) is R21.
inline TensorElement leg_embed(const TensorElement& x, std::span<const std::size_t> target, std::size_t k) {
  if (target.size() != x.legs()) throw DimensionError("leg_embed: one target position per leg required");
  std::vector<int> owner(k, -1);
  for (std::size_t i = 0; i < target.size(); ++i) {
    if (target[i] < 1 || target[i] > k) throw std::out_of_range("leg_embed: position out of range");
    if (owner[target[i] - 1] != -1) throw std::invalid_argument("leg_embed: duplicate target position");
    owner[target[i] - 1] = static_cast<int>(i);
  }
  const Algebra& A = *x.algebra();
  const std::size_t n = A.dim();
  std::vector<std::size_t> xi(x.legs());
  SparseAccumulator acc(A.field(), ipow(n, k));
  std::vector<SparseVec::Entry> cur, next;
  for (const auto& [f, c] : x.coeffs().entries()) {
    TensorElement::decompose(f, n, xi);
    cur.assign(1, {0, c});
    for (std::size_t p = 0; p < k; ++p) {
      next.clear();
      if (owner[p] >= 0) {
        for (auto& [a, s] : cur) next.emplace_back(a * n + xi[owner[p]], s);
      } else {
        for (const auto& [a, s] : cur)
          for (const auto& [b, t] : A.unit().entries()) next.emplace_back(a * n + b, s * t);
      }
      std::swap(cur, next);
    }
    for (auto& e : cur) acc.add(e.first, std::move(e.second));
  }
  return {x.algebra(), k, std::move(acc).finish()};
}

inline TensorElement leg_embed(const TensorElement& x, std::initializer_list<std::size_t> target, std::size_t k) {
  std::vector<std::size_t> t(target);
  return leg_embed(x, std::span<const std::size_t>(t), k);
}

/// x21 for a 2-leg element.
inline TensorElement flip21(const TensorElement& x) { return leg_embed(x, {2, 1}, 2); }

/// Checks x·b_I = b_I·x for every basis multi-index I in lexicographic order.
inline VerificationReport is_central(const TensorElement& x) {
  return timed([&] {
    const std::size_t n = x.algebra()->dim(), k = x.legs();
    const std::size_t N = ipow(n, k);
    for (std::size_t f = 0; f < N; ++f) {
      const auto idx = split_uniform(f, n, k);
      const TensorElement b = TensorElement::basis(x.algebra(), std::span<const std::size_t>(idx));
      TensorElement l = x * b, r = b * x;
      if (l != r)
        return VerificationReport::fail("central", {"basis " + b.render_index(f), idx, l.to_string(), r.to_string()});
    }
    return VerificationReport::pass("central");
  });
}

/// Solves x·y = 1 through the left-multiplication matrix of x, then confirms y·x = 1.
inline std::optional<TensorElement> invert_tensor_element(const TensorElement& x,
                                                          std::size_t cap = default_inversion_cap) {
  if (x.legs() == 0) {
    const Scalar s = x.coeffs().get(0);
    if (s.is_zero()) return std::nullopt;
    return TensorElement::scalar(x.algebra(), s.inverse());
  }
  const std::size_t n = x.algebra()->dim(), k = x.legs(), N = ipow(n, k);
  if (N > cap)
    throw SizeCapError("tensor inversion needs a " + std::to_string(N) + "-dimensional system (cap " +
                       std::to_string(cap) + ")");
  std::vector<SparseVec> cols;
  cols.reserve(N);
  for (std::size_t f = 0; f < N; ++f) {
    const auto idx = split_uniform(f, n, k);
    cols.push_back((x * TensorElement::basis(x.algebra(), std::span<const std::size_t>(idx))).coeffs());
  }
  const TensorElement one = TensorElement::unit(x.algebra(), k);
  auto sol = solve_sparse_columns(x.field(), N, cols, {one.coeffs()});
  if (!sol) return std::nullopt;
  TensorElement y(x.algebra(), k, std::move((*sol)[0]));
  if (y * x != one) return std::nullopt;
  return y;
}

}  // namespace hopfkit
