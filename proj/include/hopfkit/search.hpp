#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfkit/dense.hpp"
#include "hopfkit/qt.hpp"

namespace hopfkit {

class SearchSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t search_qt_cap = 10'000'000;
inline constexpr std::size_t search_qt_max_dim = 4;
inline constexpr std::uint32_t search_qt_max_p = 13;

/// Every quasitriangular structure on a small commutative H over GF(p),
/// sorted by coefficient vector. The counit conditions are linear and are
/// solved first; the remaining axioms are tested on each point of the
/// resulting affine space.
inline std::vector<TensorElement> search_qt(const FiniteDimHopf& H) {
  const FieldSpec F = H.field();
  if (!F.is_prime_field() || F.modulus() > search_qt_max_p)
    throw FieldError("search_qt needs GF(p) with p ≤ " + std::to_string(search_qt_max_p));
  if (H.dim() > search_qt_max_dim) throw DimensionError("search_qt needs dim ≤ " + std::to_string(search_qt_max_dim));
  if (!check_commutative(H).passed) throw std::invalid_argument("search_qt needs a commutative Hopf algebra");

  const std::size_t n = H.dim(), N = n * n;
  DenseMatrix M(F, 2 * n, N);
  std::vector<Scalar> rhs(2 * n, Scalar::zero(F));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      M.at(j, i * n + j) = H.counit(i);      // (ε⊗id)R = 1, row j
      M.at(n + i, i * n + j) = H.counit(j);  // (id⊗ε)R = 1, row n+i
    }
  for (std::size_t i = 0; i < n; ++i) rhs[i] = rhs[n + i] = H.unit().get(i);
  const auto base = solve_linear(M, SparseVec::from_dense(F, rhs));
  if (!base) return {};
  const std::vector<SparseVec> dirs = nullspace(M);

  std::uint64_t space = 1;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    space *= F.modulus();
    if (space > search_qt_cap)
      throw SearchSpaceError("search space " + std::to_string(F.modulus()) + "^" + std::to_string(dirs.size()) +
                             " exceeds " + std::to_string(search_qt_cap));
  }

  std::vector<TensorElement> found;
  std::vector<std::uint32_t> t(dirs.size(), 0);
  for (std::uint64_t step = 0; step < space; ++step) {
    SparseVec v = *base;
    for (std::size_t k = 0; k < dirs.size(); ++k)
      if (t[k]) v = SparseVec::axpy(v, Scalar(F, t[k]), dirs[k]);
    TensorElement R(H.algebra(), 2, std::move(v));
    if (is_quasitriangular(H, R).passed) found.push_back(std::move(R));
    for (std::size_t k = dirs.size(); k-- > 0;) {
      if (++t[k] < F.modulus()) break;
      t[k] = 0;
    }
  }
  auto key = [](const TensorElement& x) {
    std::vector<std::uint32_t> out;
    for (const auto& c : x.coeffs().to_dense()) out.push_back(c.residue());
    return out;
  };
  std::sort(found.begin(), found.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return found;
}

}  // namespace hopfkit
