#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hopfkit {

/// A basis tensor address: one (index, leg dimension) pair per leg.
struct MultiIndex {
  std::vector<std::pair<std::size_t, std::size_t>> legs;

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(legs.size());
    for (const auto& l : legs) out.push_back(l.first);
    return out;
  }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Mixed radix, leftmost leg most significant.
inline std::size_t encode_multi_index(std::span<const std::pair<std::size_t, std::size_t>> legs) {
  std::size_t flat = 0;
  for (const auto& [i, d] : legs) {
    if (i >= d) throw std::out_of_range("leg index " + std::to_string(i) + " >= leg dimension " + std::to_string(d));
    flat = flat * d + i;
  }
  return flat;
}

inline std::size_t encode_multi_index(const MultiIndex& m) { return encode_multi_index(m.legs); }

inline std::size_t shape_size(std::span<const std::size_t> shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

inline MultiIndex decode_flat(std::size_t flat, std::span<const std::size_t> shape) {
  if (flat >= shape_size(shape))
    throw std::out_of_range("flat index " + std::to_string(flat) + " outside shape");
  MultiIndex m;
  m.legs.resize(shape.size());
  for (std::size_t k = shape.size(); k-- > 0;) {
    m.legs[k] = {flat % shape[k], shape[k]};
    flat /= shape[k];
  }
  return m;
}

/// Uniform-radix helpers used by tensor powers H^{⊗k}.
inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

inline std::vector<std::size_t> split_uniform(std::size_t flat, std::size_t n, std::size_t k) {
  std::vector<std::size_t> out(k);
  for (std::size_t j = k; j-- > 0;) {
    out[j] = flat % n;
    flat /= n;
  }
  return out;
}

inline std::size_t join_uniform(std::span<const std::size_t> idx, std::size_t n) {
  std::size_t flat = 0;
  for (std::size_t i : idx) flat = flat * n + i;
  return flat;
}

}  // namespace hopfkit
