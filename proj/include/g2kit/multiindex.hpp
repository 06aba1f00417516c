#pragma once

// Strictly increasing multi-indices in lexicographic order, represented as
// bitmasks over at most 7 axes. All antisymmetry bookkeeping (wedge signs,
// interior-product signs, Levi-Civita symbols) is derived from permutation
// parity against this single ordering.

#include <array>
#include <cstdint>
#include <vector>

#include "g2kit/errors.hpp"

namespace g2kit {

inline constexpr int kMaxDim = 7;

constexpr int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<int>(r);
}

// Largest number of components of any k-form in dimension <= 7.
inline constexpr int kMaxComps = 35;  // binomial(7,3)

// Index tables for one (dim, degree) pair.
struct IndexTable {
  int dim = 0, degree = 0;
  std::vector<std::uint8_t> masks;        // rank -> bitmask, lexicographic
  std::array<int, 128> rank_of_mask{};    // bitmask -> rank (-1 if invalid)

  IndexTable() { rank_of_mask.fill(-1); }
};

namespace detail {

inline IndexTable build_table(int n, int k) {
  IndexTable t;
  t.dim = n;
  t.degree = k;
  // enumerate increasing k-tuples in lexicographic order
  std::array<int, kMaxDim> idx{};
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int count = binomial(n, k);
  for (int r = 0; r < count; ++r) {
    std::uint8_t m = 0;
    for (int i = 0; i < k; ++i) m |= std::uint8_t(1u << idx[i]);
    t.rank_of_mask[m] = static_cast<int>(t.masks.size());
    t.masks.push_back(m);
    // advance
    int pos = k - 1;
    while (pos >= 0 && idx[pos] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
  return t;
}

}  // namespace detail

inline const IndexTable& index_table(int n, int k) {
  static const auto tables = [] {
    std::array<std::array<IndexTable, kMaxDim + 1>, kMaxDim + 1> all;
    for (int n = 0; n <= kMaxDim; ++n)
      for (int k = 0; k <= n; ++k) all[n][k] = detail::build_table(n, k);
    return all;
  }();
  if (n < 0 || n > kMaxDim || k < 0 || k > n)
    throw DimensionMismatch("index_table: bad (dim, degree)");
  return tables[n][k];
}

inline int popcount8(std::uint8_t m) { return __builtin_popcount(m); }

// Sign of sorting the concatenation I++J of two disjoint increasing tuples;
// 0 if they overlap.
inline int merge_sign(std::uint8_t mi, std::uint8_t mj) {
  if (mi & mj) return 0;
  int inv = 0;
  std::uint8_t j = mj;
  while (j) {
    const int b = __builtin_ctz(j);
    inv += popcount8(std::uint8_t(mi >> (b + 1)));
    j &= std::uint8_t(j - 1);
  }
  return (inv & 1) ? -1 : 1;
}

// Sign (-1)^pos of removing axis b from mask m (b must be set in m),
// pos = number of set bits below b.
inline int removal_sign(std::uint8_t m, int b) {
  const int below = popcount8(std::uint8_t(m & ((1u << b) - 1u)));
  return (below & 1) ? -1 : 1;
}

// Levi-Civita symbol on three indices, eps(0,1,2) = +1. Raising or lowering
// with the Kronecker metric leaves the values unchanged, so one table serves
// every index placement.
inline int eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  // parity of the permutation (i,j,k) of (0,1,2)
  return ((j - i + 3) % 3 == 1) ? 1 : -1;
}

}  // namespace g2kit
