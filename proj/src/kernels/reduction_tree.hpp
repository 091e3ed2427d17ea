#pragma once

// Canonical reduction order shared by all kernel variants.
//
// A range longer than kLeafSize is split at n/2 (rounded down to a multiple of
// four) and the two halves are added. A leaf accumulates four interleaved
// partial sums (lane j takes elements j, j+4, ...), combines them as
// (s0 + s1) + (s2 + s3), then adds the tail elements in order. This is exactly
// what one 4-wide vector accumulator does, so SIMD leaves reproduce the scalar
// result bit for bit.

#include <cstddef>

namespace infometric::kernels::detail {

inline constexpr std::size_t kLeafSize = 64;

template <class Leaf>
double reduce_tree(std::size_t begin, std::size_t end, const Leaf& leaf) {
  const std::size_t n = end - begin;
  if (n <= kLeafSize) return leaf(begin, end);
  std::size_t half = (n / 2) & ~std::size_t{3};
  return reduce_tree(begin, begin + half, leaf) + reduce_tree(begin + half, end, leaf);
}

}  // namespace infometric::kernels::detail
