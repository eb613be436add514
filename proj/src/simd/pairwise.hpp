#pragma once

#include <cstddef>

namespace skl::simd::detail {

inline constexpr std::size_t kPairwiseBlock = 64;

/// Pairwise (tree) reduction over [0, n): blocks of kPairwiseBlock are summed
/// by `leaf(begin, len)`, and block sums are combined by halving. The split
/// points depend only on n, so every backend sums the same blocks in the same
/// tree order.
template <class Leaf>
double pairwise_reduce(std::size_t begin, std::size_t n, const Leaf& leaf) {
  if (n <= kPairwiseBlock) return leaf(begin, n);
  std::size_t blocks = (n + kPairwiseBlock - 1) / kPairwiseBlock;
  std::size_t left = (blocks / 2) * kPairwiseBlock;
  return pairwise_reduce(begin, left, leaf) + pairwise_reduce(begin + left, n - left, leaf);
}

}  // namespace skl::simd::detail
