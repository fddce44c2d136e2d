#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stegpat/error.hpp"

namespace stegpat {

/// Largest n whose factorial fits in 64 bits.
inline constexpr std::size_t kMaxPermutationSize = 20;

inline std::uint64_t factorial(std::size_t n) {
  if (n > kMaxPermutationSize) throw Error(Errc::InvalidParams, "factorial overflows 64 bits");
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

/// floor(log2(n!)): the number of whole bits a permutation of n items carries.
inline unsigned permutation_capacity_bits(std::size_t n) {
  return static_cast<unsigned>(std::bit_width(factorial(n)) - 1);
}

/// Lexicographic unranking: rank 0 is the identity, rank n!-1 the reversal.
inline std::vector<std::size_t> unrank_permutation(std::uint64_t rank, std::size_t n) {
  if (rank >= factorial(n)) throw Error(Errc::InvalidParams, "rank out of range");
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  std::vector<std::size_t> perm;
  perm.reserve(n);
  for (std::size_t i = n; i > 0; --i) {
    const std::uint64_t block = factorial(i - 1);
    const auto digit = static_cast<std::size_t>(rank / block);
    rank %= block;
    perm.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return perm;
}

/// Inverse of unrank_permutation. `perm` must be a permutation of 0..n-1.
inline std::uint64_t rank_permutation(std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller_later = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller_later += perm[j] < perm[i] ? 1 : 0;
    rank += smaller_later * factorial(n - 1 - i);
  }
  return rank;
}

}  // namespace stegpat
