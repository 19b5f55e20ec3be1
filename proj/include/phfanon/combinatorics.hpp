#pragma once

#include <cstdint>
#include <vector>

#include "phfanon/error.hpp"
#include "phfanon/rational.hpp"

namespace phfanon {

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

// Binomial that must fit in 64 bits (simulator rank arithmetic).
inline std::uint64_t binomial_u64(int n, int k) {
  const BigInt value = binomial(n, k);
  if (value > BigInt(UINT64_MAX)) {
    throw Error(ErrorCode::CapExceeded,
                "binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                    ") does not fit in 64 bits");
  }
  return value.convert_to<std::uint64_t>();
}

// First k-subset of {1, .., n} in lexicographic order: {1, 2, .., k}.
inline std::vector<int> first_combination(int k) {
  std::vector<int> subset(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i + 1;
  return subset;
}

// Advances a sorted k-subset of {1, .., n} to its lexicographic successor.
// Returns false when the input was the last subset.
inline bool next_combination(std::vector<int>& subset, int n) {
  const int k = static_cast<int>(subset.size());
  for (int i = k - 1; i >= 0; --i) {
    if (subset[static_cast<std::size_t>(i)] < n - (k - 1 - i)) {
      ++subset[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        subset[static_cast<std::size_t>(j)] =
            subset[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

// Visits every k-subset of {1, .., n} in lexicographic order.
template <typename Visit>
void for_each_combination(int n, int k, Visit visit) {
  if (k < 0 || k > n) return;
  if (k == 0) return;
  std::vector<int> subset = first_combination(k);
  do {
    visit(const_cast<const std::vector<int>&>(subset));
  } while (next_combination(subset, n));
}

// Unranks `rank` in 0 .. C(n,k)-1 to the k-subset of {1, .., n} at that
// position in lexicographic order (combinatorial number system).
inline std::vector<int> unrank_combination(std::uint64_t rank, int n, int k) {
  if (k < 0 || k > n || rank >= binomial_u64(n, k)) {
    throw Error(ErrorCode::Contract, "rank outside 0 .. C(n,k)-1");
  }
  std::vector<int> subset;
  subset.reserve(static_cast<std::size_t>(k));
  int value = 1;
  for (int slots = k; slots > 0; --slots) {
    // Count subsets starting with `value`; skip whole blocks until the rank
    // falls inside one.
    while (true) {
      const std::uint64_t block = binomial_u64(n - value, slots - 1);
      if (rank < block) break;
      rank -= block;
      ++value;
    }
    subset.push_back(value);
    ++value;
  }
  return subset;
}

inline std::uint64_t rank_combination(const std::vector<int>& subset, int n) {
  const int k = static_cast<int>(subset.size());
  std::uint64_t rank = 0;
  int previous = 0;
  for (int i = 0; i < k; ++i) {
    for (int value = previous + 1; value < subset[static_cast<std::size_t>(i)];
         ++value) {
      rank += binomial_u64(n - value, k - 1 - i);
    }
    previous = subset[static_cast<std::size_t>(i)];
  }
  return rank;
}

}  // namespace phfanon
