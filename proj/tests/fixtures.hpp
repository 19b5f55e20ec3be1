#pragma once

// Shared test fixtures: the PHF arrays and the general setup used across the
// suites, named by their parameters, plus deterministic derived fixtures.

#include <vector>

#include "phfanon/general_scheme.hpp"
#include "phfanon/phf.hpp"
#include "phfanon/simulator.hpp"

namespace fixtures {

using phfanon::GeneralSetup;
using phfanon::PhfArray;

// BPHF(3; 6, 2, 2)
inline PhfArray bphf_3_6_2_2() {
  return PhfArray(3, 6, 2, 2,
                  {1, 1, 1, 2, 2, 2,
                   1, 1, 2, 1, 2, 2,
                   1, 2, 2, 1, 1, 2});
}

// BPHF(3; 18, 6, 3)
inline PhfArray bphf_3_18_6_3() {
  return PhfArray(3, 18, 6, 3,
                  {1, 6, 3, 2, 6, 2, 1, 5, 2, 5, 1, 4, 5, 6, 3, 3, 4, 4,
                   1, 6, 5, 1, 5, 4, 2, 4, 3, 1, 6, 2, 2, 3, 6, 4, 3, 5,
                   5, 2, 6, 2, 3, 3, 3, 4, 6, 1, 4, 2, 6, 5, 1, 5, 1, 4});
}

// BPHF(4; 9, 3, 3)
inline PhfArray bphf_4_9_3_3() {
  return PhfArray(4, 9, 3, 3,
                  {1, 3, 2, 2, 3, 2, 3, 1, 1,
                   1, 3, 1, 3, 1, 2, 2, 2, 3,
                   1, 2, 2, 1, 3, 3, 1, 2, 3,
                   3, 3, 2, 1, 1, 3, 2, 1, 2});
}

// PHF(3; 12, 5, 3), unbalanced: per-row occupancy is a permutation of
// (2, 2, 2, 3, 3).
inline PhfArray phf_3_12_5_3() {
  return PhfArray(3, 12, 5, 3,
                  {2, 4, 4, 4, 5, 1, 5, 2, 3, 3, 3, 1,
                   3, 1, 5, 4, 5, 1, 2, 5, 2, 4, 3, 3,
                   1, 4, 5, 1, 3, 2, 1, 2, 4, 2, 3, 5});
}

// First eight columns of a PHF(4; 9, 2, 2) whose ninth column is to be
// reconstructed by brute force (see the acceptance suite).
inline std::vector<std::vector<int>> phf_4_9_2_2_known_columns() {
  return {{1, 1, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 2}, {1, 2, 2, 2},
          {2, 1, 1, 2}, {2, 1, 1, 1}, {2, 2, 1, 1}, {2, 2, 2, 1}};
}

inline PhfArray phf_from_columns(const std::vector<std::vector<int>>& columns,
                                 int symbols, int threshold) {
  const int l = static_cast<int>(columns.front().size());
  const int n = static_cast<int>(columns.size());
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(l) * static_cast<std::size_t>(n));
  for (int r = 0; r < l; ++r) {
    for (int c = 0; c < n; ++c) {
      cells.push_back(columns[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
    }
  }
  return PhfArray(l, n, symbols, threshold, std::move(cells));
}

// (3, 7) threshold structure from the Fano-plane block design: participant c
// holds the components of block c, and key K_i is the complement of {i}.
inline GeneralSetup bibd_7_3_setup() {
  std::vector<std::vector<int>> holdings = {{1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                                            {4, 5, 7}, {5, 6, 1}, {6, 7, 2},
                                            {7, 1, 3}};
  std::vector<std::vector<int>> keys;
  for (int i = 1; i <= 7; ++i) {
    std::vector<int> key;
    for (int component = 1; component <= 7; ++component) {
      if (component != i) key.push_back(component);
    }
    keys.push_back(std::move(key));
  }
  return GeneralSetup(7, 7, 3, std::move(holdings), std::move(keys));
}

// The 27 triplets of the recovery set of K(1x123) in bphf_3_18_6_3 with
// their key counts s_A.
struct TripletS {
  int c, d, e;
  int s;
};

inline std::vector<TripletS> bphf_3_18_6_3_s_table() {
  return {{1, 4, 3, 2},   {1, 4, 15, 2},  {1, 4, 16, 1},  {1, 6, 3, 3},
          {1, 6, 15, 3},  {1, 6, 16, 1},  {1, 9, 3, 2},   {1, 9, 15, 3},
          {1, 9, 16, 2},  {7, 4, 3, 3},   {7, 4, 15, 3},  {7, 4, 16, 3},
          {7, 6, 3, 2},   {7, 6, 15, 2},  {7, 6, 16, 1},  {7, 9, 3, 2},
          {7, 9, 15, 3},  {7, 9, 16, 3},  {11, 4, 3, 3},  {11, 4, 15, 2},
          {11, 4, 16, 3}, {11, 6, 3, 3},  {11, 6, 15, 2}, {11, 6, 16, 2},
          {11, 9, 3, 2},  {11, 9, 15, 2}, {11, 9, 16, 3}};
}

// --------------------------------------------------------------------------
// Deterministic randomized fixtures: PHF-preserving transforms (row-wise
// symbol relabeling, column permutation, column deletion) of the arrays
// above, plus direct random searches for t = 2, where the hash-family
// property is exactly "all columns distinct".

inline PhfArray permute_symbols(const PhfArray& array, phfanon::SplitMix64& rng) {
  const int m = array.symbol_count();
  std::vector<int> cells;
  for (int r = 1; r <= array.rows(); ++r) {
    std::vector<int> relabel(static_cast<std::size_t>(m) + 1);
    for (int j = 1; j <= m; ++j) relabel[static_cast<std::size_t>(j)] = j;
    for (int j = m; j > 1; --j) {
      const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(j))) + 1;
      std::swap(relabel[static_cast<std::size_t>(j)], relabel[static_cast<std::size_t>(k)]);
    }
    for (int c = 1; c <= array.cols(); ++c) {
      cells.push_back(relabel[static_cast<std::size_t>(array.at(r, c))]);
    }
  }
  return PhfArray(array.rows(), array.cols(), m, array.threshold(), std::move(cells));
}

inline PhfArray shuffle_and_trim_columns(const PhfArray& array, int keep,
                                         phfanon::SplitMix64& rng) {
  std::vector<int> order(static_cast<std::size_t>(array.cols()));
  for (int c = 0; c < array.cols(); ++c) order[static_cast<std::size_t>(c)] = c + 1;
  for (int c = array.cols(); c > 1; --c) {
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(c)));
    std::swap(order[static_cast<std::size_t>(c - 1)], order[static_cast<std::size_t>(k)]);
  }
  order.resize(static_cast<std::size_t>(keep));
  std::vector<int> cells;
  for (int r = 1; r <= array.rows(); ++r) {
    for (const int c : order) cells.push_back(array.at(r, c));
  }
  return PhfArray(array.rows(), keep, array.symbol_count(), array.threshold(),
                  std::move(cells));
}

// Random arrays with distinct columns and no unused symbol; every such array
// is a PHF for t = 2.
inline std::vector<PhfArray> random_t2_phfs(phfanon::SplitMix64& rng, int count) {
  std::vector<PhfArray> result;
  while (static_cast<int>(result.size()) < count) {
    const int l = 2 + static_cast<int>(rng.below(3));
    const int m = 2 + static_cast<int>(rng.below(2));
    const int n = 4 + static_cast<int>(rng.below(7));  // 4..10
    std::vector<int> cells(static_cast<std::size_t>(l) * static_cast<std::size_t>(n));
    for (auto& cell : cells) {
      cell = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    }
    PhfArray candidate(l, n, m, 2, std::move(cells));
    bool distinct = true;
    for (int c = 1; c <= n && distinct; ++c) {
      for (int d = c + 1; d <= n && distinct; ++d) {
        bool differ = false;
        for (int r = 1; r <= l; ++r) {
          if (candidate.at(r, c) != candidate.at(r, d)) differ = true;
        }
        distinct = differ;
      }
    }
    if (distinct && !phfanon::has_empty_component(candidate)) {
      result.push_back(std::move(candidate));
    }
  }
  return result;
}

// The full deterministic property-test corpus: the fixed fixtures plus
// seeded transforms with n <= 10.
inline std::vector<PhfArray> property_corpus() {
  phfanon::SplitMix64 rng(20250809);
  std::vector<PhfArray> corpus;
  corpus.push_back(bphf_3_6_2_2());
  corpus.push_back(bphf_4_9_3_3());
  corpus.push_back(phf_3_12_5_3());

  for (int i = 0; i < 3; ++i) corpus.push_back(permute_symbols(bphf_3_6_2_2(), rng));
  for (int i = 0; i < 3; ++i) corpus.push_back(permute_symbols(bphf_4_9_3_3(), rng));
  for (int i = 0; i < 8; ++i) {
    const int keep = 10 - static_cast<int>(rng.below(2));  // 9 or 10
    PhfArray candidate = shuffle_and_trim_columns(
        permute_symbols(phf_3_12_5_3(), rng), keep, rng);
    // Trimming can orphan a symbol; keep only still-degenerate-free arrays.
    if (!phfanon::has_empty_component(candidate)) corpus.push_back(std::move(candidate));
  }
  for (PhfArray& array : random_t2_phfs(rng, 5)) corpus.push_back(std::move(array));
  return corpus;
}

}  // namespace fixtures
