#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "phfanon/combinatorics.hpp"
#include "phfanon/error.hpp"

namespace phfanon {

using RowIndex = int;          // 1 .. l
using Symbol = int;            // 1 .. m
using ParticipantIndex = int;  // 1 .. n

constexpr std::uint64_t kDefaultGroupCap = 10'000'000;

// A sorted t-subset of participant indices.
class Group {
 public:
  Group() = default;

  explicit Group(std::vector<ParticipantIndex> members)
      : members_(std::move(members)) {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] < 1 || (i > 0 && members_[i] <= members_[i - 1])) {
        throw Error(ErrorCode::Contract,
                    "group members must be strictly increasing and >= 1");
      }
    }
  }

  // Builds a group from members in any order.
  static Group of(std::vector<ParticipantIndex> members) {
    std::sort(members.begin(), members.end());
    return Group(std::move(members));
  }

  const std::vector<ParticipantIndex>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool contains(ParticipantIndex c) const {
    return std::binary_search(members_.begin(), members_.end(), c);
  }

  auto operator<=>(const Group&) const = default;

  std::string to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i > 0) out << ',';
      out << members_[i];
    }
    out << '}';
    return out.str();
  }

 private:
  std::vector<ParticipantIndex> members_;
};

// Names the key K(r x J): row r paired with a sorted t-tuple of symbols.
class KeyId {
 public:
  KeyId() : row_(0) {}

  KeyId(RowIndex row, std::vector<Symbol> tuple)
      : row_(row), tuple_(std::move(tuple)) {
    if (row_ < 1) throw Error(ErrorCode::Contract, "key row must be >= 1");
    for (std::size_t i = 0; i < tuple_.size(); ++i) {
      if (tuple_[i] < 1 || (i > 0 && tuple_[i] <= tuple_[i - 1])) {
        throw Error(ErrorCode::Contract,
                    "key tuple must be strictly increasing and >= 1");
      }
    }
  }

  RowIndex row() const { return row_; }
  const std::vector<Symbol>& tuple() const { return tuple_; }

  // Row-major, then tuple: the fixed report order.
  auto operator<=>(const KeyId&) const = default;

  std::string to_string() const {
    const bool compact =
        std::all_of(tuple_.begin(), tuple_.end(), [](Symbol j) { return j <= 9; });
    std::ostringstream out;
    out << "K(" << row_ << 'x';
    for (std::size_t i = 0; i < tuple_.size(); ++i) {
      if (i > 0 && !compact) out << ',';
      out << tuple_[i];
    }
    out << ')';
    return out.str();
  }

 private:
  RowIndex row_;
  std::vector<Symbol> tuple_;
};

// F(r, j): the participants holding key component (r, j), plus its size f.
struct ComponentSet {
  RowIndex row = 0;
  Symbol symbol = 0;
  std::vector<ParticipantIndex> indices;

  int f() const { return static_cast<int>(indices.size()); }
};

struct ValidationReport {
  bool is_phf = false;
  std::optional<Group> witness;  // lexicographically smallest failing group
};

// The l x n symbol array that defines the access structure, together with
// the declared symbol count m and threshold t. Construction checks shape and
// cell range; the hash-family property itself is checked by validate_phf.
class PhfArray {
 public:
  PhfArray(int rows, int cols, int symbols, int threshold,
           std::vector<Symbol> cells)
      : rows_(rows),
        cols_(cols),
        symbols_(symbols),
        threshold_(threshold),
        cells_(std::move(cells)) {
    if (rows_ < 1) throw Error(ErrorCode::Structure, "need at least one row");
    if (threshold_ < 2) {
      throw Error(ErrorCode::Structure, "threshold t must be at least 2");
    }
    if (symbols_ < threshold_) {
      throw Error(ErrorCode::Structure,
                  "symbol count m must be at least the threshold t");
    }
    if (cols_ < threshold_) {
      throw Error(ErrorCode::Structure,
                  "participant count n must be at least the threshold t");
    }
    if (cells_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
      throw Error(ErrorCode::Structure, "cell count does not match l x n");
    }
    for (const Symbol value : cells_) {
      if (value < 1 || value > symbols_) {
        throw Error(ErrorCode::Structure,
                    "cell value " + std::to_string(value) + " outside 1.." +
                        std::to_string(symbols_));
      }
    }
  }

  int rows() const { return rows_; }             // l
  int cols() const { return cols_; }             // n
  int symbol_count() const { return symbols_; }  // m
  int threshold() const { return threshold_; }   // t

  Symbol at(RowIndex r, ParticipantIndex c) const {
    return cells_[static_cast<std::size_t>(r - 1) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(c - 1)];
  }

  bool operator==(const PhfArray&) const = default;

 private:
  int rows_;
  int cols_;
  int symbols_;
  int threshold_;
  std::vector<Symbol> cells_;  // row-major
};

inline void require_valid_group(const PhfArray& array, const Group& group) {
  if (group.size() != array.threshold()) {
    throw Error(ErrorCode::Contract, "group size must equal the threshold t");
  }
  if (!group.members().empty() && group.members().back() > array.cols()) {
    throw Error(ErrorCode::Contract, "group member outside 1..n");
  }
}

inline void require_valid_key(const PhfArray& array, const KeyId& key) {
  if (key.row() < 1 || key.row() > array.rows()) {
    throw Error(ErrorCode::Contract, "key row outside 1..l");
  }
  if (static_cast<int>(key.tuple().size()) != array.threshold()) {
    throw Error(ErrorCode::Contract, "key tuple size must equal the threshold t");
  }
  if (key.tuple().back() > array.symbol_count()) {
    throw Error(ErrorCode::Contract, "key symbol outside 1..m");
  }
}

// F(r, j) = {c : b_rc = j}. Throws on f(r, j) = 0: the analysis assumes
// every component is held by at least one participant.
inline ComponentSet component_set(const PhfArray& array, RowIndex r, Symbol j) {
  if (r < 1 || r > array.rows()) {
    throw Error(ErrorCode::Contract, "row outside 1..l");
  }
  if (j < 1 || j > array.symbol_count()) {
    throw Error(ErrorCode::Contract, "symbol outside 1..m");
  }
  ComponentSet set;
  set.row = r;
  set.symbol = j;
  for (ParticipantIndex c = 1; c <= array.cols(); ++c) {
    if (array.at(r, c) == j) set.indices.push_back(c);
  }
  if (set.indices.empty()) {
    throw Error(ErrorCode::Degenerate,
                "component (" + std::to_string(r) + ", " + std::to_string(j) +
                    ") is held by no participant");
  }
  return set;
}

// True when some component (r, j) has no holder. Such arrays are rejected
// at load time; the closed forms divide by min f(r, j).
inline bool has_empty_component(const PhfArray& array) {
  for (RowIndex r = 1; r <= array.rows(); ++r) {
    std::vector<bool> seen(static_cast<std::size_t>(array.symbol_count()) + 1, false);
    for (ParticipantIndex c = 1; c <= array.cols(); ++c) {
      seen[static_cast<std::size_t>(array.at(r, c))] = true;
    }
    for (Symbol j = 1; j <= array.symbol_count(); ++j) {
      if (!seen[static_cast<std::size_t>(j)]) return true;
    }
  }
  return false;
}

// One KeyId per row of the subarray B(A) that holds t pairwise distinct
// symbols; ordered by row.
inline std::vector<KeyId> separating_rows(const PhfArray& array,
                                          const Group& group) {
  require_valid_group(array, group);
  const int t = array.threshold();
  std::vector<KeyId> keys;
  std::vector<Symbol> symbols(static_cast<std::size_t>(t));
  for (RowIndex r = 1; r <= array.rows(); ++r) {
    for (int i = 0; i < t; ++i) {
      symbols[static_cast<std::size_t>(i)] =
          array.at(r, group.members()[static_cast<std::size_t>(i)]);
    }
    std::vector<Symbol> sorted = symbols;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      keys.emplace_back(r, std::move(sorted));
    }
  }
  return keys;
}

// Checks the defining property: every l x t subarray has a row with t
// distinct symbols. Enumerates all C(n, t) column subsets, so a cap guards
// against oversized inputs.
inline ValidationReport validate_phf(const PhfArray& array, int t,
                                     std::uint64_t max_groups = kDefaultGroupCap) {
  if (t < 2 || t > array.symbol_count()) {
    throw Error(ErrorCode::Contract, "need 2 <= t <= m");
  }
  if (t > array.cols()) {
    throw Error(ErrorCode::Contract, "need t <= n");
  }
  if (binomial(array.cols(), t) > BigInt(max_groups)) {
    throw Error(ErrorCode::CapExceeded,
                "C(n, t) exceeds the group cap of " + std::to_string(max_groups));
  }

  ValidationReport report;
  report.is_phf = true;
  std::vector<int> columns = first_combination(t);
  std::vector<Symbol> sorted(static_cast<std::size_t>(t));
  do {
    bool separated = false;
    for (RowIndex r = 1; r <= array.rows() && !separated; ++r) {
      for (int i = 0; i < t; ++i) {
        sorted[static_cast<std::size_t>(i)] =
            array.at(r, columns[static_cast<std::size_t>(i)]);
      }
      std::sort(sorted.begin(), sorted.end());
      separated =
          std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    }
    if (!separated) {
      // Lexicographic enumeration makes the first failure the smallest one.
      report.is_phf = false;
      report.witness = Group(columns);
      return report;
    }
  } while (next_combination(columns, array.cols()));
  return report;
}

inline ValidationReport validate_phf(const PhfArray& array,
                                     std::uint64_t max_groups = kDefaultGroupCap) {
  return validate_phf(array, array.threshold(), max_groups);
}

// True iff every symbol occurs exactly n/m times in each row.
inline bool is_balanced(const PhfArray& array) {
  if (array.cols() % array.symbol_count() != 0) return false;
  const int expected = array.cols() / array.symbol_count();
  for (RowIndex r = 1; r <= array.rows(); ++r) {
    std::vector<int> counts(static_cast<std::size_t>(array.symbol_count()) + 1, 0);
    for (ParticipantIndex c = 1; c <= array.cols(); ++c) {
      ++counts[static_cast<std::size_t>(array.at(r, c))];
    }
    for (Symbol j = 1; j <= array.symbol_count(); ++j) {
      if (counts[static_cast<std::size_t>(j)] != expected) return false;
    }
  }
  return true;
}

}  // namespace phfanon
