#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "phfanon/combinatorics.hpp"
#include "phfanon/error.hpp"
#include "phfanon/phf.hpp"
#include "phfanon/rational.hpp"

namespace phfanon {

struct KeyComponent {
  RowIndex row = 0;
  Symbol symbol = 0;

  auto operator<=>(const KeyComponent&) const = default;
};

// Participant c holds the l components (r, b_rc), one per row.
class Assignment {
 public:
  explicit Assignment(std::vector<std::vector<KeyComponent>> per_participant)
      : per_participant_(std::move(per_participant)) {}

  const std::vector<KeyComponent>& components_of(ParticipantIndex c) const {
    return per_participant_[static_cast<std::size_t>(c - 1)];
  }
  int participant_count() const {
    return static_cast<int>(per_participant_.size());
  }

 private:
  std::vector<std::vector<KeyComponent>> per_participant_;
};

inline Assignment derive_assignment(const PhfArray& array) {
  std::vector<std::vector<KeyComponent>> holdings(
      static_cast<std::size_t>(array.cols()));
  for (ParticipantIndex c = 1; c <= array.cols(); ++c) {
    auto& list = holdings[static_cast<std::size_t>(c - 1)];
    list.reserve(static_cast<std::size_t>(array.rows()));
    for (RowIndex r = 1; r <= array.rows(); ++r) {
      list.push_back(KeyComponent{r, array.at(r, c)});
    }
  }
  return Assignment(std::move(holdings));
}

// Q(r x J): the groups able to recover a key, with q = |Q|.
struct RecoverySet {
  KeyId key;
  std::vector<Group> groups;  // sorted lexicographically

  std::uint64_t q() const { return groups.size(); }
};

// The keys a group can recover; identical to separating_rows, re-exported
// at access-structure level. s_A is the length of the result.
inline std::vector<KeyId> recoverable_keys(const PhfArray& array,
                                           const Group& group) {
  return separating_rows(array, group);
}

// q(r x J) = prod_i f(r, j_i), without materializing the groups.
inline BigInt q_product(const PhfArray& array, const KeyId& key) {
  require_valid_key(array, key);
  BigInt product = 1;
  for (const Symbol j : key.tuple()) {
    product *= component_set(array, key.row(), j).f();
  }
  return product;
}

// Materializes Q(r x J) from its Cartesian-product structure: one member
// from each F(r, j_i). The component sets are disjoint within a row, so no
// deduplication is ever needed.
inline RecoverySet recovery_set(const PhfArray& array, const KeyId& key,
                                std::uint64_t max_groups = kDefaultGroupCap) {
  require_valid_key(array, key);
  if (q_product(array, key) > BigInt(max_groups)) {
    throw Error(ErrorCode::CapExceeded,
                "recovery set of " + key.to_string() + " exceeds the group cap");
  }

  const int t = array.threshold();
  std::vector<ComponentSet> sets;
  sets.reserve(static_cast<std::size_t>(t));
  for (const Symbol j : key.tuple()) {
    sets.push_back(component_set(array, key.row(), j));
  }

  RecoverySet result;
  result.key = key;
  std::vector<std::size_t> pick(static_cast<std::size_t>(t), 0);
  while (true) {
    std::vector<ParticipantIndex> members(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
      members[static_cast<std::size_t>(i)] =
          sets[static_cast<std::size_t>(i)].indices[pick[static_cast<std::size_t>(i)]];
    }
    result.groups.push_back(Group::of(std::move(members)));

    int level = t - 1;
    while (level >= 0) {
      if (++pick[static_cast<std::size_t>(level)] <
          sets[static_cast<std::size_t>(level)].indices.size()) {
        break;
      }
      pick[static_cast<std::size_t>(level)] = 0;
      --level;
    }
    if (level < 0) break;
  }
  std::sort(result.groups.begin(), result.groups.end());
  return result;
}

// No set of fewer than t participants may jointly hold all t components of
// any key. By monotonicity it suffices to check the (t-1)-subsets: w columns
// contribute at most w distinct symbols in a row.
inline bool threshold_soundness(const PhfArray& array,
                                std::uint64_t max_groups = kDefaultGroupCap) {
  const int t = array.threshold();
  if (t - 1 == 0) return true;
  if (binomial(array.cols(), t - 1) > BigInt(max_groups)) {
    throw Error(ErrorCode::CapExceeded,
                "C(n, t-1) exceeds the group cap of " + std::to_string(max_groups));
  }
  bool sound = true;
  for_each_combination(array.cols(), t - 1, [&](const std::vector<int>& cols) {
    if (!sound) return;
    for (RowIndex r = 1; r <= array.rows(); ++r) {
      std::vector<Symbol> symbols;
      symbols.reserve(cols.size());
      for (const int c : cols) symbols.push_back(array.at(r, c));
      std::sort(symbols.begin(), symbols.end());
      symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
      if (static_cast<int>(symbols.size()) >= t) sound = false;
    }
  });
  return sound;
}

// Derived view of one PHF's full access structure. Wraps the free functions
// above; recovery sets are materialized lazily per key and cached, since the
// anonymity module touches each key once but the simulator may query
// repeatedly. The cache is mutex-guarded, so concurrent readers are safe.
class AccessStructure {
 public:
  explicit AccessStructure(PhfArray array,
                           std::uint64_t max_groups = kDefaultGroupCap)
      : array_(std::move(array)), max_groups_(max_groups) {
    if (binomial(array_.cols(), array_.threshold()) > BigInt(max_groups_)) {
      throw Error(ErrorCode::CapExceeded,
                  "C(n, t) exceeds the group cap of " + std::to_string(max_groups_));
    }
    // All l * C(m, t) keys, in row-major then tuple order.
    for (RowIndex r = 1; r <= array_.rows(); ++r) {
      for_each_combination(array_.symbol_count(), array_.threshold(),
                           [&](const std::vector<int>& tuple) {
                             keys_.emplace_back(r, tuple);
                           });
    }
  }

  const PhfArray& array() const { return array_; }
  std::uint64_t max_groups() const { return max_groups_; }
  const std::vector<KeyId>& all_keys() const { return keys_; }

  std::uint64_t group_count() const {
    return binomial_u64(array_.cols(), array_.threshold());
  }

  std::vector<KeyId> recoverable_keys(const Group& group) const {
    return phfanon::recoverable_keys(array_, group);
  }

  int s_of(const Group& group) const {
    return static_cast<int>(phfanon::recoverable_keys(array_, group).size());
  }

  // s_0 = sum of s_A over all groups = sum of q over all keys; the second
  // form avoids enumerating the groups.
  const BigInt& s0() const {
    std::call_once(s0_once_, [this] {
      BigInt total = 0;
      for (const KeyId& key : keys_) total += phfanon::q_product(array_, key);
      s0_ = total;
    });
    return s0_;
  }

  BigInt q_product(const KeyId& key) const {
    return phfanon::q_product(array_, key);
  }

  const RecoverySet& recovery_set(const KeyId& key) const {
    std::scoped_lock lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(key, phfanon::recovery_set(array_, key, max_groups_))
               .first;
    }
    return it->second;
  }

 private:
  PhfArray array_;
  std::uint64_t max_groups_;
  std::vector<KeyId> keys_;
  mutable std::once_flag s0_once_;
  mutable BigInt s0_;
  mutable std::mutex cache_mutex_;
  mutable std::map<KeyId, RecoverySet> cache_;
};

}  // namespace phfanon
