#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phfanon/access_structure.hpp"
#include "phfanon/anonymity.hpp"
#include "phfanon/combinatorics.hpp"
#include "phfanon/error.hpp"
#include "phfanon/phf.hpp"
#include "phfanon/rational.hpp"

namespace phfanon {

// Arbitrary distribution of p key components among n participants, with v
// keys K_1..K_v given as component subsets. A group recovers K_i when the
// union of its members' holdings covers K_i.
class GeneralSetup {
 public:
  GeneralSetup(int component_count, int participant_count, int threshold,
               std::vector<std::vector<int>> holdings,
               std::vector<std::vector<int>> keys)
      : component_count_(component_count),
        participant_count_(participant_count),
        threshold_(threshold),
        holdings_(std::move(holdings)),
        keys_(std::move(keys)) {
    if (component_count_ < 1) {
      throw Error(ErrorCode::Structure, "need at least one key component");
    }
    if (threshold_ < 2) {
      throw Error(ErrorCode::Structure, "threshold t must be at least 2");
    }
    if (participant_count_ < threshold_) {
      throw Error(ErrorCode::Structure,
                  "participant count n must be at least the threshold t");
    }
    if (holdings_.size() != static_cast<std::size_t>(participant_count_)) {
      throw Error(ErrorCode::Structure, "need one holdings list per participant");
    }
    if (keys_.empty()) {
      throw Error(ErrorCode::Structure, "need at least one key");
    }

    std::vector<bool> covered(static_cast<std::size_t>(component_count_) + 1, false);
    std::vector<bool> held(static_cast<std::size_t>(component_count_) + 1, false);
    for (auto& list : holdings_) {
      normalize(list, "holding");
      for (const int component : list) held[static_cast<std::size_t>(component)] = true;
    }
    for (auto& list : keys_) {
      normalize(list, "key");
      for (const int component : list) covered[static_cast<std::size_t>(component)] = true;
    }
    for (int component = 1; component <= component_count_; ++component) {
      if (!covered[static_cast<std::size_t>(component)]) {
        throw Error(ErrorCode::Structure,
                    "component " + std::to_string(component) +
                        " is not covered by any key");
      }
      if (!held[static_cast<std::size_t>(component)]) {
        throw Error(ErrorCode::Degenerate,
                    "component " + std::to_string(component) +
                        " is held by no participant");
      }
    }
  }

  int component_count() const { return component_count_; }    // p
  int participant_count() const { return participant_count_; }  // n
  int threshold() const { return threshold_; }                 // t
  int key_count() const { return static_cast<int>(keys_.size()); }  // v

  const std::vector<int>& holdings_of(ParticipantIndex c) const {
    return holdings_[static_cast<std::size_t>(c - 1)];
  }
  const std::vector<int>& key_components(int key_index) const {
    return keys_[static_cast<std::size_t>(key_index - 1)];
  }

  bool operator==(const GeneralSetup&) const = default;

 private:
  void normalize(std::vector<int>& list, const char* what) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (const int component : list) {
      if (component < 1 || component > component_count_) {
        throw Error(ErrorCode::Structure,
                    std::string(what) + " component " + std::to_string(component) +
                        " outside 1..p");
      }
    }
  }

  int component_count_;
  int participant_count_;
  int threshold_;
  std::vector<std::vector<int>> holdings_;  // index c-1, sorted
  std::vector<std::vector<int>> keys_;      // index i-1, sorted
};

// Mirror of AnonymityReport with keys identified by index 1..v.
struct GeneralReport {
  SchemeKind scheme = SchemeKind::ZS;
  std::map<int, std::map<Group, Rational>> group_posteriors;
  std::map<int, std::vector<Rational>> participant_posteriors;
  std::map<int, Rational> key_marginals;
  std::vector<std::uint64_t> q;  // q_i, index i-1
  Rational mu;
  Rational rho;
  std::vector<Rational> rho_per_participant;
  BigInt s0;

  int mu_witness_key = 0;
  Group mu_witness_group;
  int rho_witness_key = 0;
  ParticipantIndex rho_witness_participant = 0;
  std::vector<int> rho_pc_witness_keys;
};

inline void require_valid_general_group(const GeneralSetup& setup,
                                        const Group& group) {
  if (group.size() != setup.threshold()) {
    throw Error(ErrorCode::Contract, "group size must equal the threshold t");
  }
  if (!group.members().empty() &&
      group.members().back() > setup.participant_count()) {
    throw Error(ErrorCode::Contract, "group member outside 1..n");
  }
}

// True iff the pooled holdings of the group cover key K_i.
inline bool recovers(const GeneralSetup& setup, const Group& group,
                     int key_index) {
  require_valid_general_group(setup, group);
  if (key_index < 1 || key_index > setup.key_count()) {
    throw Error(ErrorCode::Contract, "key index outside 1..v");
  }
  std::vector<bool> pooled(static_cast<std::size_t>(setup.component_count()) + 1,
                           false);
  for (const ParticipantIndex c : group.members()) {
    for (const int component : setup.holdings_of(c)) {
      pooled[static_cast<std::size_t>(component)] = true;
    }
  }
  for (const int component : setup.key_components(key_index)) {
    if (!pooled[static_cast<std::size_t>(component)]) return false;
  }
  return true;
}

inline std::vector<int> recoverable_key_indices(const GeneralSetup& setup,
                                                const Group& group) {
  std::vector<int> indices;
  for (int i = 1; i <= setup.key_count(); ++i) {
    if (recovers(setup, group, i)) indices.push_back(i);
  }
  return indices;
}

// Both directions of the (t, n) threshold property: every t-group recovers
// at least one key, and no (t-1)-subset recovers any. Recovery is monotone
// under the union-coverage definition, so size t-1 suffices below.
inline bool validate_threshold(const GeneralSetup& setup,
                               std::uint64_t max_groups = kDefaultGroupCap) {
  const int n = setup.participant_count();
  const int t = setup.threshold();
  if (binomial(n, t) > BigInt(max_groups)) {
    throw Error(ErrorCode::CapExceeded,
                "C(n, t) exceeds the group cap of " + std::to_string(max_groups));
  }

  bool ok = true;
  for_each_combination(n, t, [&](const std::vector<int>& members) {
    if (!ok) return;
    const Group group(members);
    bool any = false;
    for (int i = 1; i <= setup.key_count() && !any; ++i) {
      any = recovers(setup, group, i);
    }
    if (!any) ok = false;
  });
  if (!ok) return false;

  for_each_combination(n, t - 1, [&](const std::vector<int>& members) {
    if (!ok) return;
    std::vector<bool> pooled(
        static_cast<std::size_t>(setup.component_count()) + 1, false);
    for (const int c : members) {
      for (const int component : setup.holdings_of(c)) {
        pooled[static_cast<std::size_t>(component)] = true;
      }
    }
    for (int i = 1; i <= setup.key_count(); ++i) {
      bool all = true;
      for (const int component : setup.key_components(i)) {
        if (!pooled[static_cast<std::size_t>(component)]) {
          all = false;
          break;
        }
      }
      if (all) ok = false;
    }
  });
  return ok;
}

// Posteriors and measures over the general setup, by direct enumeration of
// all C(n, t) groups; no product structure is available here.
inline GeneralReport general_measures(const GeneralSetup& setup,
                                      SchemeKind scheme,
                                      std::uint64_t max_groups = kDefaultGroupCap) {
  const int n = setup.participant_count();
  const int t = setup.threshold();
  const int v = setup.key_count();
  if (binomial(n, t) > BigInt(max_groups)) {
    throw Error(ErrorCode::CapExceeded,
                "C(n, t) exceeds the group cap of " + std::to_string(max_groups));
  }

  // One pass over Gamma: recovery lists, s_A, and the Q_i collections.
  std::vector<std::vector<Group>> recovery(static_cast<std::size_t>(v));
  std::map<Group, int> s;
  BigInt s0 = 0;
  for_each_combination(n, t, [&](const std::vector<int>& members) {
    const Group group(members);
    const std::vector<int> indices = recoverable_key_indices(setup, group);
    if (indices.empty()) {
      throw Error(ErrorCode::Contract,
                  "threshold violation: group " + group.to_string() +
                      " recovers no key");
    }
    s.emplace(group, static_cast<int>(indices.size()));
    s0 += static_cast<int>(indices.size());
    for (const int i : indices) {
      recovery[static_cast<std::size_t>(i - 1)].push_back(group);
    }
  });

  GeneralReport report;
  report.scheme = scheme;
  report.s0 = s0;
  report.q.resize(static_cast<std::size_t>(v));
  report.rho_per_participant.assign(static_cast<std::size_t>(n), Rational(0));
  report.rho_pc_witness_keys.assign(static_cast<std::size_t>(n), 0);

  Rational max_group_posterior(-1);
  Rational max_participant_posterior(-1);
  std::vector<Rational> max_per_participant(static_cast<std::size_t>(n),
                                            Rational(-1));

  for (int i = 1; i <= v; ++i) {
    const std::vector<Group>& q_i = recovery[static_cast<std::size_t>(i - 1)];
    report.q[static_cast<std::size_t>(i - 1)] = q_i.size();

    std::map<Group, Rational> posterior;
    if (scheme == SchemeKind::Proportional) {
      const Rational uniform(1, BigInt(q_i.size()));
      for (const Group& group : q_i) posterior.emplace(group, uniform);
      report.key_marginals.emplace(i, Rational(BigInt(q_i.size()), s0));
    } else {
      Rational normalizer(0);
      for (const Group& group : q_i) {
        const Rational weight(1, s.at(group));
        posterior.emplace(group, weight);
        normalizer += weight;
      }
      for (auto& [group, value] : posterior) value /= normalizer;
      report.key_marginals.emplace(i, normalizer / binomial(n, t));
    }

    std::vector<Rational> by_participant(static_cast<std::size_t>(n), Rational(0));
    for (const auto& [group, probability] : posterior) {
      for (const ParticipantIndex c : group.members()) {
        by_participant[static_cast<std::size_t>(c - 1)] += probability;
      }
    }

    for (const auto& [group, value] : posterior) {
      if (value > max_group_posterior) {
        max_group_posterior = value;
        report.mu_witness_key = i;
        report.mu_witness_group = group;
      }
    }
    for (int c = 1; c <= n; ++c) {
      const Rational& value = by_participant[static_cast<std::size_t>(c - 1)];
      if (value > max_participant_posterior) {
        max_participant_posterior = value;
        report.rho_witness_key = i;
        report.rho_witness_participant = c;
      }
      if (value > max_per_participant[static_cast<std::size_t>(c - 1)]) {
        max_per_participant[static_cast<std::size_t>(c - 1)] = value;
        report.rho_pc_witness_keys[static_cast<std::size_t>(c - 1)] = i;
      }
    }

    report.group_posteriors.emplace(i, std::move(posterior));
    report.participant_posteriors.emplace(i, std::move(by_participant));
  }

  report.mu = Rational(1) - max_group_posterior;
  report.rho = Rational(1) - max_participant_posterior;
  for (int c = 1; c <= n; ++c) {
    report.rho_per_participant[static_cast<std::size_t>(c - 1)] =
        Rational(1) - max_per_participant[static_cast<std::size_t>(c - 1)];
  }
  return report;
}

// mu = 1 - 1/min q_i: exact for the proportional scheme, an upper bound for
// ZS. q_i counted by enumeration.
inline Rational general_mu_closed_form_proportional(
    const GeneralSetup& setup, std::uint64_t max_groups = kDefaultGroupCap) {
  const int n = setup.participant_count();
  const int t = setup.threshold();
  if (binomial(n, t) > BigInt(max_groups)) {
    throw Error(ErrorCode::CapExceeded,
                "C(n, t) exceeds the group cap of " + std::to_string(max_groups));
  }
  std::vector<std::uint64_t> q(static_cast<std::size_t>(setup.key_count()), 0);
  for_each_combination(n, t, [&](const std::vector<int>& members) {
    const Group group(members);
    for (int i = 1; i <= setup.key_count(); ++i) {
      if (recovers(setup, group, i)) ++q[static_cast<std::size_t>(i - 1)];
    }
  });
  const std::uint64_t min_q = *std::min_element(q.begin(), q.end());
  if (min_q == 0) {
    throw Error(ErrorCode::Contract, "some key is recoverable by no group");
  }
  return Rational(1) - Rational(1, BigInt(min_q));
}

// Embeds a PHF access structure into the general setup: component (r, j)
// becomes index (r-1)*m + j, and key K(r x J) becomes the set of its t
// component indices. Keys are ordered as AccessStructure::all_keys().
inline GeneralSetup phf_to_general(const PhfArray& array) {
  const int m = array.symbol_count();
  std::vector<std::vector<int>> holdings(static_cast<std::size_t>(array.cols()));
  for (ParticipantIndex c = 1; c <= array.cols(); ++c) {
    for (RowIndex r = 1; r <= array.rows(); ++r) {
      holdings[static_cast<std::size_t>(c - 1)].push_back((r - 1) * m +
                                                          array.at(r, c));
    }
  }
  std::vector<std::vector<int>> keys;
  for (RowIndex r = 1; r <= array.rows(); ++r) {
    for_each_combination(m, array.threshold(), [&](const std::vector<int>& tuple) {
      std::vector<int> components;
      components.reserve(tuple.size());
      for (const Symbol j : tuple) components.push_back((r - 1) * m + j);
      keys.push_back(std::move(components));
    });
  }
  return GeneralSetup(array.rows() * m, array.cols(), array.threshold(),
                      std::move(holdings), std::move(keys));
}

}  // namespace phfanon
