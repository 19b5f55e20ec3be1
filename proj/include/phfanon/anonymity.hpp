#pragma once

#include <map>
#include <string>
#include <vector>

#include "phfanon/access_structure.hpp"
#include "phfanon/error.hpp"
#include "phfanon/phf.hpp"
#include "phfanon/rational.hpp"

namespace phfanon {

// ZS: every group equally likely to use a key. Proportional: a group uses a
// key with probability proportional to the number s_A of keys it can
// recover. Both pick uniformly among the group's s_A keys.
enum class SchemeKind { ZS, Proportional };

inline const char* scheme_name(SchemeKind scheme) {
  return scheme == SchemeKind::ZS ? "zs" : "proportional";
}

struct AnonymityReport {
  SchemeKind scheme = SchemeKind::ZS;
  std::map<KeyId, std::map<Group, Rational>> group_posteriors;
  std::map<KeyId, std::vector<Rational>> participant_posteriors;
  std::map<KeyId, Rational> key_marginals;
  Rational mu;
  Rational rho;
  std::vector<Rational> rho_per_participant;  // index c-1
  BigInt s0;

  // Lexicographically smallest arg-max witnesses for the three maxima.
  KeyId mu_witness_key;
  Group mu_witness_group;
  KeyId rho_witness_key;
  ParticipantIndex rho_witness_participant = 0;
  std::vector<KeyId> rho_pc_witness_keys;  // index c-1
};

// Pr[A]: uniform for ZS, s_A / s_0 for the proportional scheme.
inline Rational group_prior(const AccessStructure& structure, SchemeKind scheme,
                            const Group& group) {
  require_valid_group(structure.array(), group);
  if (scheme == SchemeKind::ZS) {
    return Rational(1, binomial(structure.array().cols(),
                                structure.array().threshold()));
  }
  return Rational(structure.s_of(group), structure.s0());
}

// Pr[K(r x J) | A]: 1/s_A when the group recovers the key, else 0. Shared by
// both schemes.
inline Rational key_given_group(const AccessStructure& structure,
                                const Group& group, const KeyId& key) {
  require_valid_key(structure.array(), key);
  const std::vector<KeyId> recoverable = structure.recoverable_keys(group);
  for (const KeyId& candidate : recoverable) {
    if (candidate == key) {
      return Rational(1, static_cast<int>(recoverable.size()));
    }
  }
  return Rational(0);
}

// Pr[K(r x J)]: the ZS form averages 1/s_A over the recovery set; the
// proportional form collapses to q(r x J) / s_0.
inline Rational key_marginal(const AccessStructure& structure, SchemeKind scheme,
                             const KeyId& key) {
  require_valid_key(structure.array(), key);
  if (scheme == SchemeKind::Proportional) {
    return Rational(structure.q_product(key), structure.s0());
  }
  Rational sum(0);
  for (const Group& group : structure.recovery_set(key).groups) {
    sum += Rational(1, structure.s_of(group));
  }
  return sum / binomial(structure.array().cols(), structure.array().threshold());
}

// Pr[A | K(r x J)] over the recovery set; groups outside it have posterior 0
// and are omitted from the map. Each map sums to 1.
inline std::map<Group, Rational> group_posterior(const AccessStructure& structure,
                                                 SchemeKind scheme,
                                                 const KeyId& key) {
  require_valid_key(structure.array(), key);
  const RecoverySet& recovery = structure.recovery_set(key);
  std::map<Group, Rational> posterior;
  if (scheme == SchemeKind::Proportional) {
    const Rational uniform(1, BigInt(recovery.q()));
    for (const Group& group : recovery.groups) posterior.emplace(group, uniform);
    return posterior;
  }
  Rational normalizer(0);
  for (const Group& group : recovery.groups) {
    const Rational weight(1, structure.s_of(group));
    posterior.emplace(group, weight);
    normalizer += weight;
  }
  for (auto& [group, value] : posterior) value /= normalizer;
  return posterior;
}

// Pr[P_c | K(r x J)] for c = 1..n, by summing the group posterior over the
// groups containing c. Under the proportional scheme the result must equal
// the closed form 1/f(r, j_i) on F(r, j_i) and 0 elsewhere; both are
// computed and compared, with the summation as ground truth.
inline std::vector<Rational> participant_posterior(const AccessStructure& structure,
                                                   SchemeKind scheme,
                                                   const KeyId& key) {
  const std::map<Group, Rational> posterior =
      group_posterior(structure, scheme, key);
  std::vector<Rational> by_participant(
      static_cast<std::size_t>(structure.array().cols()), Rational(0));
  for (const auto& [group, probability] : posterior) {
    for (const ParticipantIndex c : group.members()) {
      by_participant[static_cast<std::size_t>(c - 1)] += probability;
    }
  }

  if (scheme == SchemeKind::Proportional) {
    std::vector<Rational> closed(
        static_cast<std::size_t>(structure.array().cols()), Rational(0));
    for (const Symbol j : key.tuple()) {
      const ComponentSet set = component_set(structure.array(), key.row(), j);
      for (const ParticipantIndex c : set.indices) {
        closed[static_cast<std::size_t>(c - 1)] = Rational(1, set.f());
      }
    }
    if (closed != by_participant) {
      throw Error(ErrorCode::Internal,
                  "proportional participant posterior disagrees with its "
                  "closed form for " + key.to_string());
    }
  }
  return by_participant;
}

// Full report: posteriors and marginals for every key, and the worst-case
// measures mu, rho and rho(P_c) with their arg-max witnesses.
inline AnonymityReport measures(const AccessStructure& structure,
                                SchemeKind scheme) {
  const int n = structure.array().cols();
  AnonymityReport report;
  report.scheme = scheme;
  report.s0 = structure.s0();
  report.rho_per_participant.assign(static_cast<std::size_t>(n), Rational(0));
  report.rho_pc_witness_keys.assign(static_cast<std::size_t>(n), KeyId());

  Rational max_group_posterior(-1);
  Rational max_participant_posterior(-1);
  std::vector<Rational> max_per_participant(static_cast<std::size_t>(n),
                                            Rational(-1));

  for (const KeyId& key : structure.all_keys()) {
    std::map<Group, Rational> posterior = group_posterior(structure, scheme, key);
    std::vector<Rational> by_participant =
        participant_posterior(structure, scheme, key);
    report.key_marginals.emplace(key, key_marginal(structure, scheme, key));

    for (const auto& [group, value] : posterior) {
      if (value > max_group_posterior) {
        max_group_posterior = value;
        report.mu_witness_key = key;
        report.mu_witness_group = group;
      }
    }
    for (int c = 1; c <= n; ++c) {
      const Rational& value = by_participant[static_cast<std::size_t>(c - 1)];
      if (value > max_participant_posterior) {
        max_participant_posterior = value;
        report.rho_witness_key = key;
        report.rho_witness_participant = c;
      }
      if (value > max_per_participant[static_cast<std::size_t>(c - 1)]) {
        max_per_participant[static_cast<std::size_t>(c - 1)] = value;
        report.rho_pc_witness_keys[static_cast<std::size_t>(c - 1)] = key;
      }
    }

    report.group_posteriors.emplace(key, std::move(posterior));
    report.participant_posteriors.emplace(key, std::move(by_participant));
  }

  report.mu = Rational(1) - max_group_posterior;
  report.rho = Rational(1) - max_participant_posterior;
  for (int c = 1; c <= n; ++c) {
    report.rho_per_participant[static_cast<std::size_t>(c - 1)] =
        Rational(1) - max_per_participant[static_cast<std::size_t>(c - 1)];
  }
  return report;
}

struct ClosedFormMeasures {
  Rational mu;
  Rational rho;
};

// mu = 1 - 1/min q(r x J), rho = 1 - 1/min f(r, j): exact for the
// proportional scheme on any PHF with all f(r, j) >= 1.
inline ClosedFormMeasures closed_form_measures_proportional(const PhfArray& array) {
  BigInt min_q(-1);
  int min_f = -1;
  for (RowIndex r = 1; r <= array.rows(); ++r) {
    std::vector<int> f(static_cast<std::size_t>(array.symbol_count()) + 1, 0);
    for (ParticipantIndex c = 1; c <= array.cols(); ++c) {
      ++f[static_cast<std::size_t>(array.at(r, c))];
    }
    for (Symbol j = 1; j <= array.symbol_count(); ++j) {
      const int count = f[static_cast<std::size_t>(j)];
      if (count == 0) {
        throw Error(ErrorCode::Degenerate,
                    "component (" + std::to_string(r) + ", " + std::to_string(j) +
                        ") is held by no participant");
      }
      if (min_f < 0 || count < min_f) min_f = count;
    }
    // The minimum product over tuples J picks the t smallest f(r, j).
    std::vector<int> sorted(f.begin() + 1, f.end());
    std::sort(sorted.begin(), sorted.end());
    BigInt row_min = 1;
    for (int i = 0; i < array.threshold(); ++i) {
      row_min *= sorted[static_cast<std::size_t>(i)];
    }
    if (min_q < 0 || row_min < min_q) min_q = row_min;
  }
  return ClosedFormMeasures{Rational(1) - Rational(1, min_q),
                            Rational(1) - Rational(1, min_f)};
}

struct ZsBounds {
  Rational mu_upper;
  Rational rho_upper;
};

// Upper bounds on the ZS scheme's measures: its worst-case posteriors are at
// least 1/min q and 1/min f, so mu and rho can never exceed the closed forms
// the proportional scheme attains.
inline ZsBounds bounds_zs(const PhfArray& array) {
  const ClosedFormMeasures closed = closed_form_measures_proportional(array);
  return ZsBounds{closed.mu, closed.rho};
}

}  // namespace phfanon
