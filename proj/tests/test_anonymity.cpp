#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "phfanon/anonymity.hpp"

using namespace phfanon;

namespace {

const PhfArray& pair_fixture() {
  static const PhfArray array = fixtures::bphf_3_6_2_2();
  return array;
}

AccessStructure& pair_structure() {
  static AccessStructure structure(pair_fixture());
  return structure;
}

}  // namespace

TEST_CASE("group priors", "[anonymity]") {
  AccessStructure& structure = pair_structure();
  CHECK(group_prior(structure, SchemeKind::ZS, Group({1, 2})) == Rational(1, 15));
  CHECK(group_prior(structure, SchemeKind::ZS, Group({4, 6})) == Rational(1, 15));

  // s_A({1,2}) = 1 and s_0 = 27, verified independently by summing the
  // separating-row counts over all 15 pairs.
  BigInt s0 = 0;
  for_each_combination(6, 2, [&](const std::vector<int>& members) {
    s0 += separating_rows(pair_fixture(), Group(members)).size();
  });
  REQUIRE(s0 == 27);
  CHECK(group_prior(structure, SchemeKind::Proportional, Group({1, 2})) ==
        Rational(1, 27));
  CHECK(group_prior(structure, SchemeKind::Proportional, Group({1, 6})) ==
        Rational(3, 27));
}

TEST_CASE("uniform s_A makes the schemes coincide", "[anonymity]") {
  // A single row separates every pair: s_A = 1 for all groups.
  AccessStructure structure(PhfArray(1, 3, 3, 2, {1, 2, 3}));
  for_each_combination(3, 2, [&](const std::vector<int>& members) {
    const Group group(members);
    CHECK(group_prior(structure, SchemeKind::Proportional, group) ==
          group_prior(structure, SchemeKind::ZS, group));
  });
}

TEST_CASE("key likelihood given a group", "[anonymity]") {
  AccessStructure& structure = pair_structure();
  CHECK(key_given_group(structure, Group({1, 3}), KeyId(2, {1, 2})) ==
        Rational(1, 2));
  CHECK(key_given_group(structure, Group({1, 2}), KeyId(1, {1, 2})) == Rational(0));
  CHECK(key_given_group(structure, Group({1, 2}), KeyId(3, {1, 2})) == Rational(1));
}

TEST_CASE("key marginals", "[anonymity]") {
  AccessStructure& structure = pair_structure();
  CHECK(key_marginal(structure, SchemeKind::ZS, KeyId(1, {1, 2})) == Rational(1, 3));
  CHECK(key_marginal(structure, SchemeKind::Proportional, KeyId(1, {1, 2})) ==
        Rational(9, 27));

  for (const SchemeKind scheme : {SchemeKind::ZS, SchemeKind::Proportional}) {
    Rational total(0);
    for (const KeyId& key : structure.all_keys()) {
      total += key_marginal(structure, scheme, key);
    }
    CHECK(total == Rational(1));
  }
}

TEST_CASE("pair-fixture ZS posterior for the first key", "[anonymity]") {
  const auto posterior =
      group_posterior(pair_structure(), SchemeKind::ZS, KeyId(1, {1, 2}));
  REQUIRE(posterior.size() == 9);
  CHECK(posterior.at(Group({1, 4})) == Rational(1, 5));
  CHECK(posterior.at(Group({3, 6})) == Rational(1, 5));
  CHECK(posterior.at(Group({1, 5})) == Rational(1, 10));
  CHECK(posterior.at(Group({2, 4})) == Rational(1, 10));
  CHECK(posterior.at(Group({2, 6})) == Rational(1, 10));
  CHECK(posterior.at(Group({3, 5})) == Rational(1, 10));
  CHECK(posterior.at(Group({1, 6})) == Rational(1, 15));
  CHECK(posterior.at(Group({2, 5})) == Rational(1, 15));
  CHECK(posterior.at(Group({3, 4})) == Rational(1, 15));
}

TEST_CASE("triplet-fixture ZS posterior classes", "[anonymity]") {
  AccessStructure structure(fixtures::bphf_3_18_6_3());
  const auto posterior =
      group_posterior(structure, SchemeKind::ZS, KeyId(1, {1, 2, 3}));
  REQUIRE(posterior.size() == 27);
  for (const auto& entry : fixtures::bphf_3_18_6_3_s_table()) {
    const Group group = Group::of({entry.c, entry.d, entry.e});
    CHECK(posterior.at(group) == Rational(1, 13 * entry.s));
  }
}

TEST_CASE("proportional posterior is uniform on the recovery set", "[anonymity]") {
  AccessStructure structure(fixtures::bphf_3_18_6_3());
  const auto posterior =
      group_posterior(structure, SchemeKind::Proportional, KeyId(1, {1, 2, 3}));
  REQUIRE(posterior.size() == 27);
  for (const auto& [group, value] : posterior) {
    CHECK(value == Rational(1, 27));  // (m/n)^t = (6/18)^3
  }
}

TEST_CASE("pair-fixture participant posteriors", "[anonymity]") {
  const auto zs =
      participant_posterior(pair_structure(), SchemeKind::ZS, KeyId(1, {1, 2}));
  const std::vector<Rational> expected = {
      Rational(11, 30), Rational(4, 15), Rational(11, 30),
      Rational(11, 30), Rational(4, 15), Rational(11, 30)};
  CHECK(zs == expected);

  const auto proportional = participant_posterior(
      pair_structure(), SchemeKind::Proportional, KeyId(1, {1, 2}));
  for (const Rational& value : proportional) CHECK(value == Rational(1, 3));
}

TEST_CASE("triplet-fixture participant posterior classes", "[anonymity]") {
  AccessStructure structure(fixtures::bphf_3_18_6_3());
  const auto zs =
      participant_posterior(structure, SchemeKind::ZS, KeyId(1, {1, 2, 3}));
  const auto value_of = [&](int c) { return zs[static_cast<std::size_t>(c - 1)]; };
  CHECK(value_of(16) == Rational(32, 78));
  for (const int c : {1, 6}) CHECK(value_of(c) == Rational(30, 78));
  for (const int c : {4, 7}) CHECK(value_of(c) == Rational(25, 78));
  for (const int c : {3, 9, 11, 15}) CHECK(value_of(c) == Rational(23, 78));
  for (const int c : {2, 5, 8, 10, 12, 13, 14, 17, 18}) {
    CHECK(value_of(c) == Rational(0));
  }
}

TEST_CASE("pair-fixture measures under both schemes", "[anonymity]") {
  const AnonymityReport zs = measures(pair_structure(), SchemeKind::ZS);
  CHECK(zs.mu == Rational(4, 5));
  CHECK(zs.rho == Rational(19, 30));
  for (const Rational& value : zs.rho_per_participant) {
    CHECK(value == Rational(19, 30));
  }
  CHECK(zs.s0 == 27);

  // Lexicographically smallest arg-max witnesses.
  CHECK(zs.mu_witness_key == KeyId(1, {1, 2}));
  CHECK(zs.mu_witness_group == Group({1, 4}));
  CHECK(zs.rho_witness_key == KeyId(1, {1, 2}));
  CHECK(zs.rho_witness_participant == 1);

  const AnonymityReport prop = measures(pair_structure(), SchemeKind::Proportional);
  CHECK(prop.mu == Rational(8, 9));
  CHECK(prop.rho == Rational(2, 3));
  for (const Rational& value : prop.rho_per_participant) {
    CHECK(value == Rational(2, 3));
  }
}

TEST_CASE("square-fixture measures", "[anonymity]") {
  AccessStructure structure(fixtures::bphf_4_9_3_3());
  const AnonymityReport zs = measures(structure, SchemeKind::ZS);
  CHECK(zs.mu == Rational(20, 21));
  CHECK(zs.rho == Rational(2, 3));
  for (const Rational& value : zs.rho_per_participant) CHECK(value == Rational(2, 3));

  const AnonymityReport prop = measures(structure, SchemeKind::Proportional);
  CHECK(prop.mu == Rational(26, 27));
  CHECK(prop.rho == Rational(2, 3));
}

TEST_CASE("unbalanced-fixture worst cases for one key", "[anonymity]") {
  AccessStructure structure(fixtures::phf_3_12_5_3());
  const KeyId key(2, {1, 2, 4});
  Rational max_group(0);
  for (const auto& [group, value] :
       group_posterior(structure, SchemeKind::ZS, key)) {
    max_group = std::max(max_group, value);
  }
  CHECK(max_group == Rational(3, 17));

  Rational max_participant(0);
  for (const Rational& value :
       participant_posterior(structure, SchemeKind::ZS, key)) {
    max_participant = std::max(max_participant, value);
  }
  CHECK(max_participant == Rational(10, 17));
}

TEST_CASE("exact ZS measures of the larger fixtures", "[anonymity]") {
  // Frozen from the brute-force oracle; the in-repo values must agree with
  // the stated per-key bounds 12/13, 46/78 and 14/17, 7/17.
  AccessStructure large(fixtures::bphf_3_18_6_3());
  const AnonymityReport zs_large = measures(large, SchemeKind::ZS);
  CHECK(zs_large.mu == Rational(35, 38));
  CHECK(zs_large.rho == Rational(23, 39));
  CHECK(zs_large.mu <= Rational(12, 13));
  CHECK(zs_large.rho <= Rational(46, 78));

  AccessStructure unbalanced(fixtures::phf_3_12_5_3());
  const AnonymityReport zs_unbalanced = measures(unbalanced, SchemeKind::ZS);
  CHECK(zs_unbalanced.mu == Rational(11, 14));
  CHECK(zs_unbalanced.rho == Rational(16, 41));
  CHECK(zs_unbalanced.mu <= Rational(14, 17));
  CHECK(zs_unbalanced.rho <= Rational(7, 17));
}

TEST_CASE("closed forms for the proportional scheme", "[anonymity]") {
  const ClosedFormMeasures unbalanced =
      closed_form_measures_proportional(fixtures::phf_3_12_5_3());
  CHECK(unbalanced.mu == Rational(7, 8));
  CHECK(unbalanced.rho == Rational(1, 2));

  const ClosedFormMeasures large =
      closed_form_measures_proportional(fixtures::bphf_3_18_6_3());
  CHECK(large.mu == Rational(26, 27));
  CHECK(large.rho == Rational(2, 3));

  // Balanced case: 1 - (m/n)^t and 1 - m/n.
  const ClosedFormMeasures pair =
      closed_form_measures_proportional(fixtures::bphf_3_6_2_2());
  CHECK(pair.mu == Rational(8, 9));
  CHECK(pair.rho == Rational(2, 3));
}

TEST_CASE("ZS bounds", "[anonymity]") {
  const ZsBounds pair = bounds_zs(fixtures::bphf_3_6_2_2());
  CHECK(pair.mu_upper == Rational(8, 9));  // 1 - (m/n)^t on a balanced array
  CHECK(pair.rho_upper == Rational(2, 3));

  const ZsBounds unbalanced = bounds_zs(fixtures::phf_3_12_5_3());
  CHECK(unbalanced.mu_upper == Rational(7, 8));
  CHECK(unbalanced.rho_upper == Rational(1, 2));
}

TEST_CASE("full analysis agrees with the brute-force oracle", "[anonymity]") {
  for (const PhfArray& array :
       {fixtures::bphf_3_6_2_2(), fixtures::bphf_4_9_3_3(),
        fixtures::phf_3_12_5_3()}) {
    AccessStructure structure(array);
    for (const SchemeKind scheme : {SchemeKind::ZS, SchemeKind::Proportional}) {
      const AnonymityReport report = measures(structure, scheme);
      const oracles::Analysis expected =
          oracles::analyze(array, scheme == SchemeKind::Proportional);
      CHECK(report.group_posteriors == expected.posterior);
      CHECK(report.participant_posteriors == expected.participant);
      CHECK(report.key_marginals == expected.marginal);
      CHECK(report.mu == expected.mu);
      CHECK(report.rho == expected.rho);
      CHECK(report.rho_per_participant == expected.rho_pc);
      CHECK(report.s0 == expected.s0);
    }
  }
}
