#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "phfanon/access_structure.hpp"
#include "phfanon/anonymity.hpp"
#include "phfanon/combinatorics.hpp"
#include "phfanon/error.hpp"
#include "phfanon/phf.hpp"

namespace phfanon {

// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state advanced by the golden
// gamma, output mixed by two xor-shift-multiply rounds. Chosen because
// substreams derived from (seed, trial index) are independent and the whole
// sampling path is integer-only, so results are identical on every platform
// and under any parallel schedule.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  // Substream i of a run starts at mix(seed + (i+1) * gamma). Hashing the
  // start state keeps the substreams' underlying state sequences disjoint;
  // seeding with seed + i * gamma directly would make stream i+1 replay
  // stream i shifted by one draw.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(seed + (index + 1) * kGamma));
  }

  std::uint64_t next() { return mix(state_ += kGamma); }

  // Unbiased uniform draw in [0, bound) by 128-bit multiply with rejection
  // (Lemire 2019).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error(ErrorCode::Contract, "bound must be positive");
    std::uint64_t x = next();
    unsigned __int128 product = static_cast<unsigned __int128>(x) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = next();
        product = static_cast<unsigned __int128>(x) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_;
};

// Restart policy when the drawn row fails to separate the drawn group:
// back to Step I (redraw the group; realizes the proportional scheme) or to
// Step II (redraw the row only; realizes the ZS scheme).
enum class RestartVariant { RestartToStepI, RestartToStepII };

inline const char* variant_name(RestartVariant variant) {
  return variant == RestartVariant::RestartToStepI ? "step1" : "step2";
}

inline SchemeKind variant_scheme(RestartVariant variant) {
  return variant == RestartVariant::RestartToStepI ? SchemeKind::Proportional
                                                   : SchemeKind::ZS;
}

struct SimConfig {
  RestartVariant variant = RestartVariant::RestartToStepI;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_cycles_per_trial = 1'000'000;
};

struct SimResult {
  RestartVariant variant = RestartVariant::RestartToStepI;
  std::map<Group, std::uint64_t> group_use_counts;
  std::map<KeyId, std::uint64_t> key_use_counts;
  std::map<std::pair<Group, KeyId>, std::uint64_t> pair_counts;
  std::uint64_t trials_completed = 0;
  std::uint64_t trials_aborted = 0;
  std::uint64_t cycles_total = 0;

  bool operator==(const SimResult&) const = default;
};

// Runs the key-selection algorithm: draw a group uniformly (Step I), draw
// one of the l rows uniformly (Step II); a separating row determines the key
// used (Step III), otherwise restart per the variant. Every row draw counts
// as one cycle; a trial that exhausts max_cycles_per_trial is aborted and
// counted separately. Deterministic given (array, config): trial i uses
// SplitMix64 substream (seed, i) regardless of execution order.
inline SimResult run(const PhfArray& array, const SimConfig& config) {
  if (config.trials < 1) {
    throw Error(ErrorCode::Contract, "trials must be at least 1");
  }
  if (config.max_cycles_per_trial < 1) {
    throw Error(ErrorCode::Contract, "max_cycles_per_trial must be at least 1");
  }
  const int t = array.threshold();
  const int l = array.rows();
  const std::uint64_t group_space = binomial_u64(array.cols(), t);

  SimResult result;
  result.variant = config.variant;
  std::vector<Symbol> symbols(static_cast<std::size_t>(t));

  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    SplitMix64 rng = SplitMix64::substream(config.seed, trial);
    std::uint64_t cycles = 0;
    bool group_drawn = false;
    std::vector<int> members;
    bool done = false;

    while (!done && cycles < config.max_cycles_per_trial) {
      if (!group_drawn) {
        members = unrank_combination(rng.below(group_space), array.cols(), t);
        group_drawn = true;
      }
      const RowIndex row = static_cast<RowIndex>(rng.below(static_cast<std::uint64_t>(l))) + 1;
      ++cycles;

      for (int i = 0; i < t; ++i) {
        symbols[static_cast<std::size_t>(i)] =
            array.at(row, members[static_cast<std::size_t>(i)]);
      }
      std::vector<Symbol> sorted = symbols;
      std::sort(sorted.begin(), sorted.end());
      const bool separates =
          std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();

      if (separates) {
        const Group group(members);
        const KeyId key(row, std::move(sorted));
        ++result.group_use_counts[group];
        ++result.key_use_counts[key];
        ++result.pair_counts[{group, key}];
        ++result.trials_completed;
        done = true;
      } else if (config.variant == RestartVariant::RestartToStepI) {
        group_drawn = false;
      }
      // RestartToStepII keeps the group and redraws the row.
    }
    if (!done) ++result.trials_aborted;
    result.cycles_total += cycles;
  }
  return result;
}

// Maximum absolute deviation between empirical frequencies and the exact
// probabilities of the matching scheme, per category, plus how many cells
// exceed the supplied tolerance.
struct DeviationSummary {
  double max_group_dev = 0.0;
  double max_key_dev = 0.0;
  double max_conditional_dev = 0.0;
  std::uint64_t cells_over_tolerance = 0;
  double tolerance = 0.0;
};

// Default acceptance tolerance: ten times the distribution-free bound
// 0.5/sqrt(trials) on a binomial cell's standard error.
inline double default_sim_tolerance(std::uint64_t trials) {
  return 10.0 * 0.5 / std::sqrt(static_cast<double>(trials));
}

// Compares a simulation against the exact report for the same array. The
// report must be for the scheme the variant realizes. Group priors and s_A
// are reconstructed from the report's posterior supports, so no extra
// context is needed.
inline DeviationSummary compare_to_exact(const SimResult& result,
                                         const AnonymityReport& report,
                                         double tolerance) {
  if (variant_scheme(result.variant) != report.scheme) {
    throw Error(ErrorCode::Contract,
                "simulation variant does not match the report's scheme");
  }
  if (result.trials_completed == 0) {
    throw Error(ErrorCode::Contract, "no completed trials to compare");
  }

  // s_A = number of keys whose recovery set contains the group; every group
  // of a valid PHF appears in at least one support.
  std::map<Group, int> s;
  for (const auto& [key, posterior] : report.group_posteriors) {
    for (const auto& [group, value] : posterior) ++s[group];
  }
  BigInt s0_check = 0;
  for (const auto& [group, count] : s) s0_check += count;
  if (s0_check != report.s0) {
    throw Error(ErrorCode::Internal, "report s0 disagrees with its posteriors");
  }

  const double trials = static_cast<double>(result.trials_completed);
  DeviationSummary summary;
  summary.tolerance = tolerance;
  const auto track = [&](double deviation, double& slot) {
    slot = std::max(slot, deviation);
    if (deviation > tolerance) ++summary.cells_over_tolerance;
  };

  const BigInt group_count(s.size());
  for (const auto& [group, s_a] : s) {
    const Rational exact = report.scheme == SchemeKind::Proportional
                               ? Rational(BigInt(s_a), report.s0)
                               : Rational(BigInt(1), group_count);
    const auto it = result.group_use_counts.find(group);
    const double empirical =
        it == result.group_use_counts.end()
            ? 0.0
            : static_cast<double>(it->second) / trials;
    track(std::abs(empirical - to_double(exact)), summary.max_group_dev);
  }

  for (const auto& [key, marginal] : report.key_marginals) {
    const auto it = result.key_use_counts.find(key);
    const double empirical =
        it == result.key_use_counts.end()
            ? 0.0
            : static_cast<double>(it->second) / trials;
    track(std::abs(empirical - to_double(marginal)), summary.max_key_dev);
  }

  // Conditional key-given-group frequencies against 1/s_A, for groups that
  // were observed at least once.
  for (const auto& [group, count] : result.group_use_counts) {
    const double group_trials = static_cast<double>(count);
    const double exact = 1.0 / static_cast<double>(s.at(group));
    for (const auto& [key, posterior] : report.group_posteriors) {
      if (!posterior.contains(group)) continue;
      const auto it = result.pair_counts.find({group, key});
      const double empirical =
          it == result.pair_counts.end()
              ? 0.0
              : static_cast<double>(it->second) / group_trials;
      track(std::abs(empirical - exact), summary.max_conditional_dev);
    }
  }
  return summary;
}

}  // namespace phfanon
