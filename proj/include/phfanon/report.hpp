#pragma once

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phfanon/access_structure.hpp"
#include "phfanon/anonymity.hpp"
#include "phfanon/general_scheme.hpp"
#include "phfanon/phf.hpp"
#include "phfanon/rational.hpp"
#include "phfanon/simulator.hpp"

namespace phfanon {

enum class ReportFormat { Text, Json };

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

inline const char* bool_name(bool value) { return value ? "true" : "false"; }

// Left-aligned columns padded to the widest cell plus two spaces.
inline std::string format_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) {
      widths[i] = std::max(widths[i], row[i].size());
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) {
        line.append(widths[i] - row[i].size() + 2, ' ');
      }
    }
    out << line << '\n';
  }
  return out.str();
}

inline std::string general_key_name(int index) {
  return "K" + std::to_string(index);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// validate

struct PhfValidationResult {
  ValidationReport validation;
  bool balanced = false;
  bool threshold_sound = false;
  BigInt group_count;
  BigInt key_count;
  BigInt s0;
};

inline PhfValidationResult validate_phf_document(
    const PhfArray& array, std::uint64_t max_groups = kDefaultGroupCap) {
  PhfValidationResult result;
  result.validation = validate_phf(array, max_groups);
  result.balanced = is_balanced(array);
  result.threshold_sound = threshold_soundness(array, max_groups);
  result.group_count = binomial(array.cols(), array.threshold());
  result.key_count =
      binomial(array.symbol_count(), array.threshold()) * array.rows();
  BigInt s0 = 0;
  for (RowIndex r = 1; r <= array.rows(); ++r) {
    for_each_combination(array.symbol_count(), array.threshold(),
                         [&](const std::vector<int>& tuple) {
                           s0 += q_product(array, KeyId(r, tuple));
                         });
  }
  result.s0 = s0;
  return result;
}

struct GeneralValidationResult {
  bool threshold_ok = false;
  BigInt group_count;
  std::vector<std::uint64_t> q;
  BigInt s0;
};

inline GeneralValidationResult validate_general_document(
    const GeneralSetup& setup, std::uint64_t max_groups = kDefaultGroupCap) {
  GeneralValidationResult result;
  result.threshold_ok = validate_threshold(setup, max_groups);
  result.group_count = binomial(setup.participant_count(), setup.threshold());
  result.q.assign(static_cast<std::size_t>(setup.key_count()), 0);
  for_each_combination(setup.participant_count(), setup.threshold(),
                       [&](const std::vector<int>& members) {
                         const Group group(members);
                         for (int i = 1; i <= setup.key_count(); ++i) {
                           if (recovers(setup, group, i)) {
                             ++result.q[static_cast<std::size_t>(i - 1)];
                           }
                         }
                       });
  BigInt s0 = 0;
  for (const std::uint64_t q_i : result.q) s0 += q_i;
  result.s0 = s0;
  return result;
}

inline std::string render_validation(const PhfArray& array,
                                     const PhfValidationResult& result,
                                     ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    out << "kind=phf\n"
        << "l=" << array.rows() << "\nn=" << array.cols() << "\nm="
        << array.symbol_count() << "\nt=" << array.threshold() << '\n'
        << "groups=" << result.group_count << "\nkeys=" << result.key_count << '\n'
        << "balanced=" << detail::bool_name(result.balanced) << '\n'
        << "is_phf=" << detail::bool_name(result.validation.is_phf) << '\n';
    if (result.validation.witness) {
      out << "witness=" << result.validation.witness->to_string() << '\n';
    }
    out << "threshold_sound=" << detail::bool_name(result.threshold_sound) << '\n'
        << "s0=" << result.s0 << '\n';
    return out.str();
  }
  Json json;
  json["kind"] = "phf";
  json["l"] = array.rows();
  json["n"] = array.cols();
  json["m"] = array.symbol_count();
  json["t"] = array.threshold();
  json["groups"] = result.group_count.str();
  json["keys"] = result.key_count.str();
  json["balanced"] = result.balanced;
  json["is_phf"] = result.validation.is_phf;
  if (result.validation.witness) {
    json["witness"] = result.validation.witness->to_string();
  }
  json["threshold_sound"] = result.threshold_sound;
  json["s0"] = result.s0.str();
  return json.dump(2) + "\n";
}

inline std::string render_validation(const GeneralSetup& setup,
                                     const GeneralValidationResult& result,
                                     ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    out << "kind=general\n"
        << "p=" << setup.component_count() << "\nn=" << setup.participant_count()
        << "\nt=" << setup.threshold() << "\nv=" << setup.key_count() << '\n'
        << "groups=" << result.group_count << '\n'
        << "threshold_ok=" << detail::bool_name(result.threshold_ok) << '\n'
        << "s0=" << result.s0 << '\n';
    for (std::size_t i = 0; i < result.q.size(); ++i) {
      out << "q[" << i + 1 << "]=" << result.q[i] << '\n';
    }
    return out.str();
  }
  Json json;
  json["kind"] = "general";
  json["p"] = setup.component_count();
  json["n"] = setup.participant_count();
  json["t"] = setup.threshold();
  json["v"] = setup.key_count();
  json["groups"] = result.group_count.str();
  json["threshold_ok"] = result.threshold_ok;
  json["s0"] = result.s0.str();
  json["q"] = result.q;
  return json.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// analyze

inline std::string render_analysis(const AccessStructure& structure,
                                   const AnonymityReport& report,
                                   ReportFormat format) {
  const PhfArray& array = structure.array();
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    out << "kind=phf\n"
        << "scheme=" << scheme_name(report.scheme) << '\n'
        << "l=" << array.rows() << "\nn=" << array.cols() << "\nm="
        << array.symbol_count() << "\nt=" << array.threshold() << '\n'
        << "groups=" << structure.group_count() << "\nkeys="
        << structure.all_keys().size() << '\n'
        << "balanced=" << detail::bool_name(is_balanced(array)) << '\n'
        << "s0=" << report.s0 << '\n'
        << "mu=" << to_fraction_string(report.mu) << '\n'
        << "mu_witness_key=" << report.mu_witness_key.to_string() << '\n'
        << "mu_witness_group=" << report.mu_witness_group.to_string() << '\n'
        << "rho=" << to_fraction_string(report.rho) << '\n'
        << "rho_witness_key=" << report.rho_witness_key.to_string() << '\n'
        << "rho_witness_participant=" << report.rho_witness_participant << '\n';
    if (report.scheme == SchemeKind::ZS) {
      const ZsBounds bounds = bounds_zs(array);
      out << "mu_upper=" << to_fraction_string(bounds.mu_upper) << '\n'
          << "rho_upper=" << to_fraction_string(bounds.rho_upper) << '\n';
    } else {
      const ClosedFormMeasures closed = closed_form_measures_proportional(array);
      out << "closed_form_mu=" << to_fraction_string(closed.mu) << '\n'
          << "closed_form_rho=" << to_fraction_string(closed.rho) << '\n';
    }
    for (std::size_t c = 0; c < report.rho_per_participant.size(); ++c) {
      out << "rho_pc[" << c + 1 << "]=" << to_fraction_string(report.rho_per_participant[c])
          << " witness=" << report.rho_pc_witness_keys[c].to_string() << '\n';
    }
    for (const auto& [key, marginal] : report.key_marginals) {
      out << "marginal[" << key.to_string() << "]=" << to_fraction_string(marginal)
          << " q=" << structure.q_product(key) << '\n';
    }
    return out.str();
  }

  Json json;
  json["kind"] = "phf";
  json["scheme"] = scheme_name(report.scheme);
  json["l"] = array.rows();
  json["n"] = array.cols();
  json["m"] = array.symbol_count();
  json["t"] = array.threshold();
  json["groups"] = std::to_string(structure.group_count());
  json["keys"] = structure.all_keys().size();
  json["balanced"] = is_balanced(array);
  json["s0"] = report.s0.str();
  json["mu"] = to_fraction_string(report.mu);
  json["mu_witness"] = {{"key", report.mu_witness_key.to_string()},
                        {"group", report.mu_witness_group.to_string()}};
  json["rho"] = to_fraction_string(report.rho);
  json["rho_witness"] = {{"key", report.rho_witness_key.to_string()},
                         {"participant", report.rho_witness_participant}};
  if (report.scheme == SchemeKind::ZS) {
    const ZsBounds bounds = bounds_zs(array);
    json["mu_upper"] = to_fraction_string(bounds.mu_upper);
    json["rho_upper"] = to_fraction_string(bounds.rho_upper);
  } else {
    const ClosedFormMeasures closed = closed_form_measures_proportional(array);
    json["closed_form_mu"] = to_fraction_string(closed.mu);
    json["closed_form_rho"] = to_fraction_string(closed.rho);
  }
  Json per_participant = Json::array();
  for (std::size_t c = 0; c < report.rho_per_participant.size(); ++c) {
    per_participant.push_back(
        {{"participant", c + 1},
         {"rho", to_fraction_string(report.rho_per_participant[c])},
         {"witness_key", report.rho_pc_witness_keys[c].to_string()}});
  }
  json["rho_per_participant"] = std::move(per_participant);
  Json keys = Json::array();
  for (const auto& [key, marginal] : report.key_marginals) {
    Json entry;
    entry["key"] = key.to_string();
    entry["q"] = structure.q_product(key).str();
    entry["marginal"] = to_fraction_string(marginal);
    Json posterior = Json::object();
    for (const auto& [group, value] : report.group_posteriors.at(key)) {
      posterior[group.to_string()] = to_fraction_string(value);
    }
    entry["group_posterior"] = std::move(posterior);
    Json participants = Json::array();
    for (const Rational& value : report.participant_posteriors.at(key)) {
      participants.push_back(to_fraction_string(value));
    }
    entry["participant_posterior"] = std::move(participants);
    keys.push_back(std::move(entry));
  }
  json["keys_detail"] = std::move(keys);
  return json.dump(2) + "\n";
}

inline std::string render_analysis(const GeneralSetup& setup,
                                   const GeneralReport& report,
                                   ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    out << "kind=general\n"
        << "scheme=" << scheme_name(report.scheme) << '\n'
        << "p=" << setup.component_count() << "\nn=" << setup.participant_count()
        << "\nt=" << setup.threshold() << "\nv=" << setup.key_count() << '\n'
        << "groups=" << binomial(setup.participant_count(), setup.threshold()) << '\n'
        << "s0=" << report.s0 << '\n'
        << "mu=" << to_fraction_string(report.mu) << '\n'
        << "mu_witness_key=" << detail::general_key_name(report.mu_witness_key) << '\n'
        << "mu_witness_group=" << report.mu_witness_group.to_string() << '\n'
        << "rho=" << to_fraction_string(report.rho) << '\n'
        << "rho_witness_key=" << detail::general_key_name(report.rho_witness_key) << '\n'
        << "rho_witness_participant=" << report.rho_witness_participant << '\n';
    for (std::size_t c = 0; c < report.rho_per_participant.size(); ++c) {
      out << "rho_pc[" << c + 1 << "]=" << to_fraction_string(report.rho_per_participant[c])
          << " witness=" << detail::general_key_name(report.rho_pc_witness_keys[c]) << '\n';
    }
    for (const auto& [index, marginal] : report.key_marginals) {
      out << "marginal[" << detail::general_key_name(index)
          << "]=" << to_fraction_string(marginal)
          << " q=" << report.q[static_cast<std::size_t>(index - 1)] << '\n';
    }
    return out.str();
  }

  Json json;
  json["kind"] = "general";
  json["scheme"] = scheme_name(report.scheme);
  json["p"] = setup.component_count();
  json["n"] = setup.participant_count();
  json["t"] = setup.threshold();
  json["v"] = setup.key_count();
  json["groups"] = binomial(setup.participant_count(), setup.threshold()).str();
  json["s0"] = report.s0.str();
  json["mu"] = to_fraction_string(report.mu);
  json["mu_witness"] = {{"key", detail::general_key_name(report.mu_witness_key)},
                        {"group", report.mu_witness_group.to_string()}};
  json["rho"] = to_fraction_string(report.rho);
  json["rho_witness"] = {{"key", detail::general_key_name(report.rho_witness_key)},
                         {"participant", report.rho_witness_participant}};
  Json per_participant = Json::array();
  for (std::size_t c = 0; c < report.rho_per_participant.size(); ++c) {
    per_participant.push_back(
        {{"participant", c + 1},
         {"rho", to_fraction_string(report.rho_per_participant[c])},
         {"witness_key", detail::general_key_name(report.rho_pc_witness_keys[c])}});
  }
  json["rho_per_participant"] = std::move(per_participant);
  Json keys = Json::array();
  for (const auto& [index, marginal] : report.key_marginals) {
    Json entry;
    entry["key"] = detail::general_key_name(index);
    entry["q"] = report.q[static_cast<std::size_t>(index - 1)];
    entry["marginal"] = to_fraction_string(marginal);
    Json posterior = Json::object();
    for (const auto& [group, value] : report.group_posteriors.at(index)) {
      posterior[group.to_string()] = to_fraction_string(value);
    }
    entry["group_posterior"] = std::move(posterior);
    Json participants = Json::array();
    for (const Rational& value : report.participant_posteriors.at(index)) {
      participants.push_back(to_fraction_string(value));
    }
    entry["participant_posterior"] = std::move(participants);
    keys.push_back(std::move(entry));
  }
  json["keys_detail"] = std::move(keys);
  return json.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// compare

inline std::string render_comparison_tables(
    const Rational& zs_mu, const Rational& zs_rho,
    const std::vector<Rational>& zs_pc, const Rational& prop_mu,
    const Rational& prop_rho, const std::vector<Rational>& prop_pc) {
  std::vector<std::vector<std::string>> measures_rows = {
      {"scheme", "mu", "rho"},
      {"zs", to_fraction_string(zs_mu), to_fraction_string(zs_rho)},
      {"proportional", to_fraction_string(prop_mu), to_fraction_string(prop_rho)},
  };
  std::vector<std::vector<std::string>> participant_rows = {
      {"participant", "zs", "proportional"}};
  for (std::size_t c = 0; c < zs_pc.size(); ++c) {
    participant_rows.push_back({std::to_string(c + 1),
                                to_fraction_string(zs_pc[c]),
                                to_fraction_string(prop_pc[c])});
  }
  return detail::format_table(measures_rows) + "\n" +
         detail::format_table(participant_rows);
}

inline Json comparison_json(const Rational& zs_mu, const Rational& zs_rho,
                            const std::vector<Rational>& zs_pc,
                            const Rational& prop_mu, const Rational& prop_rho,
                            const std::vector<Rational>& prop_pc) {
  Json json;
  json["zs"] = {{"mu", to_fraction_string(zs_mu)},
                {"rho", to_fraction_string(zs_rho)}};
  json["proportional"] = {{"mu", to_fraction_string(prop_mu)},
                          {"rho", to_fraction_string(prop_rho)}};
  Json per_participant = Json::array();
  for (std::size_t c = 0; c < zs_pc.size(); ++c) {
    per_participant.push_back({{"participant", c + 1},
                               {"zs", to_fraction_string(zs_pc[c])},
                               {"proportional", to_fraction_string(prop_pc[c])}});
  }
  json["rho_per_participant"] = std::move(per_participant);
  return json;
}

// ---------------------------------------------------------------------------
// simulate

inline std::string render_simulation(const PhfArray& array, const SimConfig& config,
                                     const SimResult& result,
                                     const DeviationSummary& summary,
                                     ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::ostringstream out;
    out << "kind=phf\n"
        << "variant=" << variant_name(config.variant) << '\n'
        << "scheme=" << scheme_name(variant_scheme(config.variant)) << '\n'
        << "l=" << array.rows() << "\nn=" << array.cols() << "\nm="
        << array.symbol_count() << "\nt=" << array.threshold() << '\n'
        << "trials=" << config.trials << '\n'
        << "seed=" << config.seed << '\n'
        << "max_cycles_per_trial=" << config.max_cycles_per_trial << '\n'
        << "trials_completed=" << result.trials_completed << '\n'
        << "trials_aborted=" << result.trials_aborted << '\n'
        << "cycles_total=" << result.cycles_total << '\n'
        << "tolerance=" << detail::format_double(summary.tolerance) << '\n'
        << "max_group_dev=" << detail::format_double(summary.max_group_dev) << '\n'
        << "max_key_dev=" << detail::format_double(summary.max_key_dev) << '\n'
        << "max_conditional_dev=" << detail::format_double(summary.max_conditional_dev)
        << '\n'
        << "cells_over_tolerance=" << summary.cells_over_tolerance << '\n';
    for (const auto& [group, count] : result.group_use_counts) {
      out << "group_count[" << group.to_string() << "]=" << count << '\n';
    }
    for (const auto& [key, count] : result.key_use_counts) {
      out << "key_count[" << key.to_string() << "]=" << count << '\n';
    }
    for (const auto& [pair, count] : result.pair_counts) {
      out << "pair_count[" << pair.first.to_string() << '|'
          << pair.second.to_string() << "]=" << count << '\n';
    }
    return out.str();
  }

  Json json;
  json["kind"] = "phf";
  json["variant"] = variant_name(config.variant);
  json["scheme"] = scheme_name(variant_scheme(config.variant));
  json["l"] = array.rows();
  json["n"] = array.cols();
  json["m"] = array.symbol_count();
  json["t"] = array.threshold();
  json["trials"] = config.trials;
  json["seed"] = config.seed;
  json["max_cycles_per_trial"] = config.max_cycles_per_trial;
  json["trials_completed"] = result.trials_completed;
  json["trials_aborted"] = result.trials_aborted;
  json["cycles_total"] = result.cycles_total;
  json["tolerance"] = summary.tolerance;
  json["max_group_dev"] = summary.max_group_dev;
  json["max_key_dev"] = summary.max_key_dev;
  json["max_conditional_dev"] = summary.max_conditional_dev;
  json["cells_over_tolerance"] = summary.cells_over_tolerance;
  Json groups = Json::object();
  for (const auto& [group, count] : result.group_use_counts) {
    groups[group.to_string()] = count;
  }
  json["group_use_counts"] = std::move(groups);
  Json keys = Json::object();
  for (const auto& [key, count] : result.key_use_counts) {
    keys[key.to_string()] = count;
  }
  json["key_use_counts"] = std::move(keys);
  Json pairs = Json::object();
  for (const auto& [pair, count] : result.pair_counts) {
    pairs[pair.first.to_string() + "|" + pair.second.to_string()] = count;
  }
  json["pair_counts"] = std::move(pairs);
  return json.dump(2) + "\n";
}

}  // namespace phfanon
