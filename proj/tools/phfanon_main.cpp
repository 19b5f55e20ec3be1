// Command-line front end: validate inputs, compute exact anonymity reports,
// compare the two key-selection schemes, and run seeded simulations.
//
// Exit codes: 0 ok, 1 validation failed or runtime error, 2 parse error,
// 3 group cap exceeded.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phfanon/phfanon.hpp"

namespace {

using namespace phfanon;

int exit_code_for(const Error& error) {
  switch (error.code()) {
    case ErrorCode::Parse:
    case ErrorCode::Structure:
    case ErrorCode::Degenerate:
      return 2;
    case ErrorCode::CapExceeded:
      return 3;
    default:
      return 1;
  }
}

ReportFormat parse_format(const std::string& name) {
  return name == "json" ? ReportFormat::Json : ReportFormat::Text;
}

SchemeKind parse_scheme(const std::string& name) {
  return name == "proportional" ? SchemeKind::Proportional : SchemeKind::ZS;
}

RestartVariant parse_variant(const std::string& name) {
  return name == "step1" ? RestartVariant::RestartToStepI
                         : RestartVariant::RestartToStepII;
}

// Shared validation gate for analyze/compare/simulate on PHF inputs.
void require_valid_phf(const PhfArray& array, std::uint64_t max_groups) {
  const ValidationReport report = validate_phf(array, max_groups);
  if (!report.is_phf) {
    throw Error(ErrorCode::Contract,
                "input is not a perfect hash family (first failing group " +
                    report.witness->to_string() + ")");
  }
  if (!threshold_soundness(array, max_groups)) {
    throw Error(ErrorCode::Contract, "input violates the threshold property");
  }
}

int cmd_validate(const InputDocument& document, std::uint64_t max_groups,
                 ReportFormat format) {
  if (document.kind == InputDocument::Kind::Phf) {
    const PhfValidationResult result =
        validate_phf_document(*document.phf, max_groups);
    std::cout << render_validation(*document.phf, result, format);
    return result.validation.is_phf && result.threshold_sound ? 0 : 1;
  }
  const GeneralValidationResult result =
      validate_general_document(*document.general, max_groups);
  std::cout << render_validation(*document.general, result, format);
  return result.threshold_ok ? 0 : 1;
}

int cmd_analyze(const InputDocument& document, SchemeKind scheme,
                std::uint64_t max_groups, ReportFormat format) {
  if (document.kind == InputDocument::Kind::Phf) {
    require_valid_phf(*document.phf, max_groups);
    AccessStructure structure(*document.phf, max_groups);
    std::cout << render_analysis(structure, measures(structure, scheme), format);
    return 0;
  }
  if (!validate_threshold(*document.general, max_groups)) {
    throw Error(ErrorCode::Contract,
                "input is not a (t, n) threshold access structure");
  }
  std::cout << render_analysis(*document.general,
                               general_measures(*document.general, scheme, max_groups),
                               format);
  return 0;
}

int cmd_compare(const InputDocument& document, std::uint64_t max_groups,
                ReportFormat format) {
  if (document.kind == InputDocument::Kind::Phf) {
    require_valid_phf(*document.phf, max_groups);
    AccessStructure structure(*document.phf, max_groups);
    const AnonymityReport zs = measures(structure, SchemeKind::ZS);
    const AnonymityReport prop = measures(structure, SchemeKind::Proportional);
    if (format == ReportFormat::Text) {
      const PhfArray& array = structure.array();
      std::cout << "kind=phf\n"
                << "l=" << array.rows() << "\nn=" << array.cols() << "\nm="
                << array.symbol_count() << "\nt=" << array.threshold() << "\n\n"
                << render_comparison_tables(zs.mu, zs.rho, zs.rho_per_participant,
                                            prop.mu, prop.rho,
                                            prop.rho_per_participant);
    } else {
      Json json = comparison_json(zs.mu, zs.rho, zs.rho_per_participant, prop.mu,
                                  prop.rho, prop.rho_per_participant);
      json["kind"] = "phf";
      std::cout << json.dump(2) << "\n";
    }
    return 0;
  }

  if (!validate_threshold(*document.general, max_groups)) {
    throw Error(ErrorCode::Contract,
                "input is not a (t, n) threshold access structure");
  }
  const GeneralReport zs =
      general_measures(*document.general, SchemeKind::ZS, max_groups);
  const GeneralReport prop =
      general_measures(*document.general, SchemeKind::Proportional, max_groups);
  if (format == ReportFormat::Text) {
    std::cout << "kind=general\n"
              << "p=" << document.general->component_count() << "\nn="
              << document.general->participant_count() << "\nt="
              << document.general->threshold() << "\nv="
              << document.general->key_count() << "\n\n"
              << render_comparison_tables(zs.mu, zs.rho, zs.rho_per_participant,
                                          prop.mu, prop.rho,
                                          prop.rho_per_participant);
  } else {
    Json json = comparison_json(zs.mu, zs.rho, zs.rho_per_participant, prop.mu,
                                prop.rho, prop.rho_per_participant);
    json["kind"] = "general";
    std::cout << json.dump(2) << "\n";
  }
  return 0;
}

int cmd_simulate(const InputDocument& document, RestartVariant variant,
                 std::uint64_t trials, std::uint64_t seed,
                 std::uint64_t max_groups, ReportFormat format) {
  if (document.kind != InputDocument::Kind::Phf) {
    throw Error(ErrorCode::Contract, "simulate requires a phf input");
  }
  require_valid_phf(*document.phf, max_groups);

  SimConfig config;
  config.variant = variant;
  config.trials = trials;
  config.seed = seed;
  const SimResult result = run(*document.phf, config);

  AccessStructure structure(*document.phf, max_groups);
  const AnonymityReport exact = measures(structure, variant_scheme(variant));
  const DeviationSummary summary =
      compare_to_exact(result, exact, default_sim_tolerance(trials));
  std::cout << render_simulation(*document.phf, config, result, summary, format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anonymity analysis of threshold key sharing from perfect hash families"};
  app.require_subcommand(1);

  std::string path;
  std::string format_name = "text";
  std::string scheme_name = "zs";
  std::string variant_name = "step1";
  std::uint64_t max_groups = kDefaultGroupCap;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;

  const auto add_common = [&](CLI::App* command) {
    command->add_option("file", path, "input file (phf or general format)")
        ->required();
    command->add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    command->add_option("--max-groups", max_groups,
                        "cap on enumerated participant groups")
        ->capture_default_str();
  };

  CLI::App* validate = app.add_subcommand(
      "validate", "check the hash-family and threshold properties");
  add_common(validate);

  CLI::App* analyze =
      app.add_subcommand("analyze", "exact posteriors and anonymity measures");
  add_common(analyze);
  analyze->add_option("--scheme", scheme_name, "key-selection scheme")
      ->check(CLI::IsMember({"zs", "proportional"}))
      ->capture_default_str();

  CLI::App* compare =
      app.add_subcommand("compare", "side-by-side measures of both schemes");
  add_common(compare);

  CLI::App* simulate =
      app.add_subcommand("simulate", "seeded Monte Carlo run of the key-selection algorithm");
  add_common(simulate);
  simulate->add_option("--variant", variant_name,
                       "restart policy: step1 (proportional) or step2 (zs)")
      ->check(CLI::IsMember({"step1", "step2"}))
      ->capture_default_str();
  simulate->add_option("--trials", trials, "number of trials")
      ->capture_default_str();
  simulate->add_option("--seed", seed, "64-bit seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  try {
    const InputDocument document = phfanon::parse_input_file(path);
    const ReportFormat format = parse_format(format_name);
    if (app.got_subcommand(validate)) {
      return cmd_validate(document, max_groups, format);
    }
    if (app.got_subcommand(analyze)) {
      return cmd_analyze(document, parse_scheme(scheme_name), max_groups, format);
    }
    if (app.got_subcommand(compare)) {
      return cmd_compare(document, max_groups, format);
    }
    return cmd_simulate(document, parse_variant(variant_name), trials, seed,
                        max_groups, format);
  } catch (const phfanon::Error& error) {
    std::cerr << "error (" << phfanon::error_code_name(error.code())
              << "): " << error.what() << "\n";
    return exit_code_for(error);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
