// Copyright 2026 The tcgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tcgen/cli.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <optional>

#include "tcgen/project.hpp"

namespace tcgen::cli
{

namespace
{

struct Overrides
{
  std::string config;
  std::optional<int> threshold;
  std::optional<std::size_t> bundle_limit;
  std::vector<std::string> formats;
  std::string output_dir;
  std::string ratings;
  bool reassess = false;
};

void add_config(CLI::App & cmd, Overrides & o)
{
  cmd.add_option("-c,--config", o.config, "Project file (defaults to $TCGEN_CONFIG)")
    ->envname(kConfigEnv);
}

void add_generation_overrides(CLI::App & cmd, Overrides & o)
{
  cmd.add_option("--threshold", o.threshold, "Worst-case threshold (magnitude 1..3)")
    ->check(CLI::Range(1, 3));
  cmd.add_option("--bundle-limit", o.bundle_limit, "Largest relationship bundle");
  cmd.add_option("--output-dir", o.output_dir, "Output directory");
}

ProjectConfig resolve_config(const Overrides & o)
{
  if (o.config.empty()) {
    throw Error(
      ErrorCode::UsageError,
      std::string("no project file: pass --config or set ") + kConfigEnv);
  }
  if (!std::filesystem::exists(o.config)) {
    throw Error(ErrorCode::UsageError, "project file '" + o.config + "' does not exist");
  }
  auto config = load_project_config(o.config);
  if (o.threshold) {
    config.threshold = *o.threshold;
  }
  if (o.bundle_limit) {
    config.bundle_limit = *o.bundle_limit;
  }
  if (!o.output_dir.empty()) {
    const bool ledger_follows = config.results_ledger == config.output_dir / "results.jsonl";
    config.output_dir = o.output_dir;
    if (ledger_follows) {
      config.results_ledger = config.output_dir / "results.jsonl";
    }
  }
  if (!o.ratings.empty()) {
    config.ratings = std::filesystem::path(o.ratings);
  }
  if (!o.formats.empty()) {
    config.formats.clear();
    for (const auto & f : o.formats) {
      const auto format = parse_report_format(f);
      if (!format) {
        throw Error(ErrorCode::UsageError, "unknown format '" + f + "'");
      }
      config.formats.push_back(*format);
    }
  }
  return config;
}

ReportFormat single_format(const Overrides & o, ReportFormat fallback)
{
  if (o.formats.empty()) {
    return fallback;
  }
  if (o.formats.size() > 1) {
    throw Error(ErrorCode::UsageError, "this command takes a single --format");
  }
  const auto format = parse_report_format(o.formats.front());
  if (!format) {
    throw Error(ErrorCode::UsageError, "unknown format '" + o.formats.front() + "'");
  }
  return *format;
}

int report(const CommandResult & result, std::ostream & out, std::ostream & err)
{
  for (const auto & d : result.diagnostics) {
    err << d.format() << '\n';
  }
  for (const auto & line : result.summary_lines) {
    out << line << '\n';
  }
  return result.has_errors() ? kExitDataError : kExitOk;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Triggering-condition and test-case generator for perception systems", "tcgen"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  Overrides o;
  std::string sensor;
  std::string concept_name;
  std::vector<std::string> relations;
  std::string condition_id;
  std::string exposure;
  std::string criticality;
  std::string test_case;
  std::string behavior;
  std::string note;

  auto * validate = app.add_subcommand("validate", "Load and cross-check every input file");
  add_config(*validate, o);

  auto * stages = app.add_subcommand("stages", "Stages a concept reaches on one sensor");
  add_config(*stages, o);
  stages->add_option("--sensor", sensor, "Sensor name")->required();
  stages->add_option("--concept", concept_name, "Focal concept")->required();
  stages->add_option("--relation", relations, "Relation as Kind:Partner (repeatable)");

  auto * matrix = app.add_subcommand("matrix", "Print the generation matrix of one bundle");
  add_config(*matrix, o);
  matrix->add_option("--sensor", sensor, "Sensor name")->required();
  matrix->add_option("--concept", concept_name, "Focal concept")->required();
  matrix->add_option("--relation", relations, "Relation as Kind:Partner (repeatable)");
  matrix->add_option("--format", o.formats, "markdown, csv or json");
  matrix->add_option("--bundle-limit", o.bundle_limit, "Largest relationship bundle");

  auto * generate = app.add_subcommand("generate", "Generate the triggering-condition catalog");
  add_config(*generate, o);
  add_generation_overrides(*generate, o);
  generate->add_option("--format", o.formats, "Catalog formats to write (repeatable)");
  generate->add_option("--ratings", o.ratings, "Ratings file applied after generation");

  auto * assess = app.add_subcommand("assess", "Rate conditions of the stored catalog");
  add_config(*assess, o);
  assess->add_option("--output-dir", o.output_dir, "Output directory");
  assess->add_option("--ratings", o.ratings, "Ratings file");
  assess->add_option("--id", condition_id, "Single condition to rate");
  assess->add_option("--exposure", exposure, "E1..E4 (with --id)");
  assess->add_option("--criticality", criticality, "C1..C4 (with --id)");
  assess->add_flag("--reassess", o.reassess, "Replace existing ratings");

  auto * compose_cmd = app.add_subcommand("compose", "Compose test cases from the catalog");
  add_config(*compose_cmd, o);
  compose_cmd->add_option("--output-dir", o.output_dir, "Output directory");
  compose_cmd->add_option("--format", o.formats, "Sheet formats to write (repeatable)");

  auto * report_cmd = app.add_subcommand("report", "Render the catalog and test cases");
  add_config(*report_cmd, o);
  report_cmd->add_option("--output-dir", o.output_dir, "Output directory");
  report_cmd->add_option("--format", o.formats, "markdown, csv or json");

  auto * record = app.add_subcommand("record", "Append a field outcome to the results ledger");
  add_config(*record, o);
  record->add_option("--output-dir", o.output_dir, "Output directory");
  record->add_option("--test-case", test_case, "Test case id")->required();
  record->add_option("--behavior", behavior, "Observed behavior class")->required();
  record->add_option("--note", note, "Free-text note");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const auto config = resolve_config(o);
    if (validate->parsed()) {
      return report(cmd_validate(config), out, err);
    }
    if (stages->parsed()) {
      for (const auto & s : cmd_stages(config, sensor, concept_name, relations)) {
        out << s << '\n';
      }
      return kExitOk;
    }
    if (matrix->parsed()) {
      out << cmd_matrix(
        config, sensor, concept_name, relations, single_format(o, ReportFormat::Markdown));
      return kExitOk;
    }
    if (generate->parsed()) {
      return report(cmd_generate(config), out, err);
    }
    if (assess->parsed()) {
      if (!condition_id.empty()) {
        const auto e = parse_exposure(exposure);
        const auto c = parse_criticality(criticality);
        if (!e || !c) {
          throw Error(ErrorCode::UsageError, "--id needs --exposure E1..E4 and --criticality C1..C4");
        }
        return report(cmd_assess_one(config, condition_id, {*e, *c}, o.reassess), out, err);
      }
      if (!config.ratings) {
        throw Error(ErrorCode::UsageError, "assess needs --ratings or --id");
      }
      return report(cmd_assess(config, *config.ratings, o.reassess), out, err);
    }
    if (compose_cmd->parsed()) {
      return report(cmd_compose(config), out, err);
    }
    if (report_cmd->parsed()) {
      return report(cmd_report(config, single_format(o, ReportFormat::Markdown)), out, err);
    }
    if (record->parsed()) {
      const auto b = parse_behavior_class(behavior);
      if (!b) {
        throw Error(ErrorCode::UnknownBehavior, "unknown behavior class '" + behavior + "'");
      }
      return report(cmd_record(config, test_case, *b, note), out, err);
    }
  } catch (const Error & e) {
    for (const auto & d : e.diagnostics()) {
      err << d.format() << '\n';
    }
    return e.code() == ErrorCode::UsageError ? kExitUsage : kExitDataError;
  } catch (const std::exception & e) {
    err << "error: " << e.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}

}  // namespace tcgen::cli
