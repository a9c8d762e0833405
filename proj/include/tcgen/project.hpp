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

#ifndef TCGEN__PROJECT_HPP_
#define TCGEN__PROJECT_HPP_

#include "tcgen/assessment.hpp"
#include "tcgen/catalog.hpp"
#include "tcgen/generation.hpp"
#include "tcgen/perception.hpp"
#include "tcgen/testcase.hpp"

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tcgen
{

enum class ReportFormat { Json, Csv, Markdown };
std::string_view to_string(ReportFormat format);
std::optional<ReportFormat> parse_report_format(std::string_view text);

/// Project file. Relative paths are resolved against the directory holding the file.
struct ProjectConfig
{
  std::filesystem::path config_path;
  std::filesystem::path source_ontology;
  std::filesystem::path compatibility_matrix;
  std::filesystem::path effects;
  std::filesystem::path system;
  std::filesystem::path hazardous_events;
  std::filesystem::path templates;
  std::optional<std::filesystem::path> ratings;
  std::filesystem::path output_dir;
  std::filesystem::path results_ledger;
  int threshold = kDefaultThreshold;
  std::size_t bundle_limit = kDefaultBundleLimit;
  std::vector<ReportFormat> formats{ReportFormat::Json, ReportFormat::Csv, ReportFormat::Markdown};
  bool allow_unrated = true;
  std::optional<int> reference_total;
};

/// Throws UsageError for an empty file, and Error with diagnostics for bad fields.
ProjectConfig load_project_config(const std::filesystem::path & path);

/// Everything loaded from a project's input files.
struct Workspace
{
  KnowledgeBase kb;
  VehicleSystem system;
  HazardousEventSet events;
};

Workspace load_workspace(const ProjectConfig & config);

struct FileDigest
{
  std::string path;
  std::string sha256;
};

/// Record of one command run. Everything except `started` and `duration_ms` is a function of the
/// inputs.
struct RunManifest
{
  std::string tool = "tcgen";
  std::string version;
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  std::vector<std::pair<std::string, std::int64_t>> summary;
  std::string started;
  std::int64_t duration_ms = 0;
};

std::string serialize_manifest(const RunManifest & manifest);
FileDigest digest_file(const std::filesystem::path & path, const std::filesystem::path & base);

struct CommandResult
{
  std::vector<Diagnostic> diagnostics;
  std::vector<std::filesystem::path> outputs;
  std::vector<std::string> summary_lines;
  RunManifest manifest;

  bool has_errors() const;
};

std::string_view tool_version();

/// Runs every loader and collects all diagnostics instead of stopping at the first failing file.
CommandResult cmd_validate(const ProjectConfig & config);
/// Generates, rates (when a ratings file is configured) and writes the catalog.
CommandResult cmd_generate(const ProjectConfig & config);
/// Applies a ratings file to the stored catalog and rewrites it in ranked order.
CommandResult cmd_assess(
  const ProjectConfig & config, const std::filesystem::path & ratings, bool reassess);
/// Rates a single condition of the stored catalog.
CommandResult cmd_assess_one(
  const ProjectConfig & config, const std::string & condition_id, const AssessmentClass & rating,
  bool reassess);
CommandResult cmd_compose(const ProjectConfig & config);
/// Writes report.<ext> in the output directory.
CommandResult cmd_report(const ProjectConfig & config, ReportFormat format);
CommandResult cmd_record(
  const ProjectConfig & config, const std::string & test_case_id, BehaviorClass behavior,
  const std::string & note);

/// Stages a concept reaches on one sensor, given "Kind:Partner" relation specs.
std::vector<std::string> cmd_stages(
  const ProjectConfig & config, const std::string & sensor, const std::string & concept_name,
  const std::vector<std::string> & relation_specs);
/// Rendered generation matrix for one bundle.
std::string cmd_matrix(
  const ProjectConfig & config, const std::string & sensor, const std::string & concept_name,
  const std::vector<std::string> & relation_specs, ReportFormat format);

/// Output file names inside the output directory.
inline constexpr std::string_view kCatalogStem = "catalog";
inline constexpr std::string_view kTestCaseStem = "testcases";

}  // namespace tcgen

#endif  // TCGEN__PROJECT_HPP_
