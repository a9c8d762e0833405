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

#include "tcgen/project.hpp"

#include "tcgen/digest.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tcgen
{

namespace fs = std::filesystem;

std::string_view to_string(ReportFormat format)
{
  switch (format) {
    case ReportFormat::Json:
      return "json";
    case ReportFormat::Csv:
      return "csv";
    case ReportFormat::Markdown:
      return "markdown";
  }
  return "json";
}

std::optional<ReportFormat> parse_report_format(std::string_view text)
{
  if (text == "json") {
    return ReportFormat::Json;
  }
  if (text == "csv") {
    return ReportFormat::Csv;
  }
  if (text == "markdown" || text == "md") {
    return ReportFormat::Markdown;
  }
  return std::nullopt;
}

std::string_view tool_version()
{
  return TCGEN_VERSION;
}

namespace
{

std::string_view extension(ReportFormat format)
{
  switch (format) {
    case ReportFormat::Json:
      return ".json";
    case ReportFormat::Csv:
      return ".csv";
    case ReportFormat::Markdown:
      return ".md";
  }
  return ".json";
}

bool is_blank(std::string_view text)
{
  return std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string display_path(const fs::path & path, const fs::path & base)
{
  std::error_code ec;
  const auto rel = fs::relative(path, base, ec);
  return (ec || rel.empty() ? path : rel).generic_string();
}

fs::path config_dir(const ProjectConfig & config)
{
  return config.config_path.parent_path();
}

}  // namespace

ProjectConfig load_project_config(const fs::path & path)
{
  const auto text = doc::read_file(path);
  if (is_blank(text)) {
    throw Error(Diagnostic{
      Severity::Error, ErrorCode::UsageError, "project file is empty", path.string()});
  }
  const auto root = doc::parse(text, doc::format_for_path(path), path.string());
  DiagnosticSink sink(path.string());
  doc::Decoder dec(sink);
  ProjectConfig config;
  config.config_path = path;
  const auto base = path.parent_path();
  if (!dec.expect_mapping(root, "project document") || !dec.check_version(root, kSchemaVersion)) {
    sink.throw_if_errors();
  }

  auto input = [&](std::string_view key, fs::path & target) {
    if (const auto value = dec.string_field(root, key)) {
      target = (base / *value).lexically_normal();
      if (!fs::exists(target)) {
        dec.error(*root.find(key), ErrorCode::IoError,
                  std::string(key) + " file '" + target.string() + "' does not exist");
      }
    }
  };
  input("source_ontology", config.source_ontology);
  input("compatibility_matrix", config.compatibility_matrix);
  input("effects", config.effects);
  input("system", config.system);
  input("hazardous_events", config.hazardous_events);
  input("templates", config.templates);
  if (root.find("ratings") != nullptr) {
    fs::path ratings;
    input("ratings", ratings);
    config.ratings = ratings;
  }
  config.output_dir =
    (base / dec.string_field(root, "output_dir", false).value_or("out")).lexically_normal();
  if (const auto ledger = dec.string_field(root, "results_ledger", false)) {
    config.results_ledger = (base / *ledger).lexically_normal();
  } else {
    config.results_ledger = config.output_dir / "results.jsonl";
  }
  if (const auto threshold = dec.int_field(root, "threshold", false)) {
    if (*threshold < 1 || *threshold > 3) {
      dec.error(*root.find("threshold"), ErrorCode::ThresholdOutOfRange,
                "threshold must be between 1 and 3");
    }
    config.threshold = static_cast<int>(*threshold);
  }
  if (const auto limit = dec.int_field(root, "bundle_limit", false)) {
    if (*limit < 0) {
      dec.error(*root.find("bundle_limit"), ErrorCode::InvalidValue, "bundle_limit must be >= 0");
    } else {
      config.bundle_limit = static_cast<std::size_t>(*limit);
    }
  }
  if (root.find("formats") != nullptr) {
    config.formats.clear();
    for (const auto & name : dec.string_list(root, "formats")) {
      if (const auto format = parse_report_format(name)) {
        config.formats.push_back(*format);
      } else {
        dec.error(*root.find("formats"), ErrorCode::UnknownFormat, "unknown format '" + name + "'");
      }
    }
  }
  if (const auto allow = dec.bool_field(root, "allow_unrated", false)) {
    config.allow_unrated = *allow;
  }
  if (const auto total = dec.int_field(root, "reference_total", false)) {
    config.reference_total = static_cast<int>(*total);
  }
  sink.throw_if_errors();
  return config;
}

namespace
{

SourceOntology load_ontology(const ProjectConfig & c)
{
  return load_source_ontology_file(c.source_ontology);
}

KnowledgeBase load_kb(const ProjectConfig & c)
{
  KnowledgeBase kb;
  kb.ontology = load_ontology(c);
  kb.matrix = load_compatibility_matrix_file(c.compatibility_matrix, kb.ontology);
  kb.effects = load_effects_file(c.effects, kb.ontology, kb.matrix);
  kb.templates = load_templates_file(c.templates, kb.ontology);
  return kb;
}

}  // namespace

Workspace load_workspace(const ProjectConfig & config)
{
  Workspace ws;
  ws.kb = load_kb(config);
  ws.system = load_vehicle_system_file(config.system, ws.kb.ontology);
  ws.events = load_hazardous_events_file(config.hazardous_events, ws.kb.ontology);
  return ws;
}

FileDigest digest_file(const fs::path & path, const fs::path & base)
{
  return {display_path(path, base), sha256_hex(doc::read_file(path))};
}

std::string serialize_manifest(const RunManifest & m)
{
  auto root = doc::Node::mapping();
  root.set("tool", doc::Node::string(m.tool));
  root.set("version", doc::Node::string(m.version));
  root.set("command", doc::Node::string(m.command));
  auto & params = root.set("parameters", doc::Node::mapping());
  for (const auto & [k, v] : m.parameters) {
    params.set(k, doc::Node::string(v));
  }
  auto digests = [](const std::vector<FileDigest> & files) {
    auto list = doc::Node::sequence();
    for (const auto & f : files) {
      auto node = doc::Node::mapping();
      node.set("path", doc::Node::string(f.path));
      node.set("sha256", doc::Node::string(f.sha256));
      list.push_back(std::move(node));
    }
    return list;
  };
  root.set("inputs", digests(m.inputs));
  root.set("outputs", digests(m.outputs));
  auto & summary = root.set("summary", doc::Node::mapping());
  for (const auto & [k, v] : m.summary) {
    summary.set(k, doc::Node::integer(v));
  }
  auto & timing = root.set("timing", doc::Node::mapping());
  timing.set("started", doc::Node::string(m.started));
  timing.set("duration_ms", doc::Node::integer(m.duration_ms));
  return doc::emit(root, doc::Format::Json);
}

bool CommandResult::has_errors() const
{
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic & d) {
    return d.severity == Severity::Error;
  });
}

namespace
{

/// Collects inputs before anything is processed and writes the manifest last.
class Run
{
public:
  Run(const ProjectConfig & config, std::string command)
  : config_(config), start_(std::chrono::steady_clock::now())
  {
    result.manifest.version = std::string(tool_version());
    result.manifest.command = std::move(command);
    result.manifest.started = utc_timestamp();
    input(config_.config_path);
  }

  void param(std::string key, std::string value)
  {
    result.manifest.parameters.emplace_back(std::move(key), std::move(value));
  }

  void input(const fs::path & path)
  {
    if (fs::exists(path)) {
      result.manifest.inputs.push_back(digest_file(path, base_for(path)));
    }
  }

  void write(const fs::path & path, std::string_view content)
  {
    doc::write_file(path, content);
    result.outputs.push_back(path);
    result.manifest.outputs.push_back({display_path(path, base_for(path)), sha256_hex(content)});
  }

  void summary(std::string key, std::int64_t value)
  {
    result.manifest.summary.emplace_back(std::move(key), value);
  }

  void add_diagnostics(const std::vector<Diagnostic> & diagnostics)
  {
    result.diagnostics.insert(result.diagnostics.end(), diagnostics.begin(), diagnostics.end());
  }

  CommandResult finish()
  {
    result.manifest.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                    std::chrono::steady_clock::now() - start_)
                                    .count();
    const auto path = config_.output_dir / ("manifest-" + result.manifest.command + ".json");
    doc::write_file(path, serialize_manifest(result.manifest));
    result.outputs.push_back(path);
    return std::move(result);
  }

  CommandResult result;

private:
  // Files under the output directory are named relative to it, so moving the output
  // directory does not change the manifest.
  fs::path base_for(const fs::path & path) const
  {
    const auto rel = fs::weakly_canonical(path).lexically_relative(
      fs::weakly_canonical(config_.output_dir));
    const bool inside = !rel.empty() && *rel.begin() != "..";
    return inside ? config_.output_dir : config_dir(config_);
  }

  const ProjectConfig & config_;
  std::chrono::steady_clock::time_point start_;
};

void common_params(Run & run, const ProjectConfig & config)
{
  run.param("config", config.config_path.filename().generic_string());
  run.param("threshold", std::to_string(config.threshold));
  run.param("bundle_limit", std::to_string(config.bundle_limit));
  std::string formats;
  for (auto f : config.formats) {
    formats += (formats.empty() ? "" : ",") + std::string(to_string(f));
  }
  run.param("formats", formats);
}

void write_catalog(Run & run, const ProjectConfig & config, const Catalog & catalog)
{
  const auto stem = config.output_dir / std::string(kCatalogStem);
  run.write(fs::path(stem).replace_extension(".json"), serialize_catalog(catalog, doc::Format::Json));
  for (auto f : config.formats) {
    if (f == ReportFormat::Csv) {
      run.write(fs::path(stem).replace_extension(".csv"), render_catalog_csv(catalog.conditions));
    } else if (f == ReportFormat::Markdown) {
      run.write(
        fs::path(stem).replace_extension(".md"), render_catalog_markdown(catalog.conditions));
    }
  }
}

fs::path catalog_path(const ProjectConfig & config)
{
  return config.output_dir / (std::string(kCatalogStem) + ".json");
}

fs::path test_case_path(const ProjectConfig & config)
{
  return config.output_dir / (std::string(kTestCaseStem) + ".json");
}

Catalog read_catalog(const ProjectConfig & config)
{
  const auto path = catalog_path(config);
  if (!fs::exists(path)) {
    throw Error(Diagnostic{
      Severity::Error, ErrorCode::IoError, "condition catalog not found; run 'generate' first",
      path.string()});
  }
  return load_catalog_file(path);
}

void rating_summary(Run & run, const std::vector<TriggeringCondition> & conditions)
{
  const auto rated = std::count_if(
    conditions.begin(), conditions.end(), [](const auto & c) { return c.assessment.has_value(); });
  run.summary("rated", rated);
  run.summary("unrated", static_cast<std::int64_t>(conditions.size()) - rated);
}

template <typename F>
void collect(std::vector<Diagnostic> & out, F && step)
{
  try {
    step();
  } catch (const Error & e) {
    out.insert(out.end(), e.diagnostics().begin(), e.diagnostics().end());
  }
}

}  // namespace

CommandResult cmd_validate(const ProjectConfig & config)
{
  Run run(config, "validate");
  common_params(run, config);
  for (const auto * p : {&config.source_ontology, &config.compatibility_matrix, &config.effects,
                         &config.system, &config.hazardous_events, &config.templates}) {
    run.input(*p);
  }
  if (config.ratings) {
    run.input(*config.ratings);
  }

  std::vector<Diagnostic> diagnostics;
  auto decode = [&](const fs::path & path, auto && decoder) {
    collect(diagnostics, [&] {
      DiagnosticSink sink(path.string());
      const auto root = doc::load_file(path);
      decoder(root, sink);
      diagnostics.insert(diagnostics.end(), sink.diagnostics().begin(), sink.diagnostics().end());
    });
  };

  std::optional<SourceOntology> ontology;
  std::optional<CompatibilityMatrix> matrix;
  collect(diagnostics, [&] {
    DiagnosticSink sink(config.source_ontology.string());
    auto o = decode_source_ontology(doc::load_file(config.source_ontology), sink);
    diagnostics.insert(diagnostics.end(), sink.diagnostics().begin(), sink.diagnostics().end());
    if (!sink.has_errors()) {
      ontology = std::move(o);
    }
  });
  if (!ontology) {
    Diagnostic d;
    d.severity = Severity::Warning;
    d.code = ErrorCode::InvalidValue;
    d.message = "remaining files not checked because the source ontology is invalid";
    diagnostics.push_back(std::move(d));
  } else {
    collect(diagnostics, [&] {
      DiagnosticSink sink(config.compatibility_matrix.string());
      auto m = decode_compatibility_matrix(doc::load_file(config.compatibility_matrix), *ontology, sink);
      diagnostics.insert(diagnostics.end(), sink.diagnostics().begin(), sink.diagnostics().end());
      if (!sink.has_errors()) {
        matrix = std::move(m);
      }
    });
    if (matrix) {
      decode(config.effects, [&](const doc::Node & root, DiagnosticSink & sink) {
        return decode_effects(root, *ontology, *matrix, sink);
      });
    }
    decode(config.system, [&](const doc::Node & root, DiagnosticSink & sink) {
      return decode_vehicle_system(root, *ontology, sink);
    });
    decode(config.hazardous_events, [&](const doc::Node & root, DiagnosticSink & sink) {
      return decode_hazardous_events(root, *ontology, sink);
    });
    decode(config.templates, [&](const doc::Node & root, DiagnosticSink & sink) {
      return decode_templates(root, *ontology, sink);
    });
    if (config.ratings) {
      decode(*config.ratings, [&](const doc::Node & root, DiagnosticSink & sink) {
        return decode_ratings(root, *ontology, sink);
      });
    }
  }
  run.add_diagnostics(diagnostics);
  const auto errors = std::count_if(diagnostics.begin(), diagnostics.end(), [](const auto & d) {
    return d.severity == Severity::Error;
  });
  run.summary("errors", errors);
  run.summary("warnings", static_cast<std::int64_t>(diagnostics.size()) - errors);
  run.result.summary_lines.push_back(
    std::to_string(errors) + " error(s), " + std::to_string(diagnostics.size() - errors) +
    " warning(s)");
  return run.finish();
}

CommandResult cmd_generate(const ProjectConfig & config)
{
  Run run(config, "generate");
  common_params(run, config);
  run.param("ratings", config.ratings ? display_path(*config.ratings, config_dir(config)) : "");
  for (const auto * p : {&config.source_ontology, &config.compatibility_matrix, &config.effects,
                         &config.system, &config.templates}) {
    run.input(*p);
  }
  if (config.ratings) {
    run.input(*config.ratings);
  }

  const auto kb = load_kb(config);
  const auto system = load_vehicle_system_file(config.system, kb.ontology);
  auto generated = generate_catalog(kb, system, {config.threshold, config.bundle_limit});
  run.add_diagnostics(generated.diagnostics);

  Catalog catalog;
  catalog.system = system.name;
  catalog.threshold = config.threshold;
  catalog.bundle_limit = config.bundle_limit;
  catalog.conditions = std::move(generated.conditions);
  if (config.ratings) {
    const auto ratings = load_ratings_file(*config.ratings, kb.ontology);
    catalog.conditions = rank(apply_ratings(std::move(catalog.conditions), ratings).conditions);
  }
  write_catalog(run, config, catalog);

  const auto total = static_cast<std::int64_t>(catalog.conditions.size());
  const auto distance = std::count_if(
    catalog.conditions.begin(), catalog.conditions.end(),
    [](const auto & c) { return c.distance_augmented; });
  run.summary("total", total);
  run.summary("base_conditions", total - distance);
  run.summary("distance_augmented", distance);
  if (config.reference_total) {
    run.summary("reference_total", *config.reference_total);
    run.summary("delta", total - *config.reference_total);
  }
  run.summary("bundles_considered", static_cast<std::int64_t>(generated.stats.bundles_considered));
  run.summary("matrices_built", static_cast<std::int64_t>(generated.stats.matrices_built));
  run.summary("positive_cells", static_cast<std::int64_t>(generated.stats.positive_cells));
  rating_summary(run, catalog.conditions);

  std::string line = "generated " + std::to_string(total) + " triggering conditions (" +
                     std::to_string(total - distance) + " base, " + std::to_string(distance) +
                     " distance-augmented)";
  if (config.reference_total) {
    line += "; reference total " + std::to_string(*config.reference_total) + ", delta " +
            std::to_string(total - *config.reference_total);
  }
  run.result.summary_lines.push_back(line);
  for (const auto & sensor : system.sensors) {
    const auto n = std::count_if(
      catalog.conditions.begin(), catalog.conditions.end(),
      [&](const auto & c) { return c.sensor == sensor.sensor; });
    run.result.summary_lines.push_back("  " + sensor.sensor + ": " + std::to_string(n));
  }
  return run.finish();
}

CommandResult cmd_assess(const ProjectConfig & config, const fs::path & ratings_path, bool reassess)
{
  Run run(config, "assess");
  common_params(run, config);
  run.param("ratings", display_path(ratings_path, config_dir(config)));
  run.param("reassess", reassess ? "true" : "false");
  run.input(config.source_ontology);
  run.input(catalog_path(config));
  run.input(ratings_path);

  const auto ontology = load_ontology(config);
  auto catalog = read_catalog(config);
  const auto ratings = load_ratings_file(ratings_path, ontology);
  auto applied = apply_ratings(std::move(catalog.conditions), ratings, reassess);
  catalog.conditions = rank(std::move(applied.conditions));
  write_catalog(run, config, catalog);
  rating_summary(run, catalog.conditions);
  run.result.summary_lines.push_back(
    "rated " + std::to_string(applied.rated) + ", unrated " + std::to_string(applied.unrated));
  return run.finish();
}

CommandResult cmd_assess_one(
  const ProjectConfig & config, const std::string & condition_id, const AssessmentClass & rating,
  bool reassess)
{
  Run run(config, "assess");
  common_params(run, config);
  run.param("condition", condition_id);
  run.param(
    "rating", std::string(to_string(rating.exposure)) + "/" + std::string(to_string(rating.criticality)));
  run.param("reassess", reassess ? "true" : "false");
  run.input(catalog_path(config));

  auto catalog = read_catalog(config);
  auto it = std::find_if(catalog.conditions.begin(), catalog.conditions.end(), [&](const auto & c) {
    return c.id == condition_id;
  });
  if (it == catalog.conditions.end()) {
    throw Error(ErrorCode::InvalidValue, "no condition with id '" + condition_id + "' in catalog");
  }
  *it = assess(std::move(*it), rating, reassess);
  catalog.conditions = rank(std::move(catalog.conditions));
  write_catalog(run, config, catalog);
  rating_summary(run, catalog.conditions);
  run.result.summary_lines.push_back(
    condition_id + " rated " + std::string(to_string(rating.exposure)) + "/" +
    std::string(to_string(rating.criticality)) + ", priority " +
    std::to_string(priority_of(rating)));
  return run.finish();
}

CommandResult cmd_compose(const ProjectConfig & config)
{
  Run run(config, "compose");
  common_params(run, config);
  run.param("allow_unrated", config.allow_unrated ? "true" : "false");
  for (const auto * p : {&config.source_ontology, &config.system, &config.hazardous_events}) {
    run.input(*p);
  }
  run.input(catalog_path(config));

  const auto ontology = load_ontology(config);
  const auto system = load_vehicle_system_file(config.system, ontology);
  const auto events = load_hazardous_events_file(config.hazardous_events, ontology);
  const auto catalog = read_catalog(config);
  auto composed =
    compose(catalog.conditions, events.events, system, ontology, {config.allow_unrated});
  run.add_diagnostics(composed.diagnostics);

  const auto stem = config.output_dir / std::string(kTestCaseStem);
  run.write(
    fs::path(stem).replace_extension(".json"),
    doc::emit(encode_test_cases(composed.cases), doc::Format::Json));
  for (auto f : config.formats) {
    if (f == ReportFormat::Csv) {
      run.write(fs::path(stem).replace_extension(".csv"), render_test_cases_csv(composed.cases));
    } else if (f == ReportFormat::Markdown) {
      run.write(
        fs::path(stem).replace_extension(".md"), render_test_cases_markdown(composed.cases));
    }
  }

  run.summary("test_cases", static_cast<std::int64_t>(composed.cases.size()));
  run.summary("conditions", static_cast<std::int64_t>(catalog.conditions.size()));
  run.result.summary_lines.push_back(
    "composed " + std::to_string(composed.cases.size()) + " test cases from " +
    std::to_string(catalog.conditions.size()) + " conditions and " +
    std::to_string(events.events.size()) + " hazardous events");
  for (const auto & e : events.events) {
    const auto n = std::count_if(composed.cases.begin(), composed.cases.end(), [&](const auto & t) {
      return t.event_id == e.id;
    });
    run.summary("event." + e.id, n);
    run.result.summary_lines.push_back("  " + e.id + ": " + std::to_string(n));
  }
  return run.finish();
}

CommandResult cmd_report(const ProjectConfig & config, ReportFormat format)
{
  Run run(config, "report");
  common_params(run, config);
  run.param("format", std::string(to_string(format)));
  run.input(catalog_path(config));
  const bool have_cases = fs::exists(test_case_path(config));
  if (have_cases) {
    run.input(test_case_path(config));
  }

  const auto catalog = read_catalog(config);
  const auto cases = have_cases ? load_test_cases_file(test_case_path(config)) : std::vector<TestCase>{};
  const auto path = config.output_dir / ("report" + std::string(extension(format)));

  if (format == ReportFormat::Csv) {
    run.write(path, render_catalog_csv(catalog.conditions));
  } else if (format == ReportFormat::Json) {
    auto root = encode_catalog(catalog);
    root.set("test_cases", encode_test_cases(cases).entries().back().second);
    run.write(path, doc::emit(root, doc::Format::Json));
  } else {
    for (const auto * p : {&config.source_ontology, &config.compatibility_matrix, &config.effects,
                           &config.system}) {
      run.input(*p);
    }
    const auto kb = load_kb(config);
    const auto system = load_vehicle_system_file(config.system, kb.ontology);
    std::ostringstream md;
    md << "# Triggering condition report\n\n";
    md << "System: " << catalog.system << "  \n";
    md << "Threshold: " << catalog.threshold << ", bundle limit: " << catalog.bundle_limit
       << "  \n";
    md << "Conditions: " << catalog.conditions.size() << ", test cases: " << cases.size()
       << "\n\n";
    md << "## Triggering conditions\n\n" << render_catalog_markdown(catalog.conditions) << '\n';
    md << "## Test cases\n\n" << render_test_cases_markdown(cases) << '\n';
    md << "## Generation matrices\n\n";
    const EffectIndex index(kb.effects);
    std::set<std::pair<std::string, std::string>> seen;
    auto ordered = catalog.conditions;
    std::sort(ordered.begin(), ordered.end(), canonical_less);
    for (const auto & c : ordered) {
      const auto * focal = lookup_concept(kb.ontology, c.focal());
      const auto * sensor = system.find_sensor(c.sensor);
      if (focal == nullptr || sensor == nullptr) {
        continue;
      }
      const auto bundle = compose_bundle(*focal, c.relationships, c.relationships.size());
      if (!seen.emplace(c.sensor, c.focal() + "|" + bundle.key()).second) {
        continue;
      }
      md << render_matrix_markdown(build_matrix(bundle, *sensor, index, kb.ontology, kb.matrix))
         << '\n';
    }
    run.write(path, md.str());
  }
  run.summary("conditions", static_cast<std::int64_t>(catalog.conditions.size()));
  run.summary("test_cases", static_cast<std::int64_t>(cases.size()));
  run.result.summary_lines.push_back("wrote " + path.generic_string());
  return run.finish();
}

CommandResult cmd_record(
  const ProjectConfig & config, const std::string & test_case_id, BehaviorClass behavior,
  const std::string & note)
{
  Run run(config, "record");
  run.param("test_case", test_case_id);
  run.param("behavior", std::string(to_string(behavior)));
  const auto path = test_case_path(config);
  if (!fs::exists(path)) {
    throw Error(Diagnostic{
      Severity::Error, ErrorCode::IoError, "test cases not found; run 'compose' first",
      path.string()});
  }
  run.input(path);
  std::set<std::string> known;
  for (const auto & t : load_test_cases_file(path)) {
    known.insert(t.id);
  }
  ResultsLedger ledger(config.results_ledger, std::move(known));
  const auto record = ledger.append(test_case_id, behavior, note);
  run.summary("records", static_cast<std::int64_t>(ledger.records().size()));
  run.result.outputs.push_back(config.results_ledger);
  run.result.summary_lines.push_back(
    record.test_case_id + ": " + std::string(to_string(record.behavior)) + " -> " +
    std::string(to_string(record.verdict)));
  return run.finish();
}

namespace
{

std::vector<RelationshipInstance> parse_relations(
  const SourceConcept & focal, const std::vector<std::string> & specs,
  const CompatibilityMatrix & matrix, const SourceOntology & ontology)
{
  std::vector<RelationshipInstance> out;
  for (const auto & spec : specs) {
    const auto parsed = parse_relation_spec(spec);
    if (!parsed) {
      throw Error(
        ErrorCode::UsageError, "relation '" + spec + "' is not of the form Kind:Partner");
    }
    const auto & [kind, partner_name] = *parsed;
    if (partner_name == kSensorName) {
      out.push_back(instantiate_sensor_relationship(kind, focal, matrix, ontology));
      continue;
    }
    const auto * partner = lookup_concept(ontology, partner_name);
    if (partner == nullptr) {
      throw Error(ErrorCode::UnknownConcept, "unknown concept '" + partner_name + "'");
    }
    out.push_back(instantiate_relationship(kind, focal, *partner, matrix, ontology));
  }
  return out;
}

struct Query
{
  SourceOntology ontology;
  CompatibilityMatrix matrix;
  VehicleSystem system;
  const SourceConcept * focal = nullptr;
  const PerceptionSystemSpec * sensor = nullptr;
};

void resolve(Query & q, const std::string & sensor, const std::string & concept_name)
{
  q.sensor = q.system.find_sensor(sensor);
  if (q.sensor == nullptr) {
    throw Error(ErrorCode::UnknownSensor, "unknown sensor '" + sensor + "'");
  }
  q.focal = lookup_concept(q.ontology, concept_name);
  if (q.focal == nullptr) {
    throw Error(ErrorCode::UnknownConcept, "unknown concept '" + concept_name + "'");
  }
}

}  // namespace

std::vector<std::string> cmd_stages(
  const ProjectConfig & config, const std::string & sensor, const std::string & concept_name,
  const std::vector<std::string> & relation_specs)
{
  Query q;
  q.ontology = load_ontology(config);
  q.matrix = load_compatibility_matrix_file(config.compatibility_matrix, q.ontology);
  q.system = load_vehicle_system_file(config.system, q.ontology);
  resolve(q, sensor, concept_name);
  const auto relations = parse_relations(*q.focal, relation_specs, q.matrix, q.ontology);
  return affected_stages(*q.focal, relations, *q.sensor, q.ontology, q.matrix);
}

std::string cmd_matrix(
  const ProjectConfig & config, const std::string & sensor, const std::string & concept_name,
  const std::vector<std::string> & relation_specs, ReportFormat format)
{
  Query q;
  q.ontology = load_ontology(config);
  q.matrix = load_compatibility_matrix_file(config.compatibility_matrix, q.ontology);
  q.system = load_vehicle_system_file(config.system, q.ontology);
  const auto effects = load_effects_file(config.effects, q.ontology, q.matrix);
  resolve(q, sensor, concept_name);
  const auto relations = parse_relations(*q.focal, relation_specs, q.matrix, q.ontology);
  const auto bundle =
    compose_bundle(*q.focal, relations, std::max(config.bundle_limit, relations.size()));
  const auto matrix = build_matrix(bundle, *q.sensor, effects, q.ontology, q.matrix);
  switch (format) {
    case ReportFormat::Markdown:
      return render_matrix_markdown(matrix);
    case ReportFormat::Csv:
      return render_matrix_csv(matrix);
    case ReportFormat::Json:
      break;
  }
  auto root = doc::Node::mapping();
  root.set("sensor", doc::Node::string(matrix.sensor));
  root.set("focal", doc::Node::string(bundle.focal));
  root.set("relations", doc::Node::string(bundle.key()));
  auto & rows = root.set("rows", doc::Node::sequence());
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    auto row = doc::Node::mapping();
    row.set("owner", doc::Node::string(matrix.rows[r].owner));
    row.set("property", doc::Node::string(matrix.rows[r].property));
    auto & cells = row.set("cells", doc::Node::sequence());
    for (std::size_t c = 0; c < matrix.columns.size(); ++c) {
      auto cell = doc::Node::mapping();
      cell.set("stage", doc::Node::string(matrix.columns[c].stage));
      cell.set("stage_property", doc::Node::string(matrix.columns[c].stage_property));
      cell.set("degree", doc::Node::integer(matrix.at(r, c).degree.value()));
      cells.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  return doc::emit(root, doc::Format::Json);
}

}  // namespace tcgen
