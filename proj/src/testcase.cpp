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

#include "tcgen/testcase.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "tcgen/catalog.hpp"

namespace tcgen
{

HazardousEventSet decode_hazardous_events(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  HazardousEventSet set;
  if (!dec.expect_mapping(root, "hazardous events document") ||
      !dec.check_version(root, kSchemaVersion)) {
    return set;
  }
  std::map<std::string, int> seen;
  for (const auto & node : dec.node_list(root, "events")) {
    if (!dec.expect_mapping(node, "hazardous event")) {
      continue;
    }
    const auto id = dec.string_field(node, "id");
    const auto function = dec.string_field(node, "function");
    const auto situation = dec.string_field(node, "operational_situation");
    const auto ego = dec.string_field(node, "ego_status");
    const auto behavior = dec.string_field(node, "unintended_behavior");
    const auto pass = dec.string_field(node, "pass_criterion");
    const auto target = dec.string_field(node, "target_class");
    if (!id || !function || !situation || !ego || !behavior || !pass || !target) {
      continue;
    }
    HazardousEvent e{*id,     *function, *situation, *ego, *behavior,
                     *pass,   *target,   dec.string_list(node, "related_targets"),
                     dec.string_field(node, "note", false).value_or("")};
    if (!seen.emplace(e.id, node.mark.line).second) {
      dec.error(node, ErrorCode::DuplicateName, "duplicate hazardous event id '" + e.id + "'");
    }
    if (lookup_concept(ontology, e.target_class) == nullptr) {
      dec.error(node, ErrorCode::UnknownConcept,
                "event '" + e.id + "' targets unknown concept '" + e.target_class + "'");
    }
    for (const auto & t : e.related_targets) {
      if (lookup_concept(ontology, t) == nullptr) {
        dec.error(node, ErrorCode::UnknownConcept,
                  "event '" + e.id + "' relates to unknown concept '" + t + "'");
      }
    }
    set.events.push_back(std::move(e));
  }
  return canonicalize(std::move(set));
}

HazardousEventSet load_hazardous_events(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name)
{
  DiagnosticSink sink(source_name);
  auto set = decode_hazardous_events(doc::parse(text, format, source_name), ontology, sink);
  sink.throw_if_errors();
  return set;
}

HazardousEventSet load_hazardous_events_file(
  const std::filesystem::path & path, const SourceOntology & ontology)
{
  return load_hazardous_events(
    doc::read_file(path), doc::format_for_path(path), ontology, path.string());
}

doc::Node encode_hazardous_events(const HazardousEventSet & set)
{
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(set.schema_version));
  auto & list = root.set("events", doc::Node::sequence());
  for (const auto & e : set.events) {
    auto node = doc::Node::mapping();
    node.set("id", doc::Node::string(e.id));
    node.set("function", doc::Node::string(e.function));
    node.set("operational_situation", doc::Node::string(e.operational_situation));
    node.set("ego_status", doc::Node::string(e.ego_status));
    node.set("unintended_behavior", doc::Node::string(e.unintended_behavior));
    node.set("pass_criterion", doc::Node::string(e.pass_criterion));
    node.set("target_class", doc::Node::string(e.target_class));
    if (!e.related_targets.empty()) {
      auto & related = node.set("related_targets", doc::Node::sequence());
      for (const auto & t : e.related_targets) {
        related.push_back(doc::Node::string(t));
      }
    }
    if (!e.note.empty()) {
      node.set("note", doc::Node::string(e.note));
    }
    list.push_back(std::move(node));
  }
  return root;
}

std::string serialize_hazardous_events(const HazardousEventSet & set, doc::Format format)
{
  return doc::emit(encode_hazardous_events(set), format);
}

HazardousEventSet canonicalize(HazardousEventSet set)
{
  std::stable_sort(set.events.begin(), set.events.end(), [](const auto & a, const auto & b) {
    return a.id < b.id;
  });
  return set;
}

std::vector<std::string> perceived_targets(
  const TriggeringCondition & condition, const VehicleSystem & system,
  const SourceOntology & ontology)
{
  const auto * focal = lookup_concept(ontology, condition.focal());
  if (focal != nullptr && focal->kind == ConceptKind::InteractiveEntity) {
    return {focal->name};
  }
  std::set<std::string> targets;
  for (const auto & sensor : system.sensors) {
    for (const auto & f : sensor.intended_functionality) {
      targets.insert(f.target);
    }
  }
  return {targets.begin(), targets.end()};
}

bool is_compatible(
  const HazardousEvent & event, std::string_view target, const SourceOntology & ontology)
{
  if (is_same_or_descendant(ontology, target, event.target_class)) {
    return true;
  }
  return std::any_of(
    event.related_targets.begin(), event.related_targets.end(),
    [&](const std::string & related) { return is_same_or_descendant(ontology, target, related); });
}

CompositionResult compose(
  const std::vector<TriggeringCondition> & conditions, const std::vector<HazardousEvent> & events,
  const VehicleSystem & system, const SourceOntology & ontology, const CompositionPolicy & policy)
{
  CompositionResult out;
  if (events.empty()) {
    Diagnostic d;
    d.severity = Severity::Warning;
    d.code = ErrorCode::NoCompatibleEvent;
    d.message = "no hazardous events given; no test cases composed";
    out.diagnostics.push_back(std::move(d));
    return out;
  }
  struct Pending
  {
    const HazardousEvent * event;
    const TriggeringCondition * condition;
  };
  std::vector<Pending> pairs;
  for (const auto & c : conditions) {
    if (system.find_sensor(c.sensor) == nullptr) {
      throw Error(
        ErrorCode::UnknownSensor,
        "condition " + c.id + " names sensor '" + c.sensor + "' absent from the system");
    }
    if (!c.assessment && !policy.allow_unrated) {
      throw Error(ErrorCode::UnratedCondition, "condition " + c.id + " is unrated");
    }
    const auto targets = perceived_targets(c, system, ontology);
    bool matched = false;
    for (const auto & e : events) {
      const bool ok = std::any_of(targets.begin(), targets.end(), [&](const std::string & t) {
        return is_compatible(e, t, ontology);
      });
      if (ok) {
        pairs.push_back({&e, &c});
        matched = true;
      }
    }
    if (!matched) {
      Diagnostic d;
      d.severity = Severity::Warning;
      d.code = ErrorCode::NoCompatibleEvent;
      d.message = "condition " + c.id + " (" + c.focal() + ") matches no hazardous event";
      out.diagnostics.push_back(std::move(d));
    }
  }

  std::sort(pairs.begin(), pairs.end(), [](const Pending & a, const Pending & b) {
    const int pa = a.condition->priority.value_or(0);
    const int pb = b.condition->priority.value_or(0);
    return std::tie(a.event->id, pb, a.condition->id) < std::tie(b.event->id, pa, b.condition->id);
  });
  for (const auto & [event, condition] : pairs) {
    TestCase t;
    t.id = event->id + ":" + condition->id;
    t.event_id = event->id;
    t.function = event->function;
    t.condition_ids = {condition->id};
    t.sensor = condition->sensor;
    t.condition_description = condition->description;
    t.scenario = event->operational_situation + "; " + event->ego_status +
                 ". Triggering condition: " + condition->description;
    t.pass_criterion = event->pass_criterion;
    t.fail_criterion = event->unintended_behavior;
    t.priority = condition->priority;
    out.cases.push_back(std::move(t));
  }
  return out;
}

namespace
{

std::string md_cell(std::string_view text)
{
  std::string out;
  for (char ch : text) {
    out += ch == '|' ? std::string("\\|") : std::string(1, ch == '\n' ? ' ' : ch);
  }
  return out;
}

std::string priority_text(const TestCase & t)
{
  return t.priority ? std::to_string(*t.priority) : std::string("unrated");
}

}  // namespace

std::string render_test_cases_csv(const std::vector<TestCase> & cases)
{
  std::ostringstream out;
  out << kTestCaseCsvHeader << '\n';
  for (const auto & t : cases) {
    out << csv_field(t.id) << ',' << csv_field(t.event_id) << ',' << csv_field(t.function) << ','
        << csv_field(t.sensor) << ',' << csv_field(t.condition_description) << ','
        << csv_field(t.scenario) << ',' << csv_field(t.pass_criterion) << ','
        << csv_field(t.fail_criterion) << ',' << csv_field(priority_text(t)) << '\n';
  }
  return out.str();
}

std::string render_test_cases_markdown(const std::vector<TestCase> & cases)
{
  std::ostringstream out;
  out << "| Test case | Hazardous event | Function | Sensor | Triggering condition | Scenario | "
         "Pass criterion | Fail criterion | Priority |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const auto & t : cases) {
    out << "| " << md_cell(t.id) << " | " << md_cell(t.event_id) << " | " << md_cell(t.function)
        << " | " << md_cell(t.sensor) << " | " << md_cell(t.condition_description) << " | "
        << md_cell(t.scenario) << " | " << md_cell(t.pass_criterion) << " | "
        << md_cell(t.fail_criterion) << " | " << priority_text(t) << " |\n";
  }
  return out.str();
}

doc::Node encode_test_cases(const std::vector<TestCase> & cases)
{
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(std::string(kSchemaVersion)));
  auto & list = root.set("test_cases", doc::Node::sequence());
  for (const auto & t : cases) {
    auto node = doc::Node::mapping();
    node.set("id", doc::Node::string(t.id));
    node.set("event", doc::Node::string(t.event_id));
    node.set("function", doc::Node::string(t.function));
    auto & ids = node.set("conditions", doc::Node::sequence());
    for (const auto & id : t.condition_ids) {
      ids.push_back(doc::Node::string(id));
    }
    node.set("sensor", doc::Node::string(t.sensor));
    node.set("condition_description", doc::Node::string(t.condition_description));
    node.set("scenario", doc::Node::string(t.scenario));
    node.set("pass_criterion", doc::Node::string(t.pass_criterion));
    node.set("fail_criterion", doc::Node::string(t.fail_criterion));
    if (t.priority) {
      node.set("priority", doc::Node::integer(*t.priority));
    }
    list.push_back(std::move(node));
  }
  return root;
}

std::vector<TestCase> decode_test_cases(const doc::Node & root, DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  std::vector<TestCase> cases;
  if (!dec.expect_mapping(root, "test cases document") || !dec.check_version(root, kSchemaVersion)) {
    return cases;
  }
  for (const auto & node : dec.node_list(root, "test_cases")) {
    if (!dec.expect_mapping(node, "test case")) {
      continue;
    }
    TestCase t;
    const auto id = dec.string_field(node, "id");
    const auto event = dec.string_field(node, "event");
    if (!id || !event) {
      continue;
    }
    t.id = *id;
    t.event_id = *event;
    t.function = dec.string_field(node, "function", false).value_or("");
    t.condition_ids = dec.string_list(node, "conditions");
    t.sensor = dec.string_field(node, "sensor", false).value_or("");
    t.condition_description = dec.string_field(node, "condition_description", false).value_or("");
    t.scenario = dec.string_field(node, "scenario", false).value_or("");
    t.pass_criterion = dec.string_field(node, "pass_criterion", false).value_or("");
    t.fail_criterion = dec.string_field(node, "fail_criterion", false).value_or("");
    if (const auto p = dec.int_field(node, "priority", false)) {
      t.priority = static_cast<int>(*p);
    }
    cases.push_back(std::move(t));
  }
  return cases;
}

std::vector<TestCase> load_test_cases_file(const std::filesystem::path & path)
{
  DiagnosticSink sink(path.string());
  auto cases = decode_test_cases(doc::load_file(path), sink);
  sink.throw_if_errors();
  return cases;
}

std::string_view to_string(BehaviorClass behavior)
{
  switch (behavior) {
    case BehaviorClass::NearCollision:
      return "NearCollision";
    case BehaviorClass::RiskyBehaviorWrongClassification:
      return "RiskyBehaviorWrongClassification";
    case BehaviorClass::HesitantBehavior:
      return "HesitantBehavior";
    case BehaviorClass::UnintendedNoHazard:
      return "UnintendedNoHazard";
    case BehaviorClass::Nominal:
      return "Nominal";
  }
  return "Nominal";
}

std::string_view to_string(Verdict verdict)
{
  switch (verdict) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Marginal:
      return "marginal";
    case Verdict::Fail:
      return "fail";
  }
  return "pass";
}

std::optional<BehaviorClass> parse_behavior_class(std::string_view text)
{
  for (auto b : kAllBehaviorClasses) {
    if (to_string(b) == text) {
      return b;
    }
  }
  return std::nullopt;
}

Verdict verdict_for(BehaviorClass behavior)
{
  switch (behavior) {
    case BehaviorClass::NearCollision:
    case BehaviorClass::RiskyBehaviorWrongClassification:
      return Verdict::Fail;
    case BehaviorClass::HesitantBehavior:
    case BehaviorClass::UnintendedNoHazard:
      return Verdict::Marginal;
    case BehaviorClass::Nominal:
      return Verdict::Pass;
  }
  return Verdict::Fail;
}

OutcomeRecord outcome_record(const TestCase & test_case, BehaviorClass behavior, std::string note)
{
  return {test_case.id, behavior, verdict_for(behavior), {}, std::move(note)};
}

std::string utc_timestamp()
{
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ResultsLedger::ResultsLedger(
  std::filesystem::path path, std::set<std::string> known_test_cases, Clock clock)
: path_(std::move(path)), known_(std::move(known_test_cases)), clock_(std::move(clock))
{
}

OutcomeRecord ResultsLedger::append(
  const TestCase & test_case, BehaviorClass behavior, std::string note)
{
  return append(std::string_view(test_case.id), behavior, std::move(note));
}

OutcomeRecord ResultsLedger::append(
  std::string_view test_case_id, BehaviorClass behavior, std::string note)
{
  if (known_.count(std::string(test_case_id)) == 0) {
    throw Error(ErrorCode::UnknownTestCase, "unknown test case '" + std::string(test_case_id) + "'");
  }
  OutcomeRecord record{
    std::string(test_case_id), behavior, verdict_for(behavior), clock_(), std::move(note)};
  nlohmann::ordered_json line;
  line["test_case"] = record.test_case_id;
  line["behavior"] = std::string(to_string(record.behavior));
  line["verdict"] = std::string(to_string(record.verdict));
  line["timestamp"] = record.timestamp;
  if (!record.note.empty()) {
    line["note"] = record.note;
  }
  if (!path_.parent_path().empty()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open results ledger " + path_.string());
  }
  out << line.dump() << '\n';
  return record;
}

std::vector<OutcomeRecord> ResultsLedger::records() const
{
  std::vector<OutcomeRecord> out;
  std::ifstream in(path_, std::ios::binary);
  std::string text;
  int line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.empty()) {
      continue;
    }
    const auto json = nlohmann::json::parse(text, nullptr, false);
    const auto behavior = json.is_object() && json.contains("behavior") && json["behavior"].is_string()
                            ? parse_behavior_class(json["behavior"].get<std::string>())
                            : std::nullopt;
    if (!behavior || !json.contains("test_case") || !json["test_case"].is_string()) {
      Diagnostic d;
      d.code = ErrorCode::UnknownBehavior;
      d.message = "malformed ledger record";
      d.file = path_.string();
      d.line = line_no;
      throw Error(std::move(d));
    }
    OutcomeRecord r;
    r.test_case_id = json["test_case"].get<std::string>();
    r.behavior = *behavior;
    r.verdict = verdict_for(*behavior);
    r.timestamp = json.value("timestamp", "");
    r.note = json.value("note", "");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tcgen
