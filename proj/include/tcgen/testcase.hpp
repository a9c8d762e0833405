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

#ifndef TCGEN__TESTCASE_HPP_
#define TCGEN__TESTCASE_HPP_

#include "tcgen/condition.hpp"
#include "tcgen/document.hpp"
#include "tcgen/ontology.hpp"
#include "tcgen/perception.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// A function-level unsafe outcome used as the backbone of a test scenario.
///
/// `target_class` is the concept the function is about. `related_targets` lists further concepts
/// whose misperception leads to the same event (curbs and roadside structures for obstacle
/// avoidance, for instance).
struct HazardousEvent
{
  std::string id;
  std::string function;
  std::string operational_situation;
  std::string ego_status;
  std::string unintended_behavior;
  std::string pass_criterion;
  std::string target_class;
  std::vector<std::string> related_targets;
  std::string note;

  bool operator==(const HazardousEvent &) const = default;
};

struct HazardousEventSet
{
  std::string schema_version{kSchemaVersion};
  std::vector<HazardousEvent> events;
  bool operator==(const HazardousEventSet &) const = default;
};

HazardousEventSet load_hazardous_events(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name = {});
HazardousEventSet load_hazardous_events_file(
  const std::filesystem::path & path, const SourceOntology & ontology);
HazardousEventSet decode_hazardous_events(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink);
doc::Node encode_hazardous_events(const HazardousEventSet & events);
std::string serialize_hazardous_events(
  const HazardousEventSet & events, doc::Format format = doc::Format::Yaml);
/// Events ordered by id.
HazardousEventSet canonicalize(HazardousEventSet events);

struct TestCase
{
  std::string id;
  std::string event_id;
  std::string function;
  std::vector<std::string> condition_ids;
  std::string sensor;
  std::string condition_description;
  std::string scenario;
  std::string pass_criterion;
  std::string fail_criterion;
  std::optional<int> priority;

  bool operator==(const TestCase &) const = default;
};

struct CompositionPolicy
{
  /// When false, an unrated condition aborts composition with UnratedCondition.
  bool allow_unrated = true;
};

struct CompositionResult
{
  std::vector<TestCase> cases;
  std::vector<Diagnostic> diagnostics;
};

/// Concepts a condition is about: its focal concept when that is an interactive entity, else
/// every intended-functionality target of the system.
std::vector<std::string> perceived_targets(
  const TriggeringCondition & condition, const VehicleSystem & system,
  const SourceOntology & ontology);

/// The event's target class or one of its related targets is `target` or an ancestor of it.
bool is_compatible(
  const HazardousEvent & event, std::string_view target, const SourceOntology & ontology);

/// Pairs every condition with every compatible event. Throws UnknownSensor when a condition's
/// sensor is not part of `system`.
CompositionResult compose(
  const std::vector<TriggeringCondition> & conditions, const std::vector<HazardousEvent> & events,
  const VehicleSystem & system, const SourceOntology & ontology,
  const CompositionPolicy & policy = {});

inline constexpr std::string_view kTestCaseCsvHeader =
  "Test case,Hazardous event,Function,Sensor,Triggering condition,Scenario,Pass criterion,"
  "Fail criterion,Priority";

std::string render_test_cases_csv(const std::vector<TestCase> & cases);
std::string render_test_cases_markdown(const std::vector<TestCase> & cases);
doc::Node encode_test_cases(const std::vector<TestCase> & cases);
std::vector<TestCase> decode_test_cases(const doc::Node & root, DiagnosticSink & sink);
std::vector<TestCase> load_test_cases_file(const std::filesystem::path & path);

// Field outcomes.

enum class BehaviorClass {
  NearCollision,
  RiskyBehaviorWrongClassification,
  HesitantBehavior,
  UnintendedNoHazard,
  Nominal,
};
enum class Verdict { Pass, Marginal, Fail };

inline constexpr BehaviorClass kAllBehaviorClasses[] = {
  BehaviorClass::NearCollision, BehaviorClass::RiskyBehaviorWrongClassification,
  BehaviorClass::HesitantBehavior, BehaviorClass::UnintendedNoHazard, BehaviorClass::Nominal};

std::string_view to_string(BehaviorClass behavior);
std::string_view to_string(Verdict verdict);
std::optional<BehaviorClass> parse_behavior_class(std::string_view text);
Verdict verdict_for(BehaviorClass behavior);

struct OutcomeRecord
{
  std::string test_case_id;
  BehaviorClass behavior = BehaviorClass::Nominal;
  Verdict verdict = Verdict::Pass;
  std::string timestamp;
  std::string note;

  bool operator==(const OutcomeRecord &) const = default;
};

OutcomeRecord outcome_record(
  const TestCase & test_case, BehaviorClass behavior, std::string note = {});

/// UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

/// Append-only JSON-lines log of field outcomes, one record per line.
class ResultsLedger
{
public:
  using Clock = std::function<std::string()>;

  ResultsLedger(
    std::filesystem::path path, std::set<std::string> known_test_cases, Clock clock = utc_timestamp);

  /// Throws UnknownTestCase for ids not in the known set.
  OutcomeRecord append(const TestCase & test_case, BehaviorClass behavior, std::string note = {});
  OutcomeRecord append(std::string_view test_case_id, BehaviorClass behavior, std::string note = {});
  std::vector<OutcomeRecord> records() const;
  const std::filesystem::path & path() const { return path_; }

private:
  std::filesystem::path path_;
  std::set<std::string> known_;
  Clock clock_;
};

}  // namespace tcgen

#endif  // TCGEN__TESTCASE_HPP_
