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

#include "tcgen/perception.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace tcgen
{

namespace
{

constexpr std::string_view kActiveSensingQualities[] = {
  "SignalIntensity", "SignalAmount", "SignalNoise"};
constexpr std::string_view kPassiveSensingQualities[] = {"Brightness", "Contrast", "Purity"};
constexpr std::string_view kRecognitionQualities[] = {
  "Variety", "Similarity", "Contradiction", "Visibility"};

constexpr std::array<PerceptionStage, 9> kStages = {{
  {"SignalTransmission", StagePhase::Sensing, true, false, kActiveSensingQualities},
  {"SignalPropagation", StagePhase::Sensing, true, false, kActiveSensingQualities},
  {"SignalReflection", StagePhase::Sensing, true, false, kActiveSensingQualities},
  {"SignalReceiving", StagePhase::Sensing, true, false, kActiveSensingQualities},
  {"LightReceiving", StagePhase::Sensing, false, true, kPassiveSensingQualities},
  {"FeatureExtraction", StagePhase::Recognition, true, true, kRecognitionQualities},
  {"SemanticSegmentation", StagePhase::Recognition, true, true, kRecognitionQualities},
  {"TargetClassification", StagePhase::Recognition, true, true, kRecognitionQualities},
  {"TargetTracking", StagePhase::Recognition, true, true, kRecognitionQualities},
}};

constexpr std::array<ChainEvent, 5> kChain = {
  ChainEvent::PhysicalInfluence, ChainEvent::UnsatisfyingSignal, ChainEvent::RawDataDegrading,
  ChainEvent::FeatureMissing, ChainEvent::RecognitionError};

}  // namespace

std::string_view to_string(SensorClass sensor_class)
{
  return sensor_class == SensorClass::ActivePerception ? "ActivePerception" : "PassivePerception";
}

std::string_view to_string(StagePhase phase)
{
  return phase == StagePhase::Sensing ? "Sensing" : "Recognition";
}

std::optional<SensorClass> parse_sensor_class(std::string_view text)
{
  if (text == "ActivePerception") {
    return SensorClass::ActivePerception;
  }
  if (text == "PassivePerception") {
    return SensorClass::PassivePerception;
  }
  return std::nullopt;
}

std::span<const PerceptionStage> all_stages() { return kStages; }

const PerceptionStage * find_stage(std::string_view name)
{
  for (const auto & s : kStages) {
    if (s.name == name) {
      return &s;
    }
  }
  return nullptr;
}

std::size_t stage_index(std::string_view name)
{
  for (std::size_t i = 0; i < kStages.size(); ++i) {
    if (kStages[i].name == name) {
      return i;
    }
  }
  return kStages.size();
}

std::vector<std::string> applicable_stages(SensorClass sensor_class)
{
  std::vector<std::string> out;
  for (const auto & s : kStages) {
    if (s.applies_to(sensor_class)) {
      out.emplace_back(s.name);
    }
  }
  return out;
}

bool has_quality_property(const PerceptionStage & stage, std::string_view property)
{
  return std::find(stage.quality_properties.begin(), stage.quality_properties.end(), property) !=
         stage.quality_properties.end();
}

std::string stage_label(std::string_view stage_name)
{
  const auto * stage = find_stage(stage_name);
  const std::string prefix =
    stage != nullptr && stage->phase == StagePhase::Recognition ? "R.-" : "S.-";
  return prefix + display_label(stage_name);
}

std::string_view to_string(ChainEvent event)
{
  switch (event) {
    case ChainEvent::PhysicalInfluence: return "PhysicalInfluence";
    case ChainEvent::UnsatisfyingSignal: return "UnsatisfyingSignal";
    case ChainEvent::RawDataDegrading: return "RawDataDegrading";
    case ChainEvent::FeatureMissing: return "FeatureMissing";
    case ChainEvent::RecognitionError: return "RecognitionError";
  }
  return "?";
}

std::string_view to_string(PropagationPattern pattern)
{
  return pattern == PropagationPattern::PhysicalConditionBased ? "PhysicalConditionBased"
                                                               : "TargetFeatureBased";
}

std::optional<ChainEvent> parse_chain_event(std::string_view text)
{
  for (auto e : kChain) {
    if (to_string(e) == text) {
      return e;
    }
  }
  return std::nullopt;
}

std::optional<ChainEvent> successor(ChainEvent event)
{
  const auto i = static_cast<std::size_t>(event);
  if (i + 1 >= kChain.size()) {
    return std::nullopt;
  }
  return kChain[i + 1];
}

PropagationTrace trace_propagation(ChainEvent root)
{
  PropagationTrace trace;
  const auto start = static_cast<std::size_t>(root);
  trace.events.assign(kChain.begin() + static_cast<std::ptrdiff_t>(start), kChain.end());
  trace.pattern = start < 3 ? PropagationPattern::PhysicalConditionBased
                            : PropagationPattern::TargetFeatureBased;
  return trace;
}

PropagationTrace trace_propagation(std::string_view root_name)
{
  const auto root = parse_chain_event(root_name);
  if (!root) {
    throw Error(ErrorCode::UnknownEvent, "unknown chain event '" + std::string(root_name) + "'");
  }
  return trace_propagation(*root);
}

bool PerceptionSystemSpec::declares(std::string_view stage) const
{
  return std::find(declared_stages.begin(), declared_stages.end(), stage) !=
         declared_stages.end();
}

const PerceptionSystemSpec * VehicleSystem::find_sensor(std::string_view sensor) const
{
  for (const auto & s : sensors) {
    if (s.sensor == sensor) {
      return &s;
    }
  }
  return nullptr;
}

VehicleSystem canonicalize(VehicleSystem system)
{
  for (auto & s : system.sensors) {
    std::sort(s.declared_stages.begin(), s.declared_stages.end(), [](const auto & a, const auto & b) {
      return stage_index(a) < stage_index(b);
    });
  }
  std::stable_sort(system.sensors.begin(), system.sensors.end(), [](const auto & a, const auto & b) {
    return a.sensor < b.sensor;
  });
  return system;
}

VehicleSystem decode_vehicle_system(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  VehicleSystem system;
  if (!dec.expect_mapping(root, "system document") || !dec.check_version(root, kSchemaVersion)) {
    return system;
  }
  system.name = dec.string_field(root, "name", false).value_or("");

  std::set<std::string> sensor_names;
  for (const auto & node : dec.node_list(root, "sensors")) {
    if (!dec.expect_mapping(node, "sensor")) {
      continue;
    }
    PerceptionSystemSpec spec;
    const auto name = dec.string_field(node, "sensor");
    const auto class_text = dec.string_field(node, "class");
    if (!name || !class_text) {
      continue;
    }
    spec.sensor = *name;
    if (!is_identifier(spec.sensor)) {
      dec.error(node, ErrorCode::InvalidValue, "sensor name '" + spec.sensor + "' is not an identifier");
    }
    if (!sensor_names.insert(spec.sensor).second) {
      dec.error(node, ErrorCode::DuplicateName, "duplicate sensor '" + spec.sensor + "'");
    }
    const auto sensor_class = parse_sensor_class(*class_text);
    if (!sensor_class) {
      dec.error(*node.find("class"), ErrorCode::InvalidValue,
                "unknown sensor class '" + *class_text + "'");
      continue;
    }
    spec.sensor_class = *sensor_class;
    spec.working_principle = dec.string_field(node, "working_principle", false).value_or("");
    spec.operational_design_domain = dec.string_list(node, "operational_design_domain");

    std::set<std::string> seen_stages;
    for (const auto & stage_name : dec.string_list(node, "declared_stages")) {
      const auto * stage = find_stage(stage_name);
      if (stage == nullptr) {
        dec.error(node, ErrorCode::UnknownStage,
                  "sensor '" + spec.sensor + "' declares unknown stage '" + stage_name + "'");
        continue;
      }
      if (!stage->applies_to(spec.sensor_class)) {
        dec.error(node, ErrorCode::StageNotApplicable,
                  "stage '" + stage_name + "' does not apply to " +
                    std::string(to_string(spec.sensor_class)) + " sensor '" + spec.sensor + "'");
        continue;
      }
      if (!seen_stages.insert(stage_name).second) {
        dec.error(node, ErrorCode::DuplicateName,
                  "sensor '" + spec.sensor + "' declares stage '" + stage_name + "' twice");
        continue;
      }
      spec.declared_stages.push_back(stage_name);
    }
    if (spec.declared_stages.empty()) {
      dec.warning(node, ErrorCode::EmptySystemStages,
                  "sensor '" + spec.sensor + "' declares no perception stages");
    }

    for (const auto & fnode : dec.node_list(node, "intended_functionality")) {
      if (!dec.expect_mapping(fnode, "intended function")) {
        continue;
      }
      const auto target = dec.string_field(fnode, "target");
      const auto task = dec.string_field(fnode, "task");
      if (!target || !task) {
        continue;
      }
      if (lookup_concept(ontology, *target) == nullptr) {
        dec.error(fnode, ErrorCode::UnresolvedTarget,
                  "intended-functionality target '" + *target + "' of sensor '" + spec.sensor +
                    "' is not in the source ontology");
        continue;
      }
      spec.intended_functionality.push_back(IntendedFunction{*target, *task});
    }
    system.sensors.push_back(std::move(spec));
  }
  return canonicalize(std::move(system));
}

VehicleSystem load_vehicle_system(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name)
{
  DiagnosticSink sink(source_name);
  auto system = decode_vehicle_system(doc::parse(text, format, source_name), ontology, sink);
  sink.throw_if_errors();
  return system;
}

VehicleSystem load_vehicle_system_file(
  const std::filesystem::path & path, const SourceOntology & ontology)
{
  return load_vehicle_system(
    doc::read_file(path), doc::format_for_path(path), ontology, path.string());
}

doc::Node encode_vehicle_system(const VehicleSystem & input)
{
  const auto system = canonicalize(input);
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(system.schema_version));
  root.set("name", doc::Node::string(system.name));
  auto & sensors = root.set("sensors", doc::Node::sequence());
  for (const auto & s : system.sensors) {
    auto node = doc::Node::mapping();
    node.set("sensor", doc::Node::string(s.sensor));
    node.set("class", doc::Node::string(std::string(to_string(s.sensor_class))));
    if (!s.working_principle.empty()) {
      node.set("working_principle", doc::Node::string(s.working_principle));
    }
    auto & stages = node.set("declared_stages", doc::Node::sequence());
    for (const auto & st : s.declared_stages) {
      stages.push_back(doc::Node::string(st));
    }
    auto & functions = node.set("intended_functionality", doc::Node::sequence());
    for (const auto & f : s.intended_functionality) {
      auto fnode = doc::Node::mapping();
      fnode.set("target", doc::Node::string(f.target));
      fnode.set("task", doc::Node::string(f.task));
      functions.push_back(std::move(fnode));
    }
    auto & odd = node.set("operational_design_domain", doc::Node::sequence());
    for (const auto & tag : s.operational_design_domain) {
      odd.push_back(doc::Node::string(tag));
    }
    sensors.push_back(std::move(node));
  }
  return root;
}

std::string serialize_vehicle_system(const VehicleSystem & system, doc::Format format)
{
  return doc::emit(encode_vehicle_system(system), format);
}

namespace
{

bool matches_obstruction(
  const RelationshipInstance & r, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix)
{
  if (!r.involves_sensor()) {
    return false;
  }
  return std::any_of(
    matrix.obstruction_triggers.begin(), matrix.obstruction_triggers.end(),
    [&](const ObstructionTrigger & t) {
      return t.kind == r.kind && t.focal.matches(ontology, r.focal);
    });
}

}  // namespace

std::vector<std::string> affected_stages(
  const SourceConcept & source, std::span<const RelationshipInstance> relations,
  const PerceptionSystemSpec & system, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix)
{
  if (system.declared_stages.empty()) {
    throw Error(
      ErrorCode::EmptySystemStages, "sensor '" + system.sensor + "' declares no perception stages");
  }
  const bool active = system.sensor_class == SensorClass::ActivePerception;
  std::set<std::string_view> stages;
  auto add_recognition = [&] {
    for (const auto & s : all_stages()) {
      if (s.phase == StagePhase::Recognition) {
        stages.insert(s.name);
      }
    }
  };

  if (is_entity(source.kind) && source.has_category(PropertyCategory::ReflectionAreaRelated)) {
    stages.insert(active ? "SignalReflection" : "LightReceiving");
  }
  if (source.kind == ConceptKind::InteractiveEntity) {
    add_recognition();
  }
  if (source.kind == ConceptKind::EnvironmentalModification) {
    stages.insert(active ? "SignalPropagation" : "LightReceiving");
  }
  for (const auto & r : relations) {
    if (r.focal == source.name && matches_obstruction(r, ontology, matrix)) {
      if (active) {
        stages.insert("SignalTransmission");
        stages.insert("SignalReceiving");
      } else {
        stages.insert("LightReceiving");
      }
    }
    if (r.partner == source.name && source.kind != ConceptKind::InteractiveEntity) {
      const auto * focal = lookup_concept(ontology, r.focal);
      if (focal != nullptr && focal->kind == ConceptKind::InteractiveEntity) {
        add_recognition();
      }
    }
  }

  std::vector<std::string> out;
  for (const auto & s : all_stages()) {
    if (stages.count(s.name) != 0 && s.applies_to(system.sensor_class) && system.declares(s.name)) {
      out.emplace_back(s.name);
    }
  }
  return out;
}

}  // namespace tcgen
