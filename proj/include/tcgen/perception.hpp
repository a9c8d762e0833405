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

#ifndef TCGEN__PERCEPTION_HPP_
#define TCGEN__PERCEPTION_HPP_

#include "tcgen/document.hpp"
#include "tcgen/ontology.hpp"
#include "tcgen/relationship.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

enum class SensorClass { ActivePerception, PassivePerception };
enum class StagePhase { Sensing, Recognition };

std::string_view to_string(SensorClass sensor_class);
std::string_view to_string(StagePhase phase);
std::optional<SensorClass> parse_sensor_class(std::string_view text);

/// A node of the (closed) perception-stage ontology.
struct PerceptionStage
{
  std::string_view name;
  StagePhase phase;
  bool active;
  bool passive;
  std::span<const std::string_view> quality_properties;

  bool applies_to(SensorClass sensor_class) const
  {
    return sensor_class == SensorClass::ActivePerception ? active : passive;
  }
};

/// All stages in pipeline order: the four active sensing stages, light receiving, then the four
/// recognition stages.
std::span<const PerceptionStage> all_stages();
const PerceptionStage * find_stage(std::string_view name);
/// Position in all_stages(); used as the canonical stage order.
std::size_t stage_index(std::string_view name);
std::vector<std::string> applicable_stages(SensorClass sensor_class);
bool has_quality_property(const PerceptionStage & stage, std::string_view property);

/// "S.-Light receiving", "R.-Target classification"
std::string stage_label(std::string_view stage_name);

// Propagation chain of a perception error.

enum class ChainEvent {
  PhysicalInfluence,
  UnsatisfyingSignal,
  RawDataDegrading,
  FeatureMissing,
  RecognitionError,
};

enum class PropagationPattern { PhysicalConditionBased, TargetFeatureBased };

std::string_view to_string(ChainEvent event);
std::string_view to_string(PropagationPattern pattern);
std::optional<ChainEvent> parse_chain_event(std::string_view text);

/// Successor on the chain, or nullopt for RecognitionError.
std::optional<ChainEvent> successor(ChainEvent event);

struct PropagationTrace
{
  std::vector<ChainEvent> events;
  PropagationPattern pattern;

  bool operator==(const PropagationTrace &) const = default;
};

/// Suffix of the five-event chain starting at `root`. Roots on the sensing side (the first three
/// events) are physical-condition based; the rest are target-feature based.
PropagationTrace trace_propagation(ChainEvent root);
/// Throws UnknownEvent for names that are not chain events.
PropagationTrace trace_propagation(std::string_view root_name);

// Declared perception system.

struct IntendedFunction
{
  std::string target;
  std::string task;

  bool operator==(const IntendedFunction &) const = default;
};

struct PerceptionSystemSpec
{
  std::string sensor;
  SensorClass sensor_class = SensorClass::PassivePerception;
  std::vector<std::string> declared_stages;
  std::vector<IntendedFunction> intended_functionality;
  std::vector<std::string> operational_design_domain;
  std::string working_principle;

  bool declares(std::string_view stage) const;

  bool operator==(const PerceptionSystemSpec &) const = default;
};

/// The sensor set of one vehicle.
struct VehicleSystem
{
  std::string schema_version{kSchemaVersion};
  std::string name;
  std::vector<PerceptionSystemSpec> sensors;

  const PerceptionSystemSpec * find_sensor(std::string_view sensor) const;

  bool operator==(const VehicleSystem &) const = default;
};

VehicleSystem load_vehicle_system(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name = {});
VehicleSystem load_vehicle_system_file(
  const std::filesystem::path & path, const SourceOntology & ontology);
VehicleSystem decode_vehicle_system(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink);
doc::Node encode_vehicle_system(const VehicleSystem & system);
std::string serialize_vehicle_system(
  const VehicleSystem & system, doc::Format format = doc::Format::Yaml);
/// Sensors by name; declared stages in pipeline order. Intended functionality and ODD keep
/// their authored order.
VehicleSystem canonicalize(VehicleSystem system);

/// Stages of `system` that `source` can affect, given the relations it participates in. Rules:
///  - entities with a reflection-area property reach the reflection stage (light receiving for
///    passive sensors);
///  - interactive entities reach every recognition stage;
///  - environmental modifications reach signal propagation (light receiving);
///  - a relation matching an obstruction trigger (source on the sensor) reaches signal
///    transmission and receiving (light receiving);
///  - other sources reach recognition stages only as partner of a relation whose focal concept is
///    an interactive entity.
/// The result is intersected with the declared stages and returned in pipeline order.
/// Throws EmptySystemStages if the sensor declares no stages.
std::vector<std::string> affected_stages(
  const SourceConcept & source, std::span<const RelationshipInstance> relations,
  const PerceptionSystemSpec & system, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix);

}  // namespace tcgen

#endif  // TCGEN__PERCEPTION_HPP_
