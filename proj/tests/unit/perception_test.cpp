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

#include "world.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

namespace tcgen
{
namespace
{

using Stages = std::vector<std::string>;

TEST(Stages, ClassApplicability)
{
  EXPECT_EQ(
    applicable_stages(SensorClass::ActivePerception),
    (Stages{"SignalTransmission", "SignalPropagation", "SignalReflection", "SignalReceiving",
            "FeatureExtraction", "SemanticSegmentation", "TargetClassification", "TargetTracking"}));
  EXPECT_EQ(
    applicable_stages(SensorClass::PassivePerception),
    (Stages{"LightReceiving", "FeatureExtraction", "SemanticSegmentation", "TargetClassification",
            "TargetTracking"}));
}

TEST(Stages, QualityProperties)
{
  const auto * reflection = find_stage("SignalReflection");
  ASSERT_NE(reflection, nullptr);
  EXPECT_TRUE(has_quality_property(*reflection, "SignalIntensity"));
  EXPECT_FALSE(has_quality_property(*reflection, "Contrast"));
  const auto * light = find_stage("LightReceiving");
  EXPECT_TRUE(has_quality_property(*light, "Purity"));
  EXPECT_EQ(find_stage("Radar"), nullptr);
  EXPECT_LT(stage_index("SignalTransmission"), stage_index("TargetTracking"));
  EXPECT_EQ(stage_label("TargetClassification"), "R.-Target classification");
  EXPECT_EQ(stage_label("SignalReflection"), "S.-Signal reflection");
}

TEST(Propagation, PhysicalChainRunsToRecognitionError)
{
  const auto trace = trace_propagation(ChainEvent::PhysicalInfluence);
  EXPECT_EQ(trace.pattern, PropagationPattern::PhysicalConditionBased);
  ASSERT_EQ(trace.events.size(), 5u);
  EXPECT_EQ(trace.events.back(), ChainEvent::RecognitionError);
}

TEST(Propagation, FeatureChainSkipsSignalEvents)
{
  const auto trace = trace_propagation("FeatureMissing");
  EXPECT_EQ(trace.pattern, PropagationPattern::TargetFeatureBased);
  EXPECT_EQ(trace.events, (std::vector<ChainEvent>{ChainEvent::FeatureMissing, ChainEvent::RecognitionError}));
  EXPECT_FALSE(successor(ChainEvent::RecognitionError));
  EXPECT_EQ(successor(ChainEvent::UnsatisfyingSignal), ChainEvent::RawDataDegrading);
  try {
    trace_propagation("Explosion");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownEvent);
  }
}

class ReferenceStages : public ::testing::Test
{
protected:
  const Workspace & ws = testing::reference_workspace();

  Stages stages(const std::string & sensor, const std::string & concept_name,
                const std::vector<std::pair<RelationshipKind, std::string>> & relations = {})
  {
    const auto & o = ws.kb.ontology;
    const auto * focal = lookup_concept(o, concept_name);
    std::vector<RelationshipInstance> rs;
    for (const auto & [kind, partner] : relations) {
      rs.push_back(partner == kSensorName
                     ? instantiate_sensor_relationship(kind, *focal, ws.kb.matrix, o)
                     : instantiate_relationship(kind, *focal, *lookup_concept(o, partner), ws.kb.matrix, o));
    }
    return affected_stages(*focal, rs, *ws.system.find_sensor(sensor), o, ws.kb.matrix);
  }
};

TEST_F(ReferenceStages, InteractiveEntityOnCamera)
{
  EXPECT_EQ(stages("Camera", "Pedestrian"),
            (Stages{"LightReceiving", "FeatureExtraction", "TargetClassification"}));
}

TEST_F(ReferenceStages, LidarDeclaresNoRecognition)
{
  EXPECT_EQ(stages("LiDAR", "MovableObstacle"), Stages{"SignalReflection"});
}

TEST_F(ReferenceStages, ModificationReachesPropagation)
{
  EXPECT_EQ(stages("LiDAR", "Rainfall"), Stages{"SignalPropagation"});
  EXPECT_EQ(stages("Camera", "Rainfall"), Stages{"LightReceiving"});
}

TEST_F(ReferenceStages, SensorCoverBlocksTransmissionAndReceiving)
{
  EXPECT_EQ(
    stages("LiDAR", "Rainfall", {{RelationshipKind::Cover, std::string(kSensorName)}}),
    (Stages{"SignalTransmission", "SignalPropagation", "SignalReceiving"}));
  EXPECT_EQ(
    stages("Camera", "Leaf", {{RelationshipKind::Occlusion, std::string(kSensorName)}}),
    Stages{"LightReceiving"});
}

TEST(SystemSpec, LoadsReference)
{
  const auto & ws = testing::reference_workspace();
  ASSERT_EQ(ws.system.sensors.size(), 2u);
  const auto * camera = ws.system.find_sensor("Camera");
  ASSERT_NE(camera, nullptr);
  EXPECT_EQ(camera->sensor_class, SensorClass::PassivePerception);
  EXPECT_TRUE(camera->declares("TargetClassification"));
  EXPECT_FALSE(camera->declares("SignalReflection"));
  EXPECT_EQ(ws.system.find_sensor("Radar"), nullptr);
}

ErrorCode system_error(const std::string & body)
{
  const auto & o = testing::reference_workspace().kb.ontology;
  try {
    load_vehicle_system("schema_version: \"1.0\"\nname: V\nsensors:\n" + body, doc::Format::Yaml, o);
  } catch (const Error & e) {
    return e.code();
  }
  return ErrorCode::UsageError;
}

TEST(SystemSpec, Errors)
{
  EXPECT_EQ(system_error("  - {sensor: Cam, class: PassivePerception, declared_stages: [SignalReflection]}\n"),
            ErrorCode::StageNotApplicable);
  EXPECT_EQ(system_error("  - {sensor: Cam, class: PassivePerception, declared_stages: [Dreaming]}\n"),
            ErrorCode::UnknownStage);
  EXPECT_EQ(system_error("  - sensor: Cam\n    class: PassivePerception\n    declared_stages: [LightReceiving]\n"
                         "    intended_functionality: [{target: Dragon, task: x}]\n"),
            ErrorCode::UnresolvedTarget);
  EXPECT_EQ(system_error("  - {sensor: Cam, class: Sonar, declared_stages: []}\n"), ErrorCode::InvalidValue);
  EXPECT_EQ(system_error("  - {sensor: Cam, class: PassivePerception}\n"
                         "  - {sensor: Cam, class: PassivePerception}\n"),
            ErrorCode::DuplicateName);
}

TEST(SystemSpec, EmptyStagesRejectedByStageQuery)
{
  const auto & ws = testing::reference_workspace();
  PerceptionSystemSpec spec;
  spec.sensor = "Idle";
  try {
    affected_stages(*lookup_concept(ws.kb.ontology, "Pedestrian"), {}, spec, ws.kb.ontology, ws.kb.matrix);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySystemStages);
  }
}

// Recognition stages need an interactive focal concept; sensing stages never cross classes.
TEST(StageProperty, RecognitionNeedsInteractiveFocal)
{
  std::mt19937 rng(99);
  for (int i = 0; i < 300; ++i) {
    const auto world = testing::random_world(rng, {10, 8, 0, 2});
    const auto & o = world.kb.ontology;
    for (const auto & source : o.concepts) {
      const auto candidates = candidate_relationships(source, world.kb.matrix, o);
      std::vector<RelationshipInstance> relations(
        candidates.begin(), candidates.begin() + std::min<std::size_t>(2, candidates.size()));
      for (const auto & sensor : world.system.sensors) {
        for (const auto & s : affected_stages(source, relations, sensor, o, world.kb.matrix)) {
          const auto * stage = find_stage(s);
          ASSERT_TRUE(stage->applies_to(sensor.sensor_class)) << s;
          ASSERT_TRUE(sensor.declares(s)) << s;
          if (stage->phase == StagePhase::Recognition) {
            ASSERT_EQ(source.kind, ConceptKind::InteractiveEntity) << source.name << " " << s;
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace tcgen
