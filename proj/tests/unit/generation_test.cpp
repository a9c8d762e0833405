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


#include "tcgen/generation.hpp"

#include "world.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <string>

namespace tcgen
{
namespace
{

std::set<std::string> ids_of(const GenerationResult & r)
{
  std::set<std::string> out;
  for (const auto & c : r.conditions) {
    out.insert(c.id);
  }
  return out;
}

class ReferenceGeneration : public ::testing::Test
{
protected:
  const Workspace & ws = testing::reference_workspace();

  GenerationMatrix bare_matrix(const char * sensor, const char * concept_name)
  {
    const auto bundle = compose_bundle(*lookup_concept(ws.kb.ontology, concept_name), {});
    return build_matrix(bundle, *ws.system.find_sensor(sensor), ws.kb.effects, ws.kb.ontology, ws.kb.matrix);
  }
};

TEST_F(ReferenceGeneration, ObstacleLidarMatrixShape)
{
  const auto m = bare_matrix("LiDAR", "MovableObstacle");
  EXPECT_EQ(m.rows.size(), lookup_concept(ws.kb.ontology, "MovableObstacle")->properties.size());
  ASSERT_EQ(m.columns.size(), 3u);
  for (const auto & c : m.columns) {
    EXPECT_EQ(c.stage, "SignalReflection");
  }
  EXPECT_EQ(m.cells.size(), m.rows.size() * m.columns.size());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
      EXPECT_EQ(m.at(r, c).property, m.rows[r].property);
      EXPECT_EQ(m.at(r, c).stage_property, m.columns[c].stage_property);
    }
  }
}

TEST_F(ReferenceGeneration, FilterKeepsWorstCasesOnly)
{
  const auto m = bare_matrix("LiDAR", "MovableObstacle");
  const auto at2 = worst_case_filter(m, 2);
  const auto at3 = worst_case_filter(m, 3);
  const auto at1 = worst_case_filter(m, 1);
  EXPECT_LE(at3.kept.size(), at2.kept.size());
  EXPECT_LE(at2.kept.size(), at1.kept.size());
  for (const auto & e : at2.kept) {
    EXPECT_LE(e.degree.value(), -2);
  }
  const bool has_minus_one = std::any_of(at1.kept.begin(), at1.kept.end(), [](const EffectEntry & e) {
    return e.property == "SurfaceMaterial" && e.stage_property == "SignalAmount";
  });
  EXPECT_TRUE(has_minus_one);
}

TEST_F(ReferenceGeneration, ThresholdBounds)
{
  const auto m = bare_matrix("LiDAR", "MovableObstacle");
  for (int t : {0, 4, -2}) {
    try {
      worst_case_filter(m, t);
      FAIL() << t;
    } catch (const Error & e) {
      EXPECT_EQ(e.code(), ErrorCode::ThresholdOutOfRange);
    }
  }
  try {
    generate_catalog(ws.kb, ws.system, {0, 2});
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::ThresholdOutOfRange);
  }
}

TEST_F(ReferenceGeneration, PositiveCellsAreReportedNotGenerated)
{
  const auto m = bare_matrix("Camera", "Pedestrian");
  const auto f = worst_case_filter(m, 2);
  ASSERT_FALSE(f.positive.empty());
  const auto r = generate_catalog(ws.kb, ws.system);
  EXPECT_GT(r.stats.positive_cells, 0u);
  for (const auto & c : r.conditions) {
    EXPECT_LT(c.effect.degree.value(), 0);
  }
}

TEST_F(ReferenceGeneration, HigherThresholdIsSubset)
{
  const auto t1 = ids_of(generate_catalog(ws.kb, ws.system, {1, 2}));
  const auto t2 = ids_of(generate_catalog(ws.kb, ws.system, {2, 2}));
  const auto t3 = ids_of(generate_catalog(ws.kb, ws.system, {3, 2}));
  EXPECT_TRUE(std::includes(t2.begin(), t2.end(), t3.begin(), t3.end()));
  EXPECT_TRUE(std::includes(t1.begin(), t1.end(), t2.begin(), t2.end()));
  EXPECT_LT(t3.size(), t2.size());
}

TEST_F(ReferenceGeneration, BundleLimitZeroHasNoRelations)
{
  const auto r = generate_catalog(ws.kb, ws.system, {2, 0});
  ASSERT_FALSE(r.conditions.empty());
  for (const auto & c : r.conditions) {
    EXPECT_TRUE(c.relationships.empty()) << c.description;
    EXPECT_EQ(c.sources.size(), 1u);
  }
  const auto wider = ids_of(generate_catalog(ws.kb, ws.system, {2, 1}));
  const auto narrow = ids_of(r);
  EXPECT_TRUE(std::includes(wider.begin(), wider.end(), narrow.begin(), narrow.end()));
}

TEST_F(ReferenceGeneration, DistanceTwinsForSensingStagesOnly)
{
  const auto r = generate_catalog(ws.kb, ws.system);
  std::map<std::string, int> twins;
  for (const auto & c : r.conditions) {
    const bool sensing = find_stage(c.affected_stage)->phase == StagePhase::Sensing;
    if (c.distance_augmented) {
      EXPECT_TRUE(sensing);
    }
    auto base = c;
    base.distance_augmented = false;
    twins[condition_identity(base)] += 1;
  }
  for (const auto & c : r.conditions) {
    if (c.distance_augmented) {
      continue;
    }
    const bool sensing = find_stage(c.affected_stage)->phase == StagePhase::Sensing;
    EXPECT_EQ(twins[condition_identity(c)], sensing ? 2 : 1) << c.description;
  }
}

TEST_F(ReferenceGeneration, IdsAreWellFormedAndUnique)
{
  const auto r = generate_catalog(ws.kb, ws.system);
  const std::regex pattern("TC-[0-9a-f]{12}");
  std::set<std::string> ids;
  for (const auto & c : r.conditions) {
    EXPECT_TRUE(std::regex_match(c.id, pattern)) << c.id;
    EXPECT_EQ(c.id, condition_id(c));
    ids.insert(c.id);
  }
  EXPECT_EQ(ids.size(), r.conditions.size());
  EXPECT_TRUE(std::is_sorted(r.conditions.begin(), r.conditions.end(), canonical_less));
}

TEST_F(ReferenceGeneration, IdsIgnoreInputOrder)
{
  auto kb = ws.kb;
  std::mt19937 rng(3);
  std::shuffle(kb.effects.entries.begin(), kb.effects.entries.end(), rng);
  std::shuffle(kb.ontology.concepts.begin(), kb.ontology.concepts.end(), rng);
  const auto a = generate_catalog(ws.kb, ws.system);
  const auto b = generate_catalog(kb, ws.system);
  EXPECT_EQ(ids_of(a), ids_of(b));
  EXPECT_EQ(a.conditions, b.conditions);
}

TEST_F(ReferenceGeneration, MissingTemplatesWarn)
{
  auto kb = ws.kb;
  kb.templates.templates.clear();
  const auto r = generate_catalog(kb, ws.system);
  const auto warnings = std::count_if(r.diagnostics.begin(), r.diagnostics.end(), [](const Diagnostic & d) {
    return d.code == ErrorCode::MissingTemplate && d.severity == Severity::Warning;
  });
  EXPECT_GT(warnings, 0);
  EXPECT_EQ(ids_of(r), ids_of(generate_catalog(ws.kb, ws.system)));
}

TEST_F(ReferenceGeneration, SensorWithoutStagesIsSkipped)
{
  auto system = ws.system;
  system.sensors.front().declared_stages.clear();
  const auto r = generate_catalog(ws.kb, system);
  EXPECT_TRUE(std::any_of(r.diagnostics.begin(), r.diagnostics.end(), [](const Diagnostic & d) {
    return d.code == ErrorCode::EmptySystemStages;
  }));
  for (const auto & c : r.conditions) {
    EXPECT_NE(c.sensor, system.sensors.front().sensor);
  }
}

TEST(ConditionIdentity, Layout)
{
  TriggeringCondition c;
  c.sensor = "LiDAR";
  c.sources = {"RoadSurface", "FloatingObject"};
  RelationshipInstance r;
  r.kind = RelationshipKind::Occlusion;
  r.focal = "RoadSurface";
  r.partner = "FloatingObject";
  c.relationships = {r};
  c.property_owner = "RoadSurface";
  c.source_property = "SurfaceMaterial";
  c.affected_stage = "SignalReflection";
  c.stage_property = "SignalIntensity";
  EXPECT_EQ(condition_identity(c),
            "sensor=LiDAR\nsources=RoadSurface,FloatingObject\n"
            "relations=SpatialPosition.Occlusion(RoadSurface,FloatingObject)\n"
            "property=RoadSurface.SurfaceMaterial\nstage=SignalReflection.SignalIntensity\ndistance=0");
  const auto id = condition_id(c);
  c.description = "changed text";
  c.effect.degree = EffectDegree::of(-1);
  EXPECT_EQ(condition_id(c), id);
  c.distance_augmented = true;
  EXPECT_NE(condition_id(c), id);
}

// Matches the brute-force oracle on worlds other than the acceptance seeds.
TEST(GenerationProperty, AgreesWithOracle)
{
  for (unsigned seed = 500; seed < 560; ++seed) {
    std::mt19937 rng(seed);
    const auto w = testing::random_world(rng);
    for (std::size_t limit : {0u, 1u, 2u}) {
      const auto r = generate_catalog(w.kb, w.system, {2, limit});
      ASSERT_EQ(ids_of(r), testing::oracle_condition_ids(w.kb, w.system, 2, limit))
        << "seed " << seed << " limit " << limit;
    }
  }
}

TEST(GenerationProperty, SkippedBundlesWouldBeEmpty)
{
  std::mt19937 rng(77);
  for (int i = 0; i < 40; ++i) {
    const auto w = testing::random_world(rng);
    const auto r = generate_catalog(w.kb, w.system, {1, 2});
    EXPECT_LE(r.stats.matrices_built, r.stats.bundles_considered);
  }
}

}  // namespace
}  // namespace tcgen
