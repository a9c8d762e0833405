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


#include "tcgen/relationship.hpp"

#include "world.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <string>

namespace tcgen
{
namespace
{

constexpr const char * kOntology = R"(schema_version: "1.0"
concepts:
  - name: Pedestrian
    kind: InteractiveEntity
    properties:
      - {name: Color, category: ReflectivityRelated}
      - {name: Posture, category: ReflectionAreaRelated}
      - {name: Accessory, category: FeatureVariabilityRelated}
  - name: Structure
    kind: InteractiveEntity
    properties:
      - {name: Shape, category: ReflectionAreaRelated}
  - name: Barrel
    kind: InteractiveEntity
    parent: Structure
    properties:
      - {name: Color, category: ReflectivityRelated}
  - name: Leaf
    kind: DisturbingEntity
    properties:
      - {name: Shape, category: ReflectionAreaRelated}
  - name: Rain
    kind: EnvironmentalModification
    properties:
      - {name: Density, category: TransmittanceRelated}
)";

constexpr const char * kMatrix = R"(schema_version: "1.0"
entries:
  - {focal: "kind:InteractiveEntity", partner: "kind:InteractiveEntity", kinds: [SpatialPosition.Occlusion], source: t}
  - {focal: "kind:InteractiveEntity", partner: "family:Structure", kinds: [SpatialPosition.Occlusion, Possess], source: t}
  - {focal: "name:Pedestrian", partner: "name:Barrel", kinds: [CognitiveFeature], source: t}
  - {focal: "*", partner: "name:Rain", kinds: [SurfaceTreatment.Cover], source: t}
  - {focal: "kind:DisturbingEntity", partner: sensor, kinds: [SpatialPosition.Occlusion], source: t}
  - {focal: "kind:EnvironmentalModification", partner: sensor, kinds: [SurfaceTreatment.Cover], source: t}
)";

class Relations : public ::testing::Test
{
protected:
  SourceOntology o = load_source_ontology(kOntology, doc::Format::Yaml);
  CompatibilityMatrix m = load_compatibility_matrix(kMatrix, doc::Format::Yaml, o);

  const SourceConcept & c(const char * name) { return *lookup_concept(o, name); }
  std::vector<RelationshipKind> kinds(const char * focal, const char * partner)
  {
    return applicable_relationships(c(focal), c(partner), m, o);
  }
};

TEST(Patterns, ParseAndSpecificity)
{
  EXPECT_EQ(ConceptPattern::parse("*")->specificity(), 0);
  EXPECT_EQ(ConceptPattern::parse("kind:DisturbingEntity")->specificity(), 1);
  EXPECT_EQ(ConceptPattern::parse("family:Leaf")->specificity(), 2);
  EXPECT_EQ(ConceptPattern::parse("name:Leaf")->specificity(), 3);
  EXPECT_EQ(ConceptPattern::parse("sensor")->type(), ConceptPattern::Type::Sensor);
  EXPECT_FALSE(ConceptPattern::parse("kind:Animal"));
  EXPECT_FALSE(ConceptPattern::parse("Leaf"));
  EXPECT_FALSE(ConceptPattern::parse("name:9x"));
  for (const char * text : {"*", "kind:InteractiveEntity", "family:A", "name:B", "sensor"}) {
    EXPECT_EQ(ConceptPattern::parse(text)->to_string(), text);
  }
}

TEST(Kinds, NamesAndFamilies)
{
  for (auto k : kAllRelationshipKinds) {
    EXPECT_EQ(parse_relationship_kind(to_string(k)), k);
  }
  EXPECT_EQ(family_of(RelationshipKind::Lighten), RelationshipFamily::SurfaceTreatment);
  EXPECT_EQ(family_of(RelationshipKind::Overlay), RelationshipFamily::SpatialPosition);
  EXPECT_EQ(predicate_name(RelationshipKind::Occlusion), "Occludedby");
  EXPECT_EQ(default_perturbation(RelationshipKind::Cover),
            std::vector<PropertyCategory>{PropertyCategory::ReflectivityRelated});
}

TEST_F(Relations, MostSpecificEntryWins)
{
  EXPECT_EQ(kinds("Pedestrian", "Barrel"), std::vector<RelationshipKind>{RelationshipKind::CognitiveFeature});
  EXPECT_EQ(kinds("Pedestrian", "Structure"),
            (std::vector<RelationshipKind>{RelationshipKind::Occlusion, RelationshipKind::Possess}));
  EXPECT_EQ(kinds("Structure", "Pedestrian"), std::vector<RelationshipKind>{RelationshipKind::Occlusion});
  EXPECT_EQ(kinds("Leaf", "Rain"), std::vector<RelationshipKind>{RelationshipKind::Cover});
  EXPECT_TRUE(kinds("Leaf", "Pedestrian").empty());
}

TEST_F(Relations, SelfPairsOnlyPossess)
{
  EXPECT_EQ(kinds("Structure", "Structure"), std::vector<RelationshipKind>{RelationshipKind::Possess});
  EXPECT_TRUE(kinds("Pedestrian", "Pedestrian").empty());
}

TEST_F(Relations, SensorPartner)
{
  EXPECT_EQ(applicable_sensor_relationships(c("Leaf"), m, o),
            std::vector<RelationshipKind>{RelationshipKind::Occlusion});
  EXPECT_TRUE(applicable_sensor_relationships(c("Pedestrian"), m, o).empty());
  const auto r = instantiate_sensor_relationship(RelationshipKind::Cover, c("Rain"), m, o);
  EXPECT_TRUE(r.involves_sensor());
  EXPECT_EQ(r.key(), "SurfaceTreatment.Cover(Rain,Sensor)");
}

TEST_F(Relations, PerturbationKeepsFocalCategories)
{
  const auto r = instantiate_relationship(RelationshipKind::Occlusion, c("Pedestrian"), c("Structure"), m, o);
  EXPECT_EQ(r.perturbed, (std::vector<PropertyCategory>{
                           PropertyCategory::ReflectionAreaRelated,
                           PropertyCategory::FeatureVariabilityRelated}));
  const auto cover = instantiate_sensor_relationship(RelationshipKind::Cover, c("Rain"), m, o);
  EXPECT_EQ(cover.perturbed, std::vector<PropertyCategory>{PropertyCategory::ReflectivityRelated});
}

TEST_F(Relations, IncompatiblePairThrows)
{
  try {
    instantiate_relationship(RelationshipKind::Lighten, c("Leaf"), c("Pedestrian"), m, o);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompatiblePair);
  }
}

TEST_F(Relations, CandidatesAreSortedAndComplete)
{
  const auto cands = candidate_relationships(c("Pedestrian"), m, o);
  std::set<std::string> keys;
  for (const auto & r : cands) {
    keys.insert(r.key());
  }
  EXPECT_EQ(keys, (std::set<std::string>{
                    "CognitiveFeature(Pedestrian,Barrel)",
                    "Possess(Pedestrian,Structure)",
                    "SpatialPosition.Occlusion(Pedestrian,Structure)",
                    "SurfaceTreatment.Cover(Pedestrian,Rain)"}));
  EXPECT_TRUE(std::is_sorted(cands.begin(), cands.end(), relation_less));
}

TEST_F(Relations, BundleLimitAndFocal)
{
  const auto cands = candidate_relationships(c("Pedestrian"), m, o);
  ASSERT_GE(cands.size(), 3u);
  try {
    compose_bundle(c("Pedestrian"), std::span(cands.data(), 3), 2);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::BundleTooLarge);
  }
  const auto leaf = instantiate_sensor_relationship(RelationshipKind::Occlusion, c("Leaf"), m, o);
  try {
    compose_bundle(c("Pedestrian"), std::span(&leaf, 1));
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::MixedFocal);
  }
}

TEST_F(Relations, BundleDeduplicatesAndOrders)
{
  auto cands = candidate_relationships(c("Pedestrian"), m, o);
  std::vector<RelationshipInstance> twice{cands[1], cands[0], cands[1]};
  const auto b = compose_bundle(c("Pedestrian"), twice);
  ASSERT_EQ(b.relations.size(), 2u);
  EXPECT_TRUE(std::is_sorted(b.relations.begin(), b.relations.end(), relation_less));
  EXPECT_EQ(b.key(), b.relations[0].key() + "+" + b.relations[1].key());
  EXPECT_EQ(compose_bundle(c("Pedestrian"), {}).key(), "");
}

TEST_F(Relations, SourcesSkipSensorAndRepeats)
{
  const auto rain = instantiate_sensor_relationship(RelationshipKind::Cover, c("Rain"), m, o);
  const auto b = compose_bundle(c("Rain"), std::span(&rain, 1));
  EXPECT_EQ(b.sources(), std::vector<std::string>{"Rain"});
  auto occl = instantiate_relationship(RelationshipKind::Occlusion, c("Pedestrian"), c("Structure"), m, o);
  auto poss = instantiate_relationship(RelationshipKind::Possess, c("Pedestrian"), c("Structure"), m, o);
  std::vector<RelationshipInstance> both{occl, poss};
  EXPECT_EQ(compose_bundle(c("Pedestrian"), both).sources(),
            (std::vector<std::string>{"Pedestrian", "Structure"}));
}

// The perturbed categories of a bundle are exactly the union over its relations.
TEST(RelationProperty, BundlePerturbationIsUnion)
{
  std::mt19937 rng(5);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const auto world = testing::random_world(rng, {10, 8, 0, 2});
    for (const auto & focal : world.kb.ontology.concepts) {
      auto cands = candidate_relationships(focal, world.kb.matrix, world.kb.ontology);
      std::shuffle(cands.begin(), cands.end(), rng);
      cands.resize(std::min<std::size_t>(cands.size(), 2));
      const auto b = compose_bundle(focal, cands);
      std::set<PropertyCategory> expected;
      for (const auto & r : cands) {
        expected.insert(r.perturbed.begin(), r.perturbed.end());
      }
      ASSERT_EQ(std::set<PropertyCategory>(b.perturbed.begin(), b.perturbed.end()), expected);
      ASSERT_TRUE(std::is_sorted(b.perturbed.begin(), b.perturbed.end()));
      ASSERT_EQ(std::adjacent_find(b.perturbed.begin(), b.perturbed.end()), b.perturbed.end());
      ++checked;
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(RelationSpec, Parse)
{
  const auto spec = parse_relation_spec("SpatialPosition.Occlusion:Sensor");
  ASSERT_TRUE(spec);
  EXPECT_EQ(spec->first, RelationshipKind::Occlusion);
  EXPECT_EQ(spec->second, "Sensor");
  EXPECT_FALSE(parse_relation_spec("Occlusion"));
  EXPECT_FALSE(parse_relation_spec("Bogus:Leaf"));
}

ErrorCode matrix_error(const SourceOntology & o, const std::string & entries)
{
  try {
    load_compatibility_matrix("schema_version: \"1.0\"\nentries:\n" + entries, doc::Format::Yaml, o);
  } catch (const Error & e) {
    return e.code();
  }
  return ErrorCode::UsageError;
}

TEST_F(Relations, MatrixDecodeErrors)
{
  EXPECT_EQ(matrix_error(o, "  - {focal: sensor, partner: \"*\", kinds: [Possess], source: t}\n"),
            ErrorCode::InvalidPattern);
  EXPECT_EQ(matrix_error(o, "  - {focal: \"name:Ghost\", partner: \"*\", kinds: [Possess], source: t}\n"),
            ErrorCode::UnknownConcept);
  EXPECT_EQ(matrix_error(o, "  - {focal: \"*\", partner: \"*\", kinds: [Hug], source: t}\n"),
            ErrorCode::UnknownRelationshipKind);
  EXPECT_EQ(matrix_error(o, "  - {focal: \"*\", partner: \"*\", kinds: [Possess]}\n"),
            ErrorCode::MissingField);
  EXPECT_EQ(matrix_error(o, "  - {focal: \"*\", partner: \"*\", kinds: [Possess], source: t}\n"
                            "  - {focal: \"*\", partner: \"*\", kinds: [Possess], source: u}\n"),
            ErrorCode::DuplicateName);
}

TEST_F(Relations, MatrixRoundTrip)
{
  for (auto f : {doc::Format::Yaml, doc::Format::Json}) {
    EXPECT_EQ(load_compatibility_matrix(serialize_compatibility_matrix(m, f), f, o), m);
  }
  EXPECT_EQ(m.obstruction_triggers, default_obstruction_triggers());
}

}  // namespace
}  // namespace tcgen
