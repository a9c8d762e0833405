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


#include "tcgen/ontology.hpp"

#include "world.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>

namespace tcgen
{
namespace
{

constexpr const char * kSmall = R"(schema_version: "1.0"
concepts:
  - name: Pedestrian
    kind: InteractiveEntity
    properties:
      - {name: Color, category: ReflectivityRelated}
      - {name: PerspectiveShape, category: ReflectionAreaRelated}
    instances: [Adult, Child]
  - name: Structure
    kind: InteractiveEntity
  - name: Barrel
    kind: InteractiveEntity
    parent: Structure
  - name: Fog
    kind: EnvironmentalModification
    properties:
      - {name: Density, category: TransmittanceRelated}
)";

template <typename F>
ErrorCode thrown_code(F && f)
{
  try {
    f();
  } catch (const Error & e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::UsageError;
}

SourceOntology load(const std::string & text)
{
  return load_source_ontology(text, doc::Format::Yaml, "test.yaml");
}

TEST(Ontology, LoadsAndSortsConcepts)
{
  const auto o = load(kSmall);
  ASSERT_EQ(o.concepts.size(), 4u);
  EXPECT_EQ(o.concepts.front().name, "Barrel");
  const auto * p = lookup_concept(o, "Pedestrian");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->kind, ConceptKind::InteractiveEntity);
  EXPECT_TRUE(p->has_category(PropertyCategory::ReflectionAreaRelated));
  EXPECT_FALSE(p->has_category(PropertyCategory::TransmittanceRelated));
  EXPECT_EQ(p->instances, (std::vector<std::string>{"Adult", "Child"}));
  EXPECT_EQ(lookup_concept(o, "Nobody"), nullptr);
}

TEST(Ontology, AncestorWalk)
{
  const auto o = load(kSmall);
  EXPECT_TRUE(is_same_or_descendant(o, "Barrel", "Structure"));
  EXPECT_TRUE(is_same_or_descendant(o, "Barrel", "Barrel"));
  EXPECT_FALSE(is_same_or_descendant(o, "Structure", "Barrel"));
  EXPECT_FALSE(is_same_or_descendant(o, "Fog", "Structure"));
}

TEST(Ontology, CategoryRulesPerKind)
{
  EXPECT_TRUE(is_category_allowed(ConceptKind::DisturbingEntity, PropertyCategory::ReflectionAreaRelated));
  EXPECT_FALSE(is_category_allowed(ConceptKind::InteractiveEntity, PropertyCategory::TransmittanceRelated));
  EXPECT_TRUE(is_category_allowed(ConceptKind::EnvironmentalModification, PropertyCategory::TransmittanceRelated));
  EXPECT_FALSE(is_category_allowed(ConceptKind::EnvironmentalModification, PropertyCategory::DataGenerationRelated));
}

TEST(Ontology, EnumNamesRoundTrip)
{
  for (auto k : kAllConceptKinds) {
    EXPECT_EQ(parse_concept_kind(to_string(k)), k);
  }
  for (auto c : kAllPropertyCategories) {
    EXPECT_EQ(parse_property_category(to_string(c)), c);
  }
  EXPECT_FALSE(parse_concept_kind("Animal"));
}

TEST(Ontology, Labels)
{
  EXPECT_EQ(display_label("TemporaryStructure"), "Temporary structure");
  EXPECT_EQ(display_label("Signal_reflection"), "Signal reflection");
  EXPECT_TRUE(is_identifier("Rain_2"));
  EXPECT_FALSE(is_identifier("2Rain"));
  EXPECT_FALSE(is_identifier(""));
}

TEST(OntologyErrors, DanglingParent)
{
  const std::string text = R"(schema_version: "1.0"
concepts:
  - {name: Barrel, kind: InteractiveEntity, parent: Ghost}
)";
  try {
    load(text);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::DanglingParent);
    EXPECT_EQ(e.diagnostics().front().file, "test.yaml");
    EXPECT_EQ(e.diagnostics().front().line, 3);
  }
}

TEST(OntologyErrors, CrossKindParent)
{
  EXPECT_EQ(thrown_code([] {
    load(R"(schema_version: "1.0"
concepts:
  - {name: Fog, kind: EnvironmentalModification}
  - {name: Barrel, kind: InteractiveEntity, parent: Fog}
)");
  }), ErrorCode::CrossKindParent);
}

TEST(OntologyErrors, Cycle)
{
  EXPECT_EQ(thrown_code([] {
    load(R"(schema_version: "1.0"
concepts:
  - {name: A, kind: InteractiveEntity, parent: B}
  - {name: B, kind: InteractiveEntity, parent: A}
)");
  }), ErrorCode::TaxonomyCycle);
}

TEST(OntologyErrors, DuplicatesAndReserved)
{
  EXPECT_EQ(thrown_code([] {
    load(R"(schema_version: "1.0"
concepts:
  - {name: A, kind: InteractiveEntity}
  - {name: A, kind: InteractiveEntity}
)");
  }), ErrorCode::DuplicateName);
  EXPECT_EQ(thrown_code([] {
    load(R"(schema_version: "1.0"
concepts:
  - name: A
    kind: InteractiveEntity
    properties:
      - {name: Color, category: ReflectivityRelated}
      - {name: Color, category: ReflectivityRelated}
)");
  }), ErrorCode::DuplicateProperty);
  EXPECT_EQ(thrown_code([] {
    load(R"(schema_version: "1.0"
concepts:
  - {name: Sensor, kind: InteractiveEntity}
)");
  }), ErrorCode::ReservedName);
  EXPECT_EQ(thrown_code([] {
    load(R"(schema_version: "1.0"
concepts:
  - {name: A, kind: InteractiveEntity, instances: [x, x]}
)");
  }), ErrorCode::DuplicateInstance);
}

TEST(OntologyErrors, CategoryKindAndVersion)
{
  EXPECT_EQ(thrown_code([] {
    load(R"(schema_version: "1.0"
concepts:
  - name: Fog
    kind: EnvironmentalModification
    properties: [{name: Speed, category: DataGenerationRelated}]
)");
  }), ErrorCode::IllegalCategoryForKind);
  EXPECT_EQ(thrown_code([] {
    load(R"(schema_version: "1.0"
concepts:
  - {name: A, kind: Animal}
)");
  }), ErrorCode::UnknownKind);
  EXPECT_EQ(thrown_code([] { load("schema_version: \"9.0\"\nconcepts: []\n"); }),
            ErrorCode::UnknownSchemaVersion);
  EXPECT_EQ(thrown_code([] { load("concepts: [\n"); }), ErrorCode::SyntaxError);
  EXPECT_EQ(thrown_code([] { load("schema_version: \"1.0\"\nconcepts:\n  - {kind: InteractiveEntity}\n"); }),
            ErrorCode::MissingField);
}

TEST(OntologyErrors, ReportsEveryProblemAtOnce)
{
  try {
    load(R"(schema_version: "1.0"
concepts:
  - {name: A, kind: InteractiveEntity, parent: Ghost}
  - {name: Sensor, kind: InteractiveEntity}
)");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.diagnostics().size(), 2u);
  }
}

TEST(Ontology, JsonAndYamlAgree)
{
  const auto o = load(kSmall);
  const auto json = serialize_source_ontology(o, doc::Format::Json);
  EXPECT_EQ(load_source_ontology(json, doc::Format::Json), o);
}

TEST(OntologyProperty, RandomOntologiesRoundTrip)
{
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto o = testing::random_ontology(rng, 12);
    for (auto f : {doc::Format::Yaml, doc::Format::Json}) {
      const auto text = serialize_source_ontology(o, f);
      const auto back = load_source_ontology(text, f);
      ASSERT_EQ(back, o) << text;
      ASSERT_EQ(serialize_source_ontology(back, f), text);
    }
  }
}

TEST(OntologyProperty, CanonicalizeIgnoresInputOrder)
{
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto o = testing::random_ontology(rng, 12);
    auto shuffled = o;
    std::shuffle(shuffled.concepts.begin(), shuffled.concepts.end(), rng);
    EXPECT_EQ(serialize_source_ontology(shuffled), serialize_source_ontology(o));
  }
}

}  // namespace
}  // namespace tcgen
