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


#include "tcgen/templates.hpp"

#include "world.hpp"

#include <gtest/gtest.h>

#include <string>

namespace tcgen
{
namespace
{

TemplateContext pedestrian_context()
{
  RelationshipInstance r;
  r.kind = RelationshipKind::Occlusion;
  r.focal = "Pedestrian";
  r.partner = "TemporaryStructure";
  return {"Camera", "Pedestrian", {r}, {"Pedestrian", "TemporaryStructure"},
          "PerspectiveShape", "TargetClassification", "Visibility"};
}

DescriptionTemplate tmpl(std::string text)
{
  DescriptionTemplate t;
  t.text = std::move(text);
  return t;
}

TEST(Templates, FallbackSubstitutesLabels)
{
  TemplateSet set;
  set.fallback = "{sources}: {property} hurts {stage_property} in {stage} ({sensor}, {partner})";
  const auto r = render_description(set, pedestrian_context());
  EXPECT_TRUE(r.used_fallback);
  EXPECT_EQ(r.text, "Pedestrian, Temporary structure: Perspective shape hurts Visibility in "
                    "Target classification (Camera, Temporary structure)");
}

TEST(Templates, MostSpecificMatchWins)
{
  TemplateSet set;
  auto broad = tmpl("broad");
  broad.concept_name = "Pedestrian";
  auto narrow = tmpl("narrow");
  narrow.concept_name = "Pedestrian";
  narrow.partner = "TemporaryStructure";
  narrow.stage_property = "Visibility";
  auto wrong = tmpl("wrong");
  wrong.concept_name = "Pedestrian";
  wrong.partner = "RegularityStructure";
  wrong.stage_property = "Visibility";
  wrong.sensor = "Camera";
  set.templates = {broad, wrong, narrow};
  const auto r = render_description(set, pedestrian_context());
  EXPECT_FALSE(r.used_fallback);
  EXPECT_EQ(r.text, "narrow");
}

TEST(Templates, RelationNoneOnlyMatchesBareSource)
{
  TemplateSet set;
  auto bare = tmpl("bare");
  bare.relation = "none";
  set.templates = {bare};
  EXPECT_TRUE(render_description(set, pedestrian_context()).used_fallback);
  auto ctx = pedestrian_context();
  ctx.relations.clear();
  EXPECT_EQ(render_description(set, ctx).text, "bare");
}

TEST(Templates, TiesBreakOnText)
{
  TemplateSet set;
  auto b = tmpl("bbb");
  b.sensor = "Camera";
  auto a = tmpl("aaa");
  a.stage = "TargetClassification";
  set.templates = {b, a};
  EXPECT_EQ(render_description(set, pedestrian_context()).text, "aaa");
}

TEST(Templates, DistanceVariant)
{
  TemplateSet set;
  set.distance_variant = "{description}, far from the {sensor}";
  EXPECT_EQ(render_distance_variant(set, "A thin carton", pedestrian_context()),
            "A thin carton, far from the Camera");
}

TEST(Templates, UnknownPlaceholderRejected)
{
  const auto & o = testing::reference_workspace().kb.ontology;
  try {
    load_templates("schema_version: \"1.0\"\ntemplates:\n  - {match: {concept: Pedestrian}, text: \"{weather}\"}\n",
                   doc::Format::Yaml, o);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidValue);
  }
  try {
    load_templates("schema_version: \"1.0\"\ntemplates:\n  - {match: {concept: Ghost}, text: x}\n",
                   doc::Format::Yaml, o);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownConcept);
  }
}

TEST(Templates, ReferenceSetRoundTrips)
{
  const auto & ws = testing::reference_workspace();
  for (auto f : {doc::Format::Yaml, doc::Format::Json}) {
    EXPECT_EQ(load_templates(serialize_templates(ws.kb.templates, f), f, ws.kb.ontology), ws.kb.templates);
  }
}

}  // namespace
}  // namespace tcgen
