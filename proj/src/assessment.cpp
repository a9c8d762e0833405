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

#include "tcgen/assessment.hpp"

#include "tcgen/perception.hpp"

#include <algorithm>
#include <tuple>

namespace tcgen
{

TriggeringCondition assess(
  TriggeringCondition condition, const AssessmentClass & rating, bool reassess)
{
  if (condition.assessment && !reassess) {
    throw Error(
      ErrorCode::AlreadyAssessed, "condition " + condition.id + " is already rated " +
                                    std::string(to_string(condition.assessment->exposure)) + "/" +
                                    std::string(to_string(condition.assessment->criticality)));
  }
  condition.assessment = rating;
  condition.priority = priority_of(rating);
  return condition;
}

bool rank_before(const TriggeringCondition & a, const TriggeringCondition & b)
{
  if (a.assessment.has_value() != b.assessment.has_value()) {
    return a.assessment.has_value();
  }
  if (!a.assessment) {
    return a.id < b.id;
  }
  const auto key = [](const TriggeringCondition & c) {
    return std::make_tuple(
      priority_of(*c.assessment), index_of(c.assessment->criticality),
      index_of(c.assessment->exposure));
  };
  const auto ka = key(a);
  const auto kb = key(b);
  if (ka != kb) {
    return ka > kb;
  }
  return a.id < b.id;
}

std::vector<TriggeringCondition> rank(std::vector<TriggeringCondition> conditions)
{
  std::sort(conditions.begin(), conditions.end(), rank_before);
  return conditions;
}

namespace
{

bool field_matches(const std::optional<std::string> & field, const std::string & value)
{
  return !field || *field == value;
}

}  // namespace

bool RatingRule::matches(const TriggeringCondition & c) const
{
  if (!field_matches(id, c.id) || !field_matches(sensor, c.sensor) ||
      !field_matches(concept_name, c.focal()) || !field_matches(property, c.source_property) ||
      !field_matches(stage, c.affected_stage) || !field_matches(stage_property, c.stage_property)) {
    return false;
  }
  if (distance_augmented && *distance_augmented != c.distance_augmented) {
    return false;
  }
  if (relation && *relation == "none") {
    return c.relationships.empty() && !partner;
  }
  if (!relation && !partner) {
    return true;
  }
  return std::any_of(c.relationships.begin(), c.relationships.end(), [&](const auto & r) {
    return field_matches(relation, std::string(to_string(r.kind))) &&
           field_matches(partner, r.partner);
  });
}

RatingSet decode_ratings(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  RatingSet set;
  if (!dec.expect_mapping(root, "ratings document") || !dec.check_version(root, kSchemaVersion)) {
    return set;
  }
  for (const auto & node : dec.node_list(root, "ratings")) {
    if (!dec.expect_mapping(node, "rating")) {
      continue;
    }
    RatingRule rule;
    const auto exposure = dec.string_field(node, "exposure");
    const auto criticality = dec.string_field(node, "criticality");
    if (!exposure || !criticality) {
      continue;
    }
    const auto e = parse_exposure(*exposure);
    const auto c = parse_criticality(*criticality);
    if (!e) {
      dec.error(node, ErrorCode::InvalidValue, "exposure must be E1..E4, got '" + *exposure + "'");
    }
    if (!c) {
      dec.error(
        node, ErrorCode::InvalidValue, "criticality must be C1..C4, got '" + *criticality + "'");
    }
    if (!e || !c) {
      continue;
    }
    rule.rating = {*e, *c};
    rule.rationale = dec.string_field(node, "rationale", false).value_or("");
    if (const auto * match = node.find("match")) {
      if (!dec.expect_mapping(*match, "rating match")) {
        continue;
      }
      rule.id = dec.string_field(*match, "id", false);
      rule.sensor = dec.string_field(*match, "sensor", false);
      rule.concept_name = dec.string_field(*match, "concept", false);
      rule.relation = dec.string_field(*match, "relation", false);
      rule.partner = dec.string_field(*match, "partner", false);
      rule.property = dec.string_field(*match, "property", false);
      rule.stage = dec.string_field(*match, "stage", false);
      rule.stage_property = dec.string_field(*match, "stage_property", false);
      rule.distance_augmented = dec.bool_field(*match, "distance_augmented", false);
      for (const auto * name : {&rule.concept_name, &rule.partner}) {
        if (*name && **name != kSensorName && lookup_concept(ontology, **name) == nullptr) {
          dec.error(*match, ErrorCode::UnknownConcept,
                    "rating matches unknown concept '" + **name + "'");
        }
      }
      if (rule.stage && find_stage(*rule.stage) == nullptr) {
        dec.error(*match, ErrorCode::UnknownStage, "rating matches unknown stage '" + *rule.stage + "'");
      }
      if (rule.relation && *rule.relation != "none" && !parse_relationship_kind(*rule.relation)) {
        dec.error(*match, ErrorCode::UnknownRelationshipKind,
                  "rating matches unknown relationship kind '" + *rule.relation + "'");
      }
    }
    set.rules.push_back(std::move(rule));
  }
  return set;
}

RatingSet load_ratings(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name)
{
  DiagnosticSink sink(source_name);
  auto set = decode_ratings(doc::parse(text, format, source_name), ontology, sink);
  sink.throw_if_errors();
  return set;
}

RatingSet load_ratings_file(const std::filesystem::path & path, const SourceOntology & ontology)
{
  return load_ratings(doc::read_file(path), doc::format_for_path(path), ontology, path.string());
}

doc::Node encode_ratings(const RatingSet & set)
{
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(set.schema_version));
  auto & list = root.set("ratings", doc::Node::sequence());
  for (const auto & r : set.rules) {
    auto node = doc::Node::mapping();
    auto match = doc::Node::mapping();
    const std::pair<const char *, const std::optional<std::string> *> fields[] = {
      {"id", &r.id},           {"sensor", &r.sensor},     {"concept", &r.concept_name},
      {"relation", &r.relation}, {"partner", &r.partner}, {"property", &r.property},
      {"stage", &r.stage},     {"stage_property", &r.stage_property}};
    for (const auto & [key, value] : fields) {
      if (*value) {
        match.set(key, doc::Node::string(**value));
      }
    }
    if (r.distance_augmented) {
      match.set("distance_augmented", doc::Node::boolean(*r.distance_augmented));
    }
    if (!match.entries().empty()) {
      node.set("match", std::move(match));
    }
    node.set("exposure", doc::Node::string(std::string(to_string(r.rating.exposure))));
    node.set("criticality", doc::Node::string(std::string(to_string(r.rating.criticality))));
    if (!r.rationale.empty()) {
      node.set("rationale", doc::Node::string(r.rationale));
    }
    list.push_back(std::move(node));
  }
  return root;
}

std::string serialize_ratings(const RatingSet & set, doc::Format format)
{
  return doc::emit(encode_ratings(set), format);
}

RatingOutcome apply_ratings(
  std::vector<TriggeringCondition> conditions, const RatingSet & ratings, bool reassess)
{
  RatingOutcome out;
  for (auto & c : conditions) {
    const auto rule = std::find_if(
      ratings.rules.begin(), ratings.rules.end(), [&](const RatingRule & r) { return r.matches(c); });
    if (rule != ratings.rules.end()) {
      c = assess(std::move(c), rule->rating, reassess);
    }
    if (c.assessment) {
      ++out.rated;
    } else {
      ++out.unrated;
    }
  }
  out.conditions = std::move(conditions);
  return out;
}

}  // namespace tcgen
