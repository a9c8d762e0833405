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

#ifndef TCGEN__ASSESSMENT_HPP_
#define TCGEN__ASSESSMENT_HPP_

#include "tcgen/condition.hpp"
#include "tcgen/document.hpp"
#include "tcgen/ontology.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// Product of the E and C indices, 1..16.
constexpr int priority_of(const AssessmentClass & a)
{
  return index_of(a.exposure) * index_of(a.criticality);
}

/// Attaches a rating and its priority. Throws AlreadyAssessed if the condition already carries
/// a rating and `reassess` is false.
TriggeringCondition assess(
  TriggeringCondition condition, const AssessmentClass & rating, bool reassess = false);

/// Ranked order: priority, then C, then E (all descending), then id. Unrated conditions come
/// last, by id.
bool rank_before(const TriggeringCondition & a, const TriggeringCondition & b);
std::vector<TriggeringCondition> rank(std::vector<TriggeringCondition> conditions);

/// A rating applied to every condition its set fields match. `relation` is a relationship kind
/// or "none" for bare-source conditions.
struct RatingRule
{
  std::optional<std::string> id;
  std::optional<std::string> sensor;
  std::optional<std::string> concept_name;
  std::optional<std::string> relation;
  std::optional<std::string> partner;
  std::optional<std::string> property;
  std::optional<std::string> stage;
  std::optional<std::string> stage_property;
  std::optional<bool> distance_augmented;
  AssessmentClass rating;
  std::string rationale;

  bool matches(const TriggeringCondition & condition) const;
  bool operator==(const RatingRule &) const = default;
};

struct RatingSet
{
  std::string schema_version{kSchemaVersion};
  std::vector<RatingRule> rules;
  bool operator==(const RatingSet &) const = default;
};

RatingSet load_ratings(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name = {});
RatingSet load_ratings_file(const std::filesystem::path & path, const SourceOntology & ontology);
RatingSet decode_ratings(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink);
doc::Node encode_ratings(const RatingSet & ratings);
std::string serialize_ratings(const RatingSet & ratings, doc::Format format = doc::Format::Yaml);

struct RatingOutcome
{
  std::vector<TriggeringCondition> conditions;
  std::size_t rated = 0;
  std::size_t unrated = 0;
};

/// First matching rule wins. Conditions matched by no rule keep their current state.
RatingOutcome apply_ratings(
  std::vector<TriggeringCondition> conditions, const RatingSet & ratings, bool reassess = false);

}  // namespace tcgen

#endif  // TCGEN__ASSESSMENT_HPP_
