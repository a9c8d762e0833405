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

#ifndef TCGEN__CONDITION_HPP_
#define TCGEN__CONDITION_HPP_

#include "tcgen/effects.hpp"
#include "tcgen/relationship.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// Exposure E1 (rarest) .. E4 (most frequent).
enum class Exposure { E1 = 1, E2 = 2, E3 = 3, E4 = 4 };
/// Criticality C1 (least) .. C4 (most).
enum class Criticality { C1 = 1, C2 = 2, C3 = 3, C4 = 4 };

inline constexpr Exposure kAllExposures[] = {Exposure::E1, Exposure::E2, Exposure::E3, Exposure::E4};
inline constexpr Criticality kAllCriticalities[] = {
  Criticality::C1, Criticality::C2, Criticality::C3, Criticality::C4};

constexpr int index_of(Exposure e) { return static_cast<int>(e); }
constexpr int index_of(Criticality c) { return static_cast<int>(c); }
std::string_view to_string(Exposure e);
std::string_view to_string(Criticality c);
std::optional<Exposure> parse_exposure(std::string_view text);
std::optional<Criticality> parse_criticality(std::string_view text);

struct AssessmentClass
{
  Exposure exposure = Exposure::E1;
  Criticality criticality = Criticality::C1;

  bool operator==(const AssessmentClass &) const = default;
};

struct TriggeringCondition
{
  std::string id;
  std::string sensor;
  /// Focal concept first, then relationship partners (the sensor itself is never listed).
  std::vector<std::string> sources;
  std::vector<RelationshipInstance> relationships;
  /// Concept owning `source_property`: the focal concept or a relationship partner.
  std::string property_owner;
  std::string source_property;
  std::string affected_stage;
  std::string stage_property;
  EffectEntry effect;
  std::string description;
  bool distance_augmented = false;
  std::optional<AssessmentClass> assessment;
  std::optional<int> priority;

  const std::string & focal() const { return sources.front(); }

  bool operator==(const TriggeringCondition &) const = default;
};

/// Text the id is derived from: sensor, sources, relationships, property owner and name, stage,
/// stage property and the distance flag.
std::string condition_identity(const TriggeringCondition & condition);
/// "TC-" followed by the first 12 hex digits of the SHA-256 of condition_identity().
std::string condition_id(const TriggeringCondition & condition);

/// Canonical (unranked) order: sensor, focal, relationships, owner, property, stage in pipeline
/// order, stage property, base before distance variant.
bool canonical_less(const TriggeringCondition & a, const TriggeringCondition & b);

}  // namespace tcgen

#endif  // TCGEN__CONDITION_HPP_
