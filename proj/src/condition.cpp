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

#include "tcgen/condition.hpp"

#include "tcgen/digest.hpp"
#include "tcgen/perception.hpp"

#include <tuple>

namespace tcgen
{

std::string_view to_string(Exposure e)
{
  switch (e) {
    case Exposure::E1:
      return "E1";
    case Exposure::E2:
      return "E2";
    case Exposure::E3:
      return "E3";
    case Exposure::E4:
      return "E4";
  }
  return "E1";
}

std::string_view to_string(Criticality c)
{
  switch (c) {
    case Criticality::C1:
      return "C1";
    case Criticality::C2:
      return "C2";
    case Criticality::C3:
      return "C3";
    case Criticality::C4:
      return "C4";
  }
  return "C1";
}

std::optional<Exposure> parse_exposure(std::string_view text)
{
  for (auto e : kAllExposures) {
    if (to_string(e) == text) {
      return e;
    }
  }
  return std::nullopt;
}

std::optional<Criticality> parse_criticality(std::string_view text)
{
  for (auto c : kAllCriticalities) {
    if (to_string(c) == text) {
      return c;
    }
  }
  return std::nullopt;
}

namespace
{

std::string relations_key(const std::vector<RelationshipInstance> & relations)
{
  std::string out;
  for (const auto & r : relations) {
    if (!out.empty()) {
      out += '+';
    }
    out += r.key();
  }
  return out;
}

}  // namespace

std::string condition_identity(const TriggeringCondition & condition)
{
  std::string sources;
  for (const auto & s : condition.sources) {
    if (!sources.empty()) {
      sources += ',';
    }
    sources += s;
  }
  return "sensor=" + condition.sensor + "\nsources=" + sources +
         "\nrelations=" + relations_key(condition.relationships) +
         "\nproperty=" + condition.property_owner + "." + condition.source_property +
         "\nstage=" + condition.affected_stage + "." + condition.stage_property +
         "\ndistance=" + (condition.distance_augmented ? "1" : "0");
}

std::string condition_id(const TriggeringCondition & condition)
{
  return "TC-" + sha256_hex(condition_identity(condition)).substr(0, 12);
}

bool canonical_less(const TriggeringCondition & a, const TriggeringCondition & b)
{
  const auto key = [](const TriggeringCondition & c) {
    return std::make_tuple(
      std::cref(c.sensor), std::cref(c.focal()), relations_key(c.relationships),
      std::cref(c.property_owner), std::cref(c.source_property), stage_index(c.affected_stage),
      std::cref(c.stage_property), c.distance_augmented, std::cref(c.id));
  };
  return key(a) < key(b);
}

}  // namespace tcgen
