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

#ifndef TCGEN__EFFECTS_HPP_
#define TCGEN__EFFECTS_HPP_

#include "tcgen/document.hpp"
#include "tcgen/ontology.hpp"
#include "tcgen/relationship.hpp"

#include <compare>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// Signed, graded effect of a source property on a stage quality property, -3..+3.
class EffectDegree
{
public:
  constexpr EffectDegree() = default;

  /// Throws DegreeOutOfRange outside [-3, 3].
  static EffectDegree of(int value);

  constexpr int value() const { return value_; }
  constexpr bool is_negative() const { return value_ < 0; }
  constexpr int magnitude() const { return value_ < 0 ? -value_ : value_; }

  constexpr auto operator<=>(const EffectDegree &) const = default;

private:
  int value_ = 0;
};

enum class GlyphStyle {
  /// U+2212 minus signs separated by spaces: "−", "− −", "− − −".
  Markdown,
  /// ASCII hyphen-minus: "-", "- -", "- - -".
  Ascii,
};

/// 0 renders as the empty string.
std::string render_degree(EffectDegree degree, GlyphStyle style);
/// Accepts either glyph style, with or without separating spaces, and "" for 0.
std::optional<EffectDegree> parse_degree(std::string_view text);

/// Relationship a knowledge-base entry is conditioned on.
struct RelationRef
{
  RelationshipKind kind = RelationshipKind::Occlusion;
  std::string focal;
  std::string partner;

  std::string key() const;

  auto operator<=>(const RelationRef &) const = default;
};

/// Canonical order shared with RelationshipBundle: kind, partner, focal.
bool relation_ref_less(const RelationRef & a, const RelationRef & b);
/// Key of a relation set; equals RelationshipBundle::key() for the same set.
std::string relation_set_key(const std::vector<RelationRef> & relations);
std::vector<RelationRef> to_refs(const std::vector<RelationshipInstance> & relations);

/// One graded cell of a generation matrix.
///
/// `relations` is the exact relationship context the effect holds in: empty for the bare source,
/// otherwise the full relation set of the bundle. `concept` owns `property`; it is either the
/// context's focal concept or one of its partners.
struct EffectEntry
{
  std::string concept_name;
  std::string property;
  std::string stage;
  std::string stage_property;
  EffectDegree degree;
  std::string principle;
  std::string worst_case;
  std::vector<RelationRef> relations;
  std::string source;

  /// Cell identity: owner, property, stage, stage property and relation context.
  std::string cell_key() const;

  bool operator==(const EffectEntry &) const = default;
};

struct EffectKnowledgeBase
{
  std::string schema_version{kSchemaVersion};
  std::vector<EffectEntry> entries;

  bool operator==(const EffectKnowledgeBase &) const = default;
};

EffectKnowledgeBase load_effects(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix, const std::string & source_name = {});
EffectKnowledgeBase load_effects_file(
  const std::filesystem::path & path, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix);
EffectKnowledgeBase decode_effects(
  const doc::Node & root, const SourceOntology & ontology, const CompatibilityMatrix & matrix,
  DiagnosticSink & sink);
/// Cross-checks entries against the ontology, the stage model and the matrix.
void validate_effects(
  const EffectKnowledgeBase & kb, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix, DiagnosticSink & sink,
  const std::vector<doc::Mark> * marks = nullptr);
doc::Node encode_effects(const EffectKnowledgeBase & kb);
std::string serialize_effects(
  const EffectKnowledgeBase & kb, doc::Format format = doc::Format::Yaml);
/// Entries ordered by cell key.
EffectKnowledgeBase canonicalize(EffectKnowledgeBase kb);

}  // namespace tcgen

#endif  // TCGEN__EFFECTS_HPP_
