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

#ifndef TCGEN__TEMPLATES_HPP_
#define TCGEN__TEMPLATES_HPP_

#include "tcgen/document.hpp"
#include "tcgen/ontology.hpp"
#include "tcgen/relationship.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// Description template. Unset match fields are wildcards; `relation` is a relationship kind or
/// "none" for the bare source.
///
/// Text placeholders: {sensor} {focal} {partner} {sources} {property} {stage} {stage_property}.
/// The distance variant additionally takes {description}.
struct DescriptionTemplate
{
  std::optional<std::string> sensor;
  std::optional<std::string> concept_name;
  std::optional<std::string> relation;
  std::optional<std::string> partner;
  std::optional<std::string> property;
  std::optional<std::string> stage;
  std::optional<std::string> stage_property;
  std::string text;
  std::string source;

  int specificity() const;

  bool operator==(const DescriptionTemplate &) const = default;
};

inline constexpr std::string_view kDefaultFallbackTemplate =
  "{focal}: worst-case {property} degrades {stage_property} in {stage} of the {sensor}";
inline constexpr std::string_view kDefaultDistanceTemplate = "{description}, with a distant target";

struct TemplateSet
{
  std::string schema_version{kSchemaVersion};
  std::string fallback{kDefaultFallbackTemplate};
  std::string distance_variant{kDefaultDistanceTemplate};
  std::vector<DescriptionTemplate> templates;

  bool operator==(const TemplateSet &) const = default;
};

/// What a template is matched against.
struct TemplateContext
{
  std::string sensor;
  std::string focal;
  std::vector<RelationshipInstance> relations;
  std::vector<std::string> sources;
  std::string property;
  std::string stage;
  std::string stage_property;
};

struct RenderedDescription
{
  std::string text;
  bool used_fallback = false;
};

/// Most specific matching template (ties: lexicographically smallest text), else the fallback.
RenderedDescription render_description(const TemplateSet & templates, const TemplateContext & ctx);
/// Text of the distance-augmented companion of a condition described by `description`.
std::string render_distance_variant(
  const TemplateSet & templates, std::string_view description, const TemplateContext & ctx);

TemplateSet load_templates(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name = {});
TemplateSet load_templates_file(const std::filesystem::path & path, const SourceOntology & ontology);
TemplateSet decode_templates(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink);
doc::Node encode_templates(const TemplateSet & templates);
std::string serialize_templates(
  const TemplateSet & templates, doc::Format format = doc::Format::Yaml);

}  // namespace tcgen

#endif  // TCGEN__TEMPLATES_HPP_
