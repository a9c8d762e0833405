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

#ifndef TCGEN__ONTOLOGY_HPP_
#define TCGEN__ONTOLOGY_HPP_

#include "tcgen/document.hpp"
#include "tcgen/error.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// Schema version accepted by every loader in this library.
inline constexpr std::string_view kSchemaVersion = "1.0";

/// Name reserved for the sensor under analysis when it is the partner of a relationship (a leaf
/// lying on the lens, water film on the LiDAR window). No ontology concept may use it.
inline constexpr std::string_view kSensorName = "Sensor";

enum class ConceptKind { InteractiveEntity, DisturbingEntity, EnvironmentalModification };

enum class PropertyCategory {
  ReflectivityRelated,
  ReflectionAreaRelated,
  DataGenerationRelated,
  FeatureVariabilityRelated,
  TransmittanceRelated,
};

std::string_view to_string(ConceptKind kind);
std::string_view to_string(PropertyCategory category);
std::optional<ConceptKind> parse_concept_kind(std::string_view text);
std::optional<PropertyCategory> parse_property_category(std::string_view text);

inline constexpr ConceptKind kAllConceptKinds[] = {
  ConceptKind::InteractiveEntity, ConceptKind::DisturbingEntity,
  ConceptKind::EnvironmentalModification};
inline constexpr PropertyCategory kAllPropertyCategories[] = {
  PropertyCategory::ReflectivityRelated, PropertyCategory::ReflectionAreaRelated,
  PropertyCategory::DataGenerationRelated, PropertyCategory::FeatureVariabilityRelated,
  PropertyCategory::TransmittanceRelated};

/// Entities (interactive or disturbing) take the four entity categories; environmental
/// modifications take reflectivity and transmittance only.
std::span<const PropertyCategory> allowed_categories(ConceptKind kind);
bool is_category_allowed(ConceptKind kind, PropertyCategory category);
bool is_entity(ConceptKind kind);

/// [A-Za-z][A-Za-z0-9_]*
bool is_identifier(std::string_view text);

/// "SurfaceMaterial" -> "Surface material".
std::string display_label(std::string_view identifier);

struct SourceProperty
{
  std::string name;
  PropertyCategory category = PropertyCategory::ReflectivityRelated;
  std::string note;

  bool operator==(const SourceProperty &) const = default;
};

struct SourceConcept
{
  std::string name;
  ConceptKind kind = ConceptKind::InteractiveEntity;
  std::optional<std::string> parent;
  std::vector<SourceProperty> properties;
  std::vector<std::string> instances;
  std::string note;

  bool has_category(PropertyCategory category) const;
  /// First property with this name (a name may appear under two categories).
  const SourceProperty * find_property(std::string_view property_name) const;
  const SourceProperty * find_property(
    std::string_view property_name, PropertyCategory category) const;

  bool operator==(const SourceConcept &) const = default;
};

struct SourceOntology
{
  std::string schema_version{kSchemaVersion};
  std::vector<SourceConcept> concepts;

  bool operator==(const SourceOntology &) const = default;
};

/// Parses, validates and canonicalizes. Throws Error carrying every diagnostic found.
SourceOntology load_source_ontology(
  std::string_view text, doc::Format format, const std::string & source_name = {});
SourceOntology load_source_ontology_file(const std::filesystem::path & path);

/// Decodes a tree and records problems in `sink` instead of throwing. The result is canonical
/// and only meaningful if the sink has no errors.
SourceOntology decode_source_ontology(const doc::Node & root, DiagnosticSink & sink);

/// Checks every ontology invariant on an in-memory value. `marks`, when given, holds one source
/// position per concept for error reporting.
void validate_source_ontology(
  const SourceOntology & ontology, DiagnosticSink & sink,
  const std::vector<doc::Mark> * marks = nullptr);

/// Sorts concepts, properties (by name, then category) and instances lexicographically.
SourceOntology canonicalize(SourceOntology ontology);

doc::Node encode_source_ontology(const SourceOntology & ontology);
std::string serialize_source_ontology(
  const SourceOntology & ontology, doc::Format format = doc::Format::Yaml);

const SourceConcept * lookup_concept(const SourceOntology & ontology, std::string_view name);

/// True if `name` equals `ancestor` or reaches it through parent links.
bool is_same_or_descendant(
  const SourceOntology & ontology, std::string_view name, std::string_view ancestor);

}  // namespace tcgen

#endif  // TCGEN__ONTOLOGY_HPP_
