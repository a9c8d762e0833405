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

#ifndef TCGEN__RELATIONSHIP_HPP_
#define TCGEN__RELATIONSHIP_HPP_

#include "tcgen/document.hpp"
#include "tcgen/ontology.hpp"

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// Relationship kinds with their subkinds flattened. Spatial position and surface treatment
/// each have two subkinds; possess and cognitive feature have none.
enum class RelationshipKind { Overlay, Occlusion, Cover, Lighten, Possess, CognitiveFeature };

enum class RelationshipFamily { SpatialPosition, SurfaceTreatment, Possess, CognitiveFeature };

inline constexpr RelationshipKind kAllRelationshipKinds[] = {
  RelationshipKind::Overlay, RelationshipKind::Occlusion, RelationshipKind::Cover,
  RelationshipKind::Lighten, RelationshipKind::Possess, RelationshipKind::CognitiveFeature};

RelationshipFamily family_of(RelationshipKind kind);

/// "SpatialPosition.Occlusion", "SurfaceTreatment.Cover", "Possess", ...
std::string_view to_string(RelationshipKind kind);
std::optional<RelationshipKind> parse_relationship_kind(std::string_view text);

/// Predicate form used in catalogs: "Occludedby", "Coveredby", "Similarwith", ...
std::string_view predicate_name(RelationshipKind kind);

/// Default perturbed categories of a kind before restriction to the focal concept's kind.
std::vector<PropertyCategory> default_perturbation(RelationshipKind kind);

/// Left or right side of a compatibility-matrix key.
///
/// Text forms: `*`, `kind:<ConceptKind>`, `family:<Concept>` (the concept or any descendant),
/// `name:<Concept>`, and `sensor` (the sensor under analysis, only meaningful as a partner).
class ConceptPattern
{
public:
  enum class Type { Any, Kind, Family, Name, Sensor };

  static ConceptPattern any();
  static ConceptPattern of_kind(ConceptKind kind);
  static ConceptPattern family(std::string concept_name);
  static ConceptPattern name(std::string concept_name);
  static ConceptPattern sensor();
  static std::optional<ConceptPattern> parse(std::string_view text);

  Type type() const { return type_; }
  const std::string & value() const { return value_; }
  std::string to_string() const;

  /// Name and sensor patterns 3, family 2, kind 1, any 0.
  int specificity() const;

  /// `subject` is a concept name or kSensorName.
  bool matches(const SourceOntology & ontology, std::string_view subject) const;

  auto operator<=>(const ConceptPattern & other) const { return to_string() <=> other.to_string(); }
  bool operator==(const ConceptPattern & other) const { return to_string() == other.to_string(); }

private:
  Type type_ = Type::Any;
  std::string value_;
  ConceptKind kind_ = ConceptKind::InteractiveEntity;
};

struct MatrixEntry
{
  ConceptPattern focal;
  ConceptPattern partner;
  std::vector<RelationshipKind> kinds;
  /// Where the entry comes from; required in data files.
  std::string source;
  std::string note;

  bool operator==(const MatrixEntry &) const = default;
};

/// Relationship involving the sensor that counts as an obstruction of the sensor window (adds the
/// transmission and receiving stages, or light receiving for passive sensors).
struct ObstructionTrigger
{
  RelationshipKind kind = RelationshipKind::Cover;
  ConceptPattern focal = ConceptPattern::any();

  bool operator==(const ObstructionTrigger &) const = default;
};

std::vector<ObstructionTrigger> default_obstruction_triggers();

struct CompatibilityMatrix
{
  std::string schema_version{kSchemaVersion};
  std::vector<MatrixEntry> entries;
  /// Per-kind override of default_perturbation(); kinds not listed use the default.
  std::map<RelationshipKind, std::vector<PropertyCategory>> perturbations;
  std::vector<ObstructionTrigger> obstruction_triggers = default_obstruction_triggers();

  std::vector<PropertyCategory> perturbation_for(RelationshipKind kind) const;

  bool operator==(const CompatibilityMatrix &) const = default;
};

/// A relationship between a focal concept (the one whose features are perturbed, normally an
/// interactive entity) and a partner concept. A partner equal to kSensorName means the focal
/// source sits on or in front of the sensor.
struct RelationshipInstance
{
  RelationshipKind kind = RelationshipKind::Occlusion;
  std::string focal;
  std::string partner;
  std::vector<PropertyCategory> perturbed;
  std::string note;

  bool involves_sensor() const { return partner == kSensorName; }
  /// "SpatialPosition.Occlusion(Pedestrian,TemporaryStructure)"
  std::string key() const;

  bool operator==(const RelationshipInstance &) const = default;
};

/// Canonical relation order: by kind, then partner, then focal.
bool relation_less(const RelationshipInstance & a, const RelationshipInstance & b);

struct RelationshipBundle
{
  std::string focal;
  std::vector<RelationshipInstance> relations;
  std::vector<PropertyCategory> perturbed;

  /// Focal first, then distinct non-sensor partners in relation order.
  std::vector<std::string> sources() const;
  /// Joined relation keys; empty for the bare-source bundle.
  std::string key() const;

  bool operator==(const RelationshipBundle &) const = default;
};

inline constexpr std::size_t kDefaultBundleLimit = 2;

CompatibilityMatrix load_compatibility_matrix(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name = {});
CompatibilityMatrix load_compatibility_matrix_file(
  const std::filesystem::path & path, const SourceOntology & ontology);
CompatibilityMatrix decode_compatibility_matrix(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink);
doc::Node encode_compatibility_matrix(const CompatibilityMatrix & matrix);
std::string serialize_compatibility_matrix(
  const CompatibilityMatrix & matrix, doc::Format format = doc::Format::Yaml);
CompatibilityMatrix canonicalize(CompatibilityMatrix matrix);

/// Entry chosen for a (focal, partner) pair: highest summed pattern specificity, then higher
/// focal specificity, then canonical pattern order. nullptr if nothing matches.
const MatrixEntry * most_specific_entry(
  const CompatibilityMatrix & matrix, const SourceOntology & ontology, std::string_view focal,
  std::string_view partner);

/// Kinds permitted between two concepts; empty for pairs the matrix does not cover.
std::vector<RelationshipKind> applicable_relationships(
  const SourceConcept & focal, const SourceConcept & partner, const CompatibilityMatrix & matrix,
  const SourceOntology & ontology);
/// Kinds permitted between a concept and the sensor under analysis.
std::vector<RelationshipKind> applicable_sensor_relationships(
  const SourceConcept & focal, const CompatibilityMatrix & matrix,
  const SourceOntology & ontology);

/// Throws IncompatiblePair when the matrix does not allow `kind` for the pair, SelfRelationship
/// when focal and partner coincide for a kind other than Possess.
RelationshipInstance instantiate_relationship(
  RelationshipKind kind, const SourceConcept & focal, const SourceConcept & partner,
  const CompatibilityMatrix & matrix, const SourceOntology & ontology);
RelationshipInstance instantiate_sensor_relationship(
  RelationshipKind kind, const SourceConcept & focal, const CompatibilityMatrix & matrix,
  const SourceOntology & ontology);

/// Every relationship the matrix allows with `focal` as focal concept, canonically ordered.
std::vector<RelationshipInstance> candidate_relationships(
  const SourceConcept & focal, const CompatibilityMatrix & matrix,
  const SourceOntology & ontology);

/// Deduplicates by (kind, partner), canonicalizes order and unions perturbed categories.
/// Throws MixedFocal or BundleTooLarge.
RelationshipBundle compose_bundle(
  const SourceConcept & focal, std::span<const RelationshipInstance> relations,
  std::size_t limit = kDefaultBundleLimit);

/// Parses "SpatialPosition.Occlusion:TemporaryStructure" style specs used by the CLI.
std::optional<std::pair<RelationshipKind, std::string>> parse_relation_spec(std::string_view text);

}  // namespace tcgen

#endif  // TCGEN__RELATIONSHIP_HPP_
