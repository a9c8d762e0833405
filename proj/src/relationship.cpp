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

#include "tcgen/relationship.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <utility>

namespace tcgen
{

RelationshipFamily family_of(RelationshipKind kind)
{
  switch (kind) {
    case RelationshipKind::Overlay:
    case RelationshipKind::Occlusion:
      return RelationshipFamily::SpatialPosition;
    case RelationshipKind::Cover:
    case RelationshipKind::Lighten:
      return RelationshipFamily::SurfaceTreatment;
    case RelationshipKind::Possess:
      return RelationshipFamily::Possess;
    case RelationshipKind::CognitiveFeature:
      return RelationshipFamily::CognitiveFeature;
  }
  return RelationshipFamily::Possess;
}

std::string_view to_string(RelationshipKind kind)
{
  switch (kind) {
    case RelationshipKind::Overlay: return "SpatialPosition.Overlay";
    case RelationshipKind::Occlusion: return "SpatialPosition.Occlusion";
    case RelationshipKind::Cover: return "SurfaceTreatment.Cover";
    case RelationshipKind::Lighten: return "SurfaceTreatment.Lighten";
    case RelationshipKind::Possess: return "Possess";
    case RelationshipKind::CognitiveFeature: return "CognitiveFeature";
  }
  return "?";
}

std::optional<RelationshipKind> parse_relationship_kind(std::string_view text)
{
  for (auto kind : kAllRelationshipKinds) {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  return std::nullopt;
}

std::string_view predicate_name(RelationshipKind kind)
{
  switch (kind) {
    case RelationshipKind::Overlay: return "Overlayedby";
    case RelationshipKind::Occlusion: return "Occludedby";
    case RelationshipKind::Cover: return "Coveredby";
    case RelationshipKind::Lighten: return "Lightenedby";
    case RelationshipKind::Possess: return "Possess";
    case RelationshipKind::CognitiveFeature: return "Similarwith";
  }
  return "?";
}

std::vector<PropertyCategory> default_perturbation(RelationshipKind kind)
{
  switch (family_of(kind)) {
    case RelationshipFamily::SpatialPosition:
      return {PropertyCategory::ReflectionAreaRelated, PropertyCategory::FeatureVariabilityRelated};
    case RelationshipFamily::SurfaceTreatment:
      return {PropertyCategory::ReflectivityRelated};
    case RelationshipFamily::Possess:
    case RelationshipFamily::CognitiveFeature:
      return {PropertyCategory::FeatureVariabilityRelated};
  }
  return {};
}

ConceptPattern ConceptPattern::any() { return ConceptPattern{}; }

ConceptPattern ConceptPattern::of_kind(ConceptKind kind)
{
  ConceptPattern p;
  p.type_ = Type::Kind;
  p.kind_ = kind;
  p.value_ = std::string(tcgen::to_string(kind));
  return p;
}

ConceptPattern ConceptPattern::family(std::string concept_name)
{
  ConceptPattern p;
  p.type_ = Type::Family;
  p.value_ = std::move(concept_name);
  return p;
}

ConceptPattern ConceptPattern::name(std::string concept_name)
{
  ConceptPattern p;
  p.type_ = Type::Name;
  p.value_ = std::move(concept_name);
  return p;
}

ConceptPattern ConceptPattern::sensor()
{
  ConceptPattern p;
  p.type_ = Type::Sensor;
  p.value_ = std::string(kSensorName);
  return p;
}

std::optional<ConceptPattern> ConceptPattern::parse(std::string_view text)
{
  if (text == "*") {
    return any();
  }
  if (text == "sensor") {
    return sensor();
  }
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    return std::nullopt;
  }
  const auto prefix = text.substr(0, colon);
  const auto value = std::string(text.substr(colon + 1));
  if (prefix == "kind") {
    const auto kind = parse_concept_kind(value);
    if (!kind) {
      return std::nullopt;
    }
    return of_kind(*kind);
  }
  if (!is_identifier(value)) {
    return std::nullopt;
  }
  if (prefix == "family") {
    return family(value);
  }
  if (prefix == "name") {
    return name(value);
  }
  return std::nullopt;
}

std::string ConceptPattern::to_string() const
{
  switch (type_) {
    case Type::Any: return "*";
    case Type::Kind: return "kind:" + value_;
    case Type::Family: return "family:" + value_;
    case Type::Name: return "name:" + value_;
    case Type::Sensor: return "sensor";
  }
  return "?";
}

int ConceptPattern::specificity() const
{
  switch (type_) {
    case Type::Any: return 0;
    case Type::Kind: return 1;
    case Type::Family: return 2;
    case Type::Name:
    case Type::Sensor:
      return 3;
  }
  return 0;
}

bool ConceptPattern::matches(const SourceOntology & ontology, std::string_view subject) const
{
  const bool is_sensor = subject == kSensorName;
  switch (type_) {
    case Type::Any:
      return !is_sensor;
    case Type::Sensor:
      return is_sensor;
    case Type::Name:
      return !is_sensor && subject == value_;
    case Type::Family:
      return !is_sensor && is_same_or_descendant(ontology, subject, value_);
    case Type::Kind: {
      const auto * c = lookup_concept(ontology, subject);
      return c != nullptr && c->kind == kind_;
    }
  }
  return false;
}

std::vector<ObstructionTrigger> default_obstruction_triggers()
{
  return {
    ObstructionTrigger{RelationshipKind::Occlusion, ConceptPattern::family("FloatingObject")},
    ObstructionTrigger{RelationshipKind::Cover, ConceptPattern::any()},
  };
}

std::vector<PropertyCategory> CompatibilityMatrix::perturbation_for(RelationshipKind kind) const
{
  const auto it = perturbations.find(kind);
  return it == perturbations.end() ? default_perturbation(kind) : it->second;
}

std::string RelationshipInstance::key() const
{
  return std::string(to_string(kind)) + "(" + focal + "," + partner + ")";
}

bool relation_less(const RelationshipInstance & a, const RelationshipInstance & b)
{
  return std::tie(a.kind, a.partner, a.focal) < std::tie(b.kind, b.partner, b.focal);
}

std::vector<std::string> RelationshipBundle::sources() const
{
  std::vector<std::string> out{focal};
  for (const auto & r : relations) {
    if (r.involves_sensor()) {
      continue;
    }
    if (std::find(out.begin(), out.end(), r.partner) == out.end()) {
      out.push_back(r.partner);
    }
  }
  return out;
}

std::string RelationshipBundle::key() const
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

namespace
{

template <typename T>
void sort_unique(std::vector<T> & v)
{
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool pattern_resolves(const ConceptPattern & p, const SourceOntology & ontology)
{
  if (p.type() == ConceptPattern::Type::Name || p.type() == ConceptPattern::Type::Family) {
    return lookup_concept(ontology, p.value()) != nullptr;
  }
  return true;
}

}  // namespace

CompatibilityMatrix canonicalize(CompatibilityMatrix matrix)
{
  for (auto & e : matrix.entries) {
    sort_unique(e.kinds);
  }
  std::stable_sort(
    matrix.entries.begin(), matrix.entries.end(), [](const MatrixEntry & a, const MatrixEntry & b) {
      return std::tie(a.focal, a.partner) < std::tie(b.focal, b.partner);
    });
  for (auto & [kind, cats] : matrix.perturbations) {
    sort_unique(cats);
  }
  std::stable_sort(
    matrix.obstruction_triggers.begin(), matrix.obstruction_triggers.end(),
    [](const ObstructionTrigger & a, const ObstructionTrigger & b) {
      return std::tie(a.kind, a.focal) < std::tie(b.kind, b.focal);
    });
  return matrix;
}

CompatibilityMatrix decode_compatibility_matrix(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  CompatibilityMatrix matrix;
  if (!dec.expect_mapping(root, "compatibility matrix document") ||
      !dec.check_version(root, kSchemaVersion)) {
    return matrix;
  }

  auto pattern_field = [&](const doc::Node & node, std::string_view key,
                           bool allow_sensor) -> std::optional<ConceptPattern> {
    const auto text = dec.string_field(node, key);
    if (!text) {
      return std::nullopt;
    }
    auto pattern = ConceptPattern::parse(*text);
    if (!pattern || (!allow_sensor && pattern->type() == ConceptPattern::Type::Sensor)) {
      dec.error(*node.find(key), ErrorCode::InvalidPattern,
                "invalid concept pattern '" + *text + "' in field '" + std::string(key) + "'");
      return std::nullopt;
    }
    if (!pattern_resolves(*pattern, ontology)) {
      dec.error(*node.find(key), ErrorCode::UnknownConcept,
                "pattern '" + *text + "' names a concept absent from the ontology");
      return std::nullopt;
    }
    return pattern;
  };

  auto kind_value = [&](const doc::Node & at, const std::string & text)
    -> std::optional<RelationshipKind> {
    const auto kind = parse_relationship_kind(text);
    if (!kind) {
      dec.error(at, ErrorCode::UnknownRelationshipKind, "unknown relationship kind '" + text + "'");
    }
    return kind;
  };

  for (const auto & node : dec.node_list(root, "perturbations")) {
    if (!dec.expect_mapping(node, "perturbation override")) {
      continue;
    }
    const auto kind_text = dec.string_field(node, "kind");
    if (!kind_text) {
      continue;
    }
    const auto kind = kind_value(node, *kind_text);
    if (!kind) {
      continue;
    }
    std::vector<PropertyCategory> cats;
    for (const auto & c : dec.string_list(node, "categories")) {
      const auto cat = parse_property_category(c);
      if (!cat) {
        dec.error(node, ErrorCode::UnknownCategory, "unknown property category '" + c + "'");
        continue;
      }
      cats.push_back(*cat);
    }
    if (!matrix.perturbations.emplace(*kind, std::move(cats)).second) {
      dec.error(node, ErrorCode::DuplicateName,
                "duplicate perturbation override for " + *kind_text);
    }
  }

  if (root.find("obstruction_triggers") != nullptr) {
    matrix.obstruction_triggers.clear();
    for (const auto & node : dec.node_list(root, "obstruction_triggers")) {
      if (!dec.expect_mapping(node, "obstruction trigger")) {
        continue;
      }
      const auto kind_text = dec.string_field(node, "kind");
      const auto focal = pattern_field(node, "focal", false);
      if (!kind_text || !focal) {
        continue;
      }
      if (const auto kind = kind_value(node, *kind_text)) {
        matrix.obstruction_triggers.push_back(ObstructionTrigger{*kind, *focal});
      }
    }
  }

  std::set<std::pair<std::string, std::string>> seen;
  for (const auto & node : dec.node_list(root, "entries")) {
    if (!dec.expect_mapping(node, "matrix entry")) {
      continue;
    }
    const auto focal = pattern_field(node, "focal", false);
    const auto partner = pattern_field(node, "partner", true);
    const auto source = dec.string_field(node, "source");
    if (!focal || !partner || !source) {
      continue;
    }
    MatrixEntry entry{*focal, *partner, {}, *source, dec.string_field(node, "note", false).value_or("")};
    bool ok = true;
    for (const auto & k : dec.string_list(node, "kinds")) {
      if (const auto kind = kind_value(node, k)) {
        entry.kinds.push_back(*kind);
      } else {
        ok = false;
      }
    }
    if (!ok) {
      continue;
    }
    if (!seen.emplace(focal->to_string(), partner->to_string()).second) {
      dec.error(node, ErrorCode::DuplicateName,
                "duplicate matrix entry for (" + focal->to_string() + ", " + partner->to_string() +
                  ")");
      continue;
    }
    matrix.entries.push_back(std::move(entry));
  }
  return canonicalize(std::move(matrix));
}

CompatibilityMatrix load_compatibility_matrix(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name)
{
  DiagnosticSink sink(source_name);
  auto matrix = decode_compatibility_matrix(doc::parse(text, format, source_name), ontology, sink);
  sink.throw_if_errors();
  return matrix;
}

CompatibilityMatrix load_compatibility_matrix_file(
  const std::filesystem::path & path, const SourceOntology & ontology)
{
  return load_compatibility_matrix(
    doc::read_file(path), doc::format_for_path(path), ontology, path.string());
}

doc::Node encode_compatibility_matrix(const CompatibilityMatrix & input)
{
  const auto matrix = canonicalize(input);
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(matrix.schema_version));
  auto & perturbations = root.set("perturbations", doc::Node::sequence());
  for (const auto & [kind, cats] : matrix.perturbations) {
    auto node = doc::Node::mapping();
    node.set("kind", doc::Node::string(std::string(to_string(kind))));
    auto & list = node.set("categories", doc::Node::sequence());
    for (auto c : cats) {
      list.push_back(doc::Node::string(std::string(to_string(c))));
    }
    perturbations.push_back(std::move(node));
  }
  // The defaults name a concept that not every ontology has, so they stay implicit.
  CompatibilityMatrix defaults;
  if (canonicalize(defaults).obstruction_triggers != matrix.obstruction_triggers) {
    auto & triggers = root.set("obstruction_triggers", doc::Node::sequence());
    for (const auto & t : matrix.obstruction_triggers) {
      auto node = doc::Node::mapping();
      node.set("kind", doc::Node::string(std::string(to_string(t.kind))));
      node.set("focal", doc::Node::string(t.focal.to_string()));
      triggers.push_back(std::move(node));
    }
  }
  auto & entries = root.set("entries", doc::Node::sequence());
  for (const auto & e : matrix.entries) {
    auto node = doc::Node::mapping();
    node.set("focal", doc::Node::string(e.focal.to_string()));
    node.set("partner", doc::Node::string(e.partner.to_string()));
    auto & kinds = node.set("kinds", doc::Node::sequence());
    for (auto k : e.kinds) {
      kinds.push_back(doc::Node::string(std::string(to_string(k))));
    }
    node.set("source", doc::Node::string(e.source));
    if (!e.note.empty()) {
      node.set("note", doc::Node::string(e.note));
    }
    entries.push_back(std::move(node));
  }
  return root;
}

std::string serialize_compatibility_matrix(const CompatibilityMatrix & matrix, doc::Format format)
{
  return doc::emit(encode_compatibility_matrix(matrix), format);
}

const MatrixEntry * most_specific_entry(
  const CompatibilityMatrix & matrix, const SourceOntology & ontology, std::string_view focal,
  std::string_view partner)
{
  const MatrixEntry * best = nullptr;
  auto rank = [](const MatrixEntry & e) {
    return std::make_pair(e.focal.specificity() + e.partner.specificity(), e.focal.specificity());
  };
  for (const auto & e : matrix.entries) {
    if (!e.focal.matches(ontology, focal) || !e.partner.matches(ontology, partner)) {
      continue;
    }
    if (best == nullptr) {
      best = &e;
      continue;
    }
    const auto r = rank(e);
    const auto rb = rank(*best);
    if (r > rb || (r == rb && std::tie(e.focal, e.partner) < std::tie(best->focal, best->partner))) {
      best = &e;
    }
  }
  return best;
}

std::vector<RelationshipKind> applicable_relationships(
  const SourceConcept & focal, const SourceConcept & partner, const CompatibilityMatrix & matrix,
  const SourceOntology & ontology)
{
  const auto * entry = most_specific_entry(matrix, ontology, focal.name, partner.name);
  if (entry == nullptr) {
    return {};
  }
  auto kinds = entry->kinds;
  if (focal.name == partner.name) {
    std::erase_if(kinds, [](RelationshipKind k) { return k != RelationshipKind::Possess; });
  }
  return kinds;
}

std::vector<RelationshipKind> applicable_sensor_relationships(
  const SourceConcept & focal, const CompatibilityMatrix & matrix, const SourceOntology & ontology)
{
  const auto * entry = most_specific_entry(matrix, ontology, focal.name, kSensorName);
  return entry == nullptr ? std::vector<RelationshipKind>{} : entry->kinds;
}

namespace
{

RelationshipInstance make_instance(
  RelationshipKind kind, const SourceConcept & focal, std::string partner,
  const CompatibilityMatrix & matrix)
{
  RelationshipInstance r;
  r.kind = kind;
  r.focal = focal.name;
  r.partner = std::move(partner);
  for (auto c : matrix.perturbation_for(kind)) {
    if (is_category_allowed(focal.kind, c)) {
      r.perturbed.push_back(c);
    }
  }
  sort_unique(r.perturbed);
  return r;
}

}  // namespace

RelationshipInstance instantiate_relationship(
  RelationshipKind kind, const SourceConcept & focal, const SourceConcept & partner,
  const CompatibilityMatrix & matrix, const SourceOntology & ontology)
{
  if (focal.name == partner.name && kind != RelationshipKind::Possess) {
    throw Error(
      ErrorCode::SelfRelationship, "concept '" + focal.name + "' cannot be in relationship " +
                                     std::string(to_string(kind)) + " with itself");
  }
  const auto kinds = applicable_relationships(focal, partner, matrix, ontology);
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
    throw Error(
      ErrorCode::IncompatiblePair, std::string(to_string(kind)) + " is not permitted between '" +
                                     focal.name + "' and '" + partner.name + "'");
  }
  return make_instance(kind, focal, partner.name, matrix);
}

RelationshipInstance instantiate_sensor_relationship(
  RelationshipKind kind, const SourceConcept & focal, const CompatibilityMatrix & matrix,
  const SourceOntology & ontology)
{
  const auto kinds = applicable_sensor_relationships(focal, matrix, ontology);
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
    throw Error(
      ErrorCode::IncompatiblePair, std::string(to_string(kind)) + " is not permitted between '" +
                                     focal.name + "' and the sensor");
  }
  return make_instance(kind, focal, std::string(kSensorName), matrix);
}

std::vector<RelationshipInstance> candidate_relationships(
  const SourceConcept & focal, const CompatibilityMatrix & matrix, const SourceOntology & ontology)
{
  std::vector<RelationshipInstance> out;
  for (const auto & partner : ontology.concepts) {
    for (auto kind : applicable_relationships(focal, partner, matrix, ontology)) {
      out.push_back(make_instance(kind, focal, partner.name, matrix));
    }
  }
  for (auto kind : applicable_sensor_relationships(focal, matrix, ontology)) {
    out.push_back(make_instance(kind, focal, std::string(kSensorName), matrix));
  }
  std::sort(out.begin(), out.end(), relation_less);
  return out;
}

RelationshipBundle compose_bundle(
  const SourceConcept & focal, std::span<const RelationshipInstance> relations, std::size_t limit)
{
  RelationshipBundle bundle;
  bundle.focal = focal.name;
  for (const auto & r : relations) {
    if (r.focal != focal.name) {
      throw Error(
        ErrorCode::MixedFocal, "relation " + r.key() + " does not have focal '" + focal.name + "'");
    }
    const bool duplicate =
      std::any_of(bundle.relations.begin(), bundle.relations.end(), [&](const auto & existing) {
        return existing.kind == r.kind && existing.partner == r.partner;
      });
    if (!duplicate) {
      bundle.relations.push_back(r);
    }
  }
  if (bundle.relations.size() > limit) {
    throw Error(
      ErrorCode::BundleTooLarge, "bundle for '" + focal.name + "' has " +
                                   std::to_string(bundle.relations.size()) +
                                   " relations, limit is " + std::to_string(limit));
  }
  std::sort(bundle.relations.begin(), bundle.relations.end(), relation_less);
  for (const auto & r : bundle.relations) {
    bundle.perturbed.insert(bundle.perturbed.end(), r.perturbed.begin(), r.perturbed.end());
  }
  sort_unique(bundle.perturbed);
  return bundle;
}

std::optional<std::pair<RelationshipKind, std::string>> parse_relation_spec(std::string_view text)
{
  const auto colon = text.rfind(':');
  if (colon == std::string_view::npos) {
    return std::nullopt;
  }
  const auto kind = parse_relationship_kind(text.substr(0, colon));
  const auto partner = std::string(text.substr(colon + 1));
  if (!kind || !(is_identifier(partner))) {
    return std::nullopt;
  }
  return std::make_pair(*kind, partner);
}

}  // namespace tcgen
