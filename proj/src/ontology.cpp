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

#include "tcgen/ontology.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

namespace tcgen
{

std::string_view to_string(ConceptKind kind)
{
  switch (kind) {
    case ConceptKind::InteractiveEntity: return "InteractiveEntity";
    case ConceptKind::DisturbingEntity: return "DisturbingEntity";
    case ConceptKind::EnvironmentalModification: return "EnvironmentalModification";
  }
  return "?";
}

std::string_view to_string(PropertyCategory category)
{
  switch (category) {
    case PropertyCategory::ReflectivityRelated: return "ReflectivityRelated";
    case PropertyCategory::ReflectionAreaRelated: return "ReflectionAreaRelated";
    case PropertyCategory::DataGenerationRelated: return "DataGenerationRelated";
    case PropertyCategory::FeatureVariabilityRelated: return "FeatureVariabilityRelated";
    case PropertyCategory::TransmittanceRelated: return "TransmittanceRelated";
  }
  return "?";
}

std::optional<ConceptKind> parse_concept_kind(std::string_view text)
{
  for (auto kind : kAllConceptKinds) {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  return std::nullopt;
}

std::optional<PropertyCategory> parse_property_category(std::string_view text)
{
  for (auto category : kAllPropertyCategories) {
    if (to_string(category) == text) {
      return category;
    }
  }
  return std::nullopt;
}

std::span<const PropertyCategory> allowed_categories(ConceptKind kind)
{
  static constexpr PropertyCategory entity[] = {
    PropertyCategory::ReflectivityRelated, PropertyCategory::ReflectionAreaRelated,
    PropertyCategory::DataGenerationRelated, PropertyCategory::FeatureVariabilityRelated};
  static constexpr PropertyCategory modification[] = {
    PropertyCategory::ReflectivityRelated, PropertyCategory::TransmittanceRelated};
  if (is_entity(kind)) {
    return entity;
  }
  return modification;
}

bool is_category_allowed(ConceptKind kind, PropertyCategory category)
{
  const auto allowed = allowed_categories(kind);
  return std::find(allowed.begin(), allowed.end(), category) != allowed.end();
}

bool is_entity(ConceptKind kind)
{
  return kind == ConceptKind::InteractiveEntity || kind == ConceptKind::DisturbingEntity;
}

bool is_identifier(std::string_view text)
{
  if (text.empty() || std::isalpha(static_cast<unsigned char>(text.front())) == 0) {
    return false;
  }
  return std::all_of(text.begin(), text.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
  });
}

std::string display_label(std::string_view identifier)
{
  std::string out;
  for (std::size_t i = 0; i < identifier.size(); ++i) {
    const char c = identifier[i];
    if (i > 0 && std::isupper(static_cast<unsigned char>(c)) != 0) {
      out += ' ';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (c == '_') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

bool SourceConcept::has_category(PropertyCategory category) const
{
  return std::any_of(properties.begin(), properties.end(), [&](const SourceProperty & p) {
    return p.category == category;
  });
}

const SourceProperty * SourceConcept::find_property(std::string_view property_name) const
{
  for (const auto & p : properties) {
    if (p.name == property_name) {
      return &p;
    }
  }
  return nullptr;
}

const SourceProperty * SourceConcept::find_property(
  std::string_view property_name, PropertyCategory category) const
{
  for (const auto & p : properties) {
    if (p.name == property_name && p.category == category) {
      return &p;
    }
  }
  return nullptr;
}

SourceOntology canonicalize(SourceOntology ontology)
{
  for (auto & c : ontology.concepts) {
    std::sort(c.properties.begin(), c.properties.end(), [](const auto & a, const auto & b) {
      return std::tie(a.name, a.category) < std::tie(b.name, b.category);
    });
    std::sort(c.instances.begin(), c.instances.end());
  }
  std::stable_sort(
    ontology.concepts.begin(), ontology.concepts.end(),
    [](const auto & a, const auto & b) { return a.name < b.name; });
  return ontology;
}

void validate_source_ontology(
  const SourceOntology & ontology, DiagnosticSink & sink, const std::vector<doc::Mark> * marks)
{
  auto report = [&](std::size_t index, ErrorCode code, std::string message) {
    doc::Mark m;
    if (marks != nullptr && index < marks->size()) {
      m = (*marks)[index];
    }
    sink.error(code, std::move(message), m.line, m.column);
  };

  if (ontology.schema_version != kSchemaVersion) {
    sink.error(
      ErrorCode::UnknownSchemaVersion,
      "unsupported schema_version '" + ontology.schema_version + "'");
  }

  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < ontology.concepts.size(); ++i) {
    const auto & c = ontology.concepts[i];
    if (!is_identifier(c.name)) {
      report(i, ErrorCode::InvalidValue, "concept name '" + c.name + "' is not an identifier");
    }
    if (c.name == kSensorName) {
      report(i, ErrorCode::ReservedName, "concept name '" + c.name + "' is reserved");
    }
    if (!by_name.emplace(c.name, i).second) {
      report(i, ErrorCode::DuplicateName, "duplicate concept '" + c.name + "'");
    }

    std::set<std::pair<std::string, PropertyCategory>> seen_props;
    for (const auto & p : c.properties) {
      if (!is_identifier(p.name)) {
        report(i, ErrorCode::InvalidValue,
               "property name '" + p.name + "' of '" + c.name + "' is not an identifier");
      }
      if (!seen_props.emplace(p.name, p.category).second) {
        report(i, ErrorCode::DuplicateProperty,
               "duplicate property '" + p.name + "' (" + std::string(to_string(p.category)) +
                 ") in concept '" + c.name + "'");
      }
      if (!is_category_allowed(c.kind, p.category)) {
        report(i, ErrorCode::IllegalCategoryForKind,
               "property '" + p.name + "' of '" + c.name + "' has category " +
                 std::string(to_string(p.category)) + ", not allowed for " +
                 std::string(to_string(c.kind)));
      }
    }
    std::set<std::string> seen_instances;
    for (const auto & inst : c.instances) {
      if (!is_identifier(inst)) {
        report(i, ErrorCode::InvalidValue,
               "instance '" + inst + "' of '" + c.name + "' is not an identifier");
      }
      if (!seen_instances.insert(inst).second) {
        report(i, ErrorCode::DuplicateInstance,
               "duplicate instance '" + inst + "' in concept '" + c.name + "'");
      }
    }
  }

  for (std::size_t i = 0; i < ontology.concepts.size(); ++i) {
    const auto & c = ontology.concepts[i];
    if (!c.parent) {
      continue;
    }
    const auto it = by_name.find(*c.parent);
    if (it == by_name.end()) {
      report(i, ErrorCode::DanglingParent,
             "concept '" + c.name + "' has unknown parent '" + *c.parent + "'");
      continue;
    }
    const auto & parent = ontology.concepts[it->second];
    if (parent.kind != c.kind) {
      report(i, ErrorCode::CrossKindParent,
             "concept '" + c.name + "' (" + std::string(to_string(c.kind)) + ") has parent '" +
               parent.name + "' of kind " + std::string(to_string(parent.kind)));
    }
    // Walk up; revisiting the start concept means it sits on a cycle.
    std::set<std::string> visited{c.name};
    const SourceConcept * cursor = &parent;
    while (cursor != nullptr) {
      if (cursor->name == c.name) {
        report(i, ErrorCode::TaxonomyCycle, "concept '" + c.name + "' is its own ancestor");
        break;
      }
      if (!visited.insert(cursor->name).second || !cursor->parent) {
        break;
      }
      const auto next = by_name.find(*cursor->parent);
      cursor = next == by_name.end() ? nullptr : &ontology.concepts[next->second];
    }
  }
}

SourceOntology decode_source_ontology(const doc::Node & root, DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  SourceOntology ontology;
  if (!dec.expect_mapping(root, "source ontology document")) {
    return ontology;
  }
  if (!dec.check_version(root, kSchemaVersion)) {
    return ontology;
  }

  std::vector<doc::Mark> marks;
  for (const auto & node : dec.node_list(root, "concepts")) {
    if (!dec.expect_mapping(node, "concept")) {
      continue;
    }
    SourceConcept c;
    const auto name = dec.string_field(node, "name");
    const auto kind_text = dec.string_field(node, "kind");
    if (!name || !kind_text) {
      continue;
    }
    c.name = *name;
    const auto kind = parse_concept_kind(*kind_text);
    if (!kind) {
      dec.error(*node.find("kind"), ErrorCode::UnknownKind,
                "unknown concept kind '" + *kind_text + "' for '" + c.name + "'");
      continue;
    }
    c.kind = *kind;
    c.parent = dec.string_field(node, "parent", false);
    c.note = dec.string_field(node, "note", false).value_or("");
    c.instances = dec.string_list(node, "instances");

    bool ok = true;
    for (const auto & pnode : dec.node_list(node, "properties")) {
      if (!dec.expect_mapping(pnode, "property")) {
        ok = false;
        continue;
      }
      const auto pname = dec.string_field(pnode, "name");
      const auto ptext = dec.string_field(pnode, "category");
      if (!pname || !ptext) {
        ok = false;
        continue;
      }
      const auto category = parse_property_category(*ptext);
      if (!category) {
        dec.error(*pnode.find("category"), ErrorCode::UnknownCategory,
                  "unknown property category '" + *ptext + "' for '" + c.name + "." + *pname +
                    "'");
        ok = false;
        continue;
      }
      c.properties.push_back(
        SourceProperty{*pname, *category, dec.string_field(pnode, "note", false).value_or("")});
    }
    if (!ok) {
      continue;
    }
    marks.push_back(node.mark);
    ontology.concepts.push_back(std::move(c));
  }

  validate_source_ontology(ontology, sink, &marks);
  return canonicalize(std::move(ontology));
}

SourceOntology load_source_ontology(
  std::string_view text, doc::Format format, const std::string & source_name)
{
  DiagnosticSink sink(source_name);
  auto ontology = decode_source_ontology(doc::parse(text, format, source_name), sink);
  sink.throw_if_errors();
  return ontology;
}

SourceOntology load_source_ontology_file(const std::filesystem::path & path)
{
  return load_source_ontology(doc::read_file(path), doc::format_for_path(path), path.string());
}

doc::Node encode_source_ontology(const SourceOntology & input)
{
  const auto ontology = canonicalize(input);
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(ontology.schema_version));
  auto & concepts = root.set("concepts", doc::Node::sequence());
  for (const auto & c : ontology.concepts) {
    auto node = doc::Node::mapping();
    node.set("name", doc::Node::string(c.name));
    node.set("kind", doc::Node::string(std::string(to_string(c.kind))));
    if (c.parent) {
      node.set("parent", doc::Node::string(*c.parent));
    }
    auto & props = node.set("properties", doc::Node::sequence());
    for (const auto & p : c.properties) {
      auto pnode = doc::Node::mapping();
      pnode.set("name", doc::Node::string(p.name));
      pnode.set("category", doc::Node::string(std::string(to_string(p.category))));
      if (!p.note.empty()) {
        pnode.set("note", doc::Node::string(p.note));
      }
      props.push_back(std::move(pnode));
    }
    auto & instances = node.set("instances", doc::Node::sequence());
    for (const auto & inst : c.instances) {
      instances.push_back(doc::Node::string(inst));
    }
    if (!c.note.empty()) {
      node.set("note", doc::Node::string(c.note));
    }
    concepts.push_back(std::move(node));
  }
  return root;
}

std::string serialize_source_ontology(const SourceOntology & ontology, doc::Format format)
{
  return doc::emit(encode_source_ontology(ontology), format);
}

const SourceConcept * lookup_concept(const SourceOntology & ontology, std::string_view name)
{
  for (const auto & c : ontology.concepts) {
    if (c.name == name) {
      return &c;
    }
  }
  return nullptr;
}

bool is_same_or_descendant(
  const SourceOntology & ontology, std::string_view name, std::string_view ancestor)
{
  std::set<std::string_view> visited;
  const SourceConcept * cursor = lookup_concept(ontology, name);
  if (cursor == nullptr) {
    return name == ancestor;
  }
  while (cursor != nullptr && visited.insert(cursor->name).second) {
    if (cursor->name == ancestor) {
      return true;
    }
    cursor = cursor->parent ? lookup_concept(ontology, *cursor->parent) : nullptr;
  }
  return false;
}

}  // namespace tcgen
