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

#include "tcgen/catalog.hpp"

#include "tcgen/assessment.hpp"
#include "tcgen/perception.hpp"

#include <sstream>

namespace tcgen
{

namespace
{

doc::Node string_list(const std::vector<std::string> & values)
{
  auto list = doc::Node::sequence();
  for (const auto & v : values) {
    list.push_back(doc::Node::string(v));
  }
  return list;
}

doc::Node encode_condition(const TriggeringCondition & c)
{
  auto node = doc::Node::mapping();
  node.set("id", doc::Node::string(c.id));
  node.set("sensor", doc::Node::string(c.sensor));
  node.set("sources", string_list(c.sources));
  auto & relations = node.set("relationships", doc::Node::sequence());
  for (const auto & r : c.relationships) {
    auto rel = doc::Node::mapping();
    rel.set("kind", doc::Node::string(std::string(to_string(r.kind))));
    rel.set("focal", doc::Node::string(r.focal));
    rel.set("partner", doc::Node::string(r.partner));
    auto & perturbed = rel.set("perturbed", doc::Node::sequence());
    for (auto category : r.perturbed) {
      perturbed.push_back(doc::Node::string(std::string(to_string(category))));
    }
    if (!r.note.empty()) {
      rel.set("note", doc::Node::string(r.note));
    }
    relations.push_back(std::move(rel));
  }
  node.set("property_owner", doc::Node::string(c.property_owner));
  node.set("source_property", doc::Node::string(c.source_property));
  node.set("affected_stage", doc::Node::string(c.affected_stage));
  node.set("stage_property", doc::Node::string(c.stage_property));
  auto & effect = node.set("effect", doc::Node::mapping());
  effect.set("degree", doc::Node::integer(c.effect.degree.value()));
  effect.set("principle", doc::Node::string(c.effect.principle));
  effect.set("worst_case", doc::Node::string(c.effect.worst_case));
  effect.set("source", doc::Node::string(c.effect.source));
  node.set("description", doc::Node::string(c.description));
  node.set("distance_augmented", doc::Node::boolean(c.distance_augmented));
  if (c.assessment) {
    auto & a = node.set("assessment", doc::Node::mapping());
    a.set("exposure", doc::Node::string(std::string(to_string(c.assessment->exposure))));
    a.set("criticality", doc::Node::string(std::string(to_string(c.assessment->criticality))));
  }
  if (c.priority) {
    node.set("priority", doc::Node::integer(*c.priority));
  }
  return node;
}

std::optional<TriggeringCondition> decode_condition(doc::Decoder & dec, const doc::Node & node)
{
  if (!dec.expect_mapping(node, "condition")) {
    return std::nullopt;
  }
  TriggeringCondition c;
  const auto id = dec.string_field(node, "id");
  const auto sensor = dec.string_field(node, "sensor");
  const auto owner = dec.string_field(node, "property_owner");
  const auto property = dec.string_field(node, "source_property");
  const auto stage = dec.string_field(node, "affected_stage");
  const auto stage_property = dec.string_field(node, "stage_property");
  const auto description = dec.string_field(node, "description");
  const auto distance = dec.bool_field(node, "distance_augmented");
  c.sources = dec.string_list(node, "sources");
  if (!id || !sensor || !owner || !property || !stage || !stage_property || !description ||
      !distance) {
    return std::nullopt;
  }
  if (c.sources.empty()) {
    dec.error(node, ErrorCode::MissingField, "condition " + *id + " has no sources");
    return std::nullopt;
  }
  c.id = *id;
  c.sensor = *sensor;
  c.property_owner = *owner;
  c.source_property = *property;
  c.affected_stage = *stage;
  c.stage_property = *stage_property;
  c.description = *description;
  c.distance_augmented = *distance;
  if (find_stage(c.affected_stage) == nullptr) {
    dec.error(node, ErrorCode::UnknownStage, "condition " + c.id + " names unknown stage '" +
                                               c.affected_stage + "'");
  }

  for (const auto & rel : dec.node_list(node, "relationships")) {
    if (!dec.expect_mapping(rel, "relationship")) {
      continue;
    }
    RelationshipInstance r;
    const auto kind = dec.string_field(rel, "kind");
    const auto focal = dec.string_field(rel, "focal");
    const auto partner = dec.string_field(rel, "partner");
    if (!kind || !focal || !partner) {
      continue;
    }
    const auto parsed = parse_relationship_kind(*kind);
    if (!parsed) {
      dec.error(rel, ErrorCode::UnknownRelationshipKind, "unknown relationship kind '" + *kind + "'");
      continue;
    }
    r.kind = *parsed;
    r.focal = *focal;
    r.partner = *partner;
    for (const auto & name : dec.string_list(rel, "perturbed")) {
      if (const auto category = parse_property_category(name)) {
        r.perturbed.push_back(*category);
      } else {
        dec.error(rel, ErrorCode::UnknownCategory, "unknown property category '" + name + "'");
      }
    }
    r.note = dec.string_field(rel, "note", false).value_or("");
    c.relationships.push_back(std::move(r));
  }

  if (const auto * effect = node.find("effect"); effect != nullptr && dec.expect_mapping(*effect, "effect")) {
    const auto degree = dec.int_field(*effect, "degree");
    if (degree) {
      if (*degree < -3 || *degree > 3) {
        dec.error(*effect, ErrorCode::DegreeOutOfRange,
                  "degree " + std::to_string(*degree) + " outside -3..3");
      } else {
        c.effect.degree = EffectDegree::of(static_cast<int>(*degree));
      }
    }
    c.effect.principle = dec.string_field(*effect, "principle", false).value_or("");
    c.effect.worst_case = dec.string_field(*effect, "worst_case", false).value_or("");
    c.effect.source = dec.string_field(*effect, "source", false).value_or("");
  } else {
    dec.error(node, ErrorCode::MissingField, "condition " + c.id + " has no effect");
  }
  c.effect.concept_name = c.property_owner;
  c.effect.property = c.source_property;
  c.effect.stage = c.affected_stage;
  c.effect.stage_property = c.stage_property;
  c.effect.relations = to_refs(c.relationships);

  if (const auto * a = node.find("assessment"); a != nullptr && dec.expect_mapping(*a, "assessment")) {
    const auto e = dec.string_field(*a, "exposure");
    const auto cr = dec.string_field(*a, "criticality");
    if (e && cr) {
      const auto pe = parse_exposure(*e);
      const auto pc = parse_criticality(*cr);
      if (pe && pc) {
        c.assessment = AssessmentClass{*pe, *pc};
      } else {
        dec.error(*a, ErrorCode::InvalidValue, "invalid assessment " + *e + "/" + *cr);
      }
    }
  }
  if (const auto priority = dec.int_field(node, "priority", false)) {
    c.priority = static_cast<int>(*priority);
  }
  return c;
}

std::string md_cell(std::string_view text)
{
  std::string out;
  for (char ch : text) {
    if (ch == '|') {
      out += "\\|";
    } else if (ch == '\n') {
      out += ' ';
    } else {
      out += ch;
    }
  }
  return out;
}

std::string relation_label(const RelationshipInstance & r)
{
  return std::string(predicate_name(r.kind)) + "(" + display_label(r.focal) + ", " +
         display_label(r.partner) + ")";
}

std::string bundle_label(const RelationshipBundle & bundle)
{
  if (bundle.relations.empty()) {
    return display_label(bundle.focal);
  }
  std::string out;
  for (const auto & r : bundle.relations) {
    if (!out.empty()) {
      out += " + ";
    }
    out += relation_label(r);
  }
  return out;
}

std::string row_label(const std::string & focal, const MatrixRow & row)
{
  return row.owner == focal ? display_label(row.property)
                            : display_label(row.owner) + ": " + display_label(row.property);
}

std::string column_label(const MatrixColumn & column)
{
  return stage_label(column.stage) + ": " + display_label(column.stage_property);
}

}  // namespace

doc::Node encode_catalog(const Catalog & catalog)
{
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(catalog.schema_version));
  root.set("system", doc::Node::string(catalog.system));
  root.set("threshold", doc::Node::integer(catalog.threshold));
  root.set("bundle_limit", doc::Node::integer(static_cast<std::int64_t>(catalog.bundle_limit)));
  auto & list = root.set("conditions", doc::Node::sequence());
  for (const auto & c : catalog.conditions) {
    list.push_back(encode_condition(c));
  }
  return root;
}

Catalog decode_catalog(const doc::Node & root, DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  Catalog catalog;
  if (!dec.expect_mapping(root, "catalog document") || !dec.check_version(root, kSchemaVersion)) {
    return catalog;
  }
  catalog.system = dec.string_field(root, "system", false).value_or("");
  if (const auto t = dec.int_field(root, "threshold", false)) {
    catalog.threshold = static_cast<int>(*t);
  }
  if (const auto b = dec.int_field(root, "bundle_limit", false)) {
    catalog.bundle_limit = static_cast<std::size_t>(*b < 0 ? 0 : *b);
  }
  for (const auto & node : dec.node_list(root, "conditions")) {
    if (auto c = decode_condition(dec, node)) {
      catalog.conditions.push_back(std::move(*c));
    }
  }
  return catalog;
}

std::string serialize_catalog(const Catalog & catalog, doc::Format format)
{
  return doc::emit(encode_catalog(catalog), format);
}

Catalog load_catalog(std::string_view text, doc::Format format, const std::string & source_name)
{
  DiagnosticSink sink(source_name);
  auto catalog = decode_catalog(doc::parse(text, format, source_name), sink);
  sink.throw_if_errors();
  return catalog;
}

Catalog load_catalog_file(const std::filesystem::path & path)
{
  return load_catalog(doc::read_file(path), doc::format_for_path(path), path.string());
}

std::string sources_label(const TriggeringCondition & condition)
{
  std::string out;
  for (const auto & r : condition.relationships) {
    if (r.involves_sensor()) {
      continue;
    }
    if (!out.empty()) {
      out += " + ";
    }
    out += relation_label(r);
  }
  return out.empty() ? display_label(condition.focal()) : out;
}

std::string property_label(const TriggeringCondition & condition)
{
  return row_label(condition.focal(), {condition.property_owner, condition.source_property});
}

std::string csv_field(std::string_view value)
{
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char ch : value) {
    if (ch == '"') {
      out += '"';
    }
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text)
{
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n' || ch == '\r') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
        ++i;
      }
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += ch;
    }
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string render_catalog_csv(const std::vector<TriggeringCondition> & conditions)
{
  std::ostringstream out;
  out << kCatalogCsvHeader << '\n';
  for (const auto & c : conditions) {
    out << csv_field(c.id) << ',' << csv_field(c.sensor) << ',' << csv_field(sources_label(c))
        << ',' << csv_field(property_label(c)) << ',' << csv_field(stage_label(c.affected_stage))
        << ',' << csv_field(c.description) << '\n';
  }
  return out.str();
}

std::string render_catalog_markdown(const std::vector<TriggeringCondition> & conditions)
{
  std::ostringstream out;
  out << "| No. | Sensor | Triggering sources | Properties | Process stage | Quality | Effect | "
         "Triggering condition | E | C | Priority |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto & c : conditions) {
    out << "| " << md_cell(c.id) << " | " << md_cell(c.sensor) << " | "
        << md_cell(sources_label(c)) << " | " << md_cell(property_label(c)) << " | "
        << md_cell(stage_label(c.affected_stage)) << " | " << md_cell(display_label(c.stage_property))
        << " | " << render_degree(c.effect.degree, GlyphStyle::Markdown) << " | "
        << md_cell(c.description) << " | ";
    if (c.assessment) {
      out << to_string(c.assessment->exposure) << " | " << to_string(c.assessment->criticality)
          << " | " << priority_of(*c.assessment) << " |\n";
    } else {
      out << " |  | unrated |\n";
    }
  }
  return out.str();
}

std::string render_matrix_markdown(const GenerationMatrix & matrix)
{
  std::ostringstream out;
  out << "### " << md_cell(matrix.sensor) << ": " << md_cell(bundle_label(matrix.bundle)) << "\n\n";
  out << "| Source property |";
  for (const auto & column : matrix.columns) {
    out << ' ' << md_cell(column_label(column)) << " |";
  }
  out << "\n|---|";
  for (std::size_t i = 0; i < matrix.columns.size(); ++i) {
    out << "---|";
  }
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    out << "| " << md_cell(row_label(matrix.bundle.focal, matrix.rows[r])) << " |";
    for (std::size_t c = 0; c < matrix.columns.size(); ++c) {
      out << ' ' << render_degree(matrix.at(r, c).degree, GlyphStyle::Markdown) << " |";
    }
    out << '\n';
  }
  return out.str();
}

std::string render_matrix_csv(const GenerationMatrix & matrix)
{
  std::ostringstream out;
  out << "Source property";
  for (const auto & column : matrix.columns) {
    out << ',' << csv_field(column_label(column));
  }
  out << '\n';
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    out << csv_field(row_label(matrix.bundle.focal, matrix.rows[r]));
    for (std::size_t c = 0; c < matrix.columns.size(); ++c) {
      out << ',' << csv_field(render_degree(matrix.at(r, c).degree, GlyphStyle::Ascii));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace tcgen
