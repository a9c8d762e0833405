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

#include "tcgen/templates.hpp"

#include "tcgen/perception.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tcgen
{

int DescriptionTemplate::specificity() const
{
  return static_cast<int>(sensor.has_value()) + static_cast<int>(concept_name.has_value()) +
         static_cast<int>(relation.has_value()) + static_cast<int>(partner.has_value()) +
         static_cast<int>(property.has_value()) + static_cast<int>(stage.has_value()) +
         static_cast<int>(stage_property.has_value());
}

namespace
{

const std::set<std::string> kPlaceholders = {
  "sensor", "focal", "partner", "sources", "property", "stage", "stage_property", "description"};

bool field_matches(const std::optional<std::string> & field, const std::string & value)
{
  return !field || *field == value;
}

bool relation_matches(const DescriptionTemplate & t, const TemplateContext & ctx)
{
  if (t.relation && *t.relation == "none") {
    return ctx.relations.empty() && !t.partner;
  }
  if (!t.relation && !t.partner) {
    return true;
  }
  return std::any_of(ctx.relations.begin(), ctx.relations.end(), [&](const auto & r) {
    return field_matches(t.relation, std::string(to_string(r.kind))) &&
           field_matches(t.partner, r.partner);
  });
}

bool matches(const DescriptionTemplate & t, const TemplateContext & ctx)
{
  return field_matches(t.sensor, ctx.sensor) && field_matches(t.concept_name, ctx.focal) &&
         field_matches(t.property, ctx.property) && field_matches(t.stage, ctx.stage) &&
         field_matches(t.stage_property, ctx.stage_property) && relation_matches(t, ctx);
}

std::string substitute(std::string_view text, const std::map<std::string, std::string> & values)
{
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      const auto close = text.find('}', i);
      if (close != std::string_view::npos) {
        const auto it = values.find(std::string(text.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += text[i++];
  }
  return out;
}

std::map<std::string, std::string> placeholder_values(const TemplateContext & ctx)
{
  std::string partner;
  for (const auto & r : ctx.relations) {
    if (!r.involves_sensor()) {
      partner = display_label(r.partner);
      break;
    }
  }
  std::string sources;
  for (const auto & s : ctx.sources) {
    if (!sources.empty()) {
      sources += ", ";
    }
    sources += display_label(s);
  }
  return {
    {"sensor", ctx.sensor},
    {"focal", display_label(ctx.focal)},
    {"partner", partner},
    {"sources", sources},
    {"property", display_label(ctx.property)},
    {"stage", display_label(ctx.stage)},
    {"stage_property", display_label(ctx.stage_property)},
  };
}

void check_placeholders(doc::Decoder & dec, const doc::Node & at, std::string_view text)
{
  std::size_t i = 0;
  while ((i = text.find('{', i)) != std::string_view::npos) {
    const auto close = text.find('}', i);
    if (close == std::string_view::npos) {
      dec.error(at, ErrorCode::InvalidValue, "unterminated placeholder in template text");
      return;
    }
    const auto name = std::string(text.substr(i + 1, close - i - 1));
    if (kPlaceholders.count(name) == 0) {
      dec.error(at, ErrorCode::InvalidValue, "unknown placeholder '{" + name + "}'");
    }
    i = close + 1;
  }
}

}  // namespace

RenderedDescription render_description(const TemplateSet & templates, const TemplateContext & ctx)
{
  const DescriptionTemplate * best = nullptr;
  for (const auto & t : templates.templates) {
    if (!matches(t, ctx)) {
      continue;
    }
    if (best == nullptr || t.specificity() > best->specificity() ||
        (t.specificity() == best->specificity() && t.text < best->text)) {
      best = &t;
    }
  }
  const auto values = placeholder_values(ctx);
  if (best == nullptr) {
    return RenderedDescription{substitute(templates.fallback, values), true};
  }
  return RenderedDescription{substitute(best->text, values), false};
}

std::string render_distance_variant(
  const TemplateSet & templates, std::string_view description, const TemplateContext & ctx)
{
  auto values = placeholder_values(ctx);
  values["description"] = std::string(description);
  return substitute(templates.distance_variant, values);
}

TemplateSet decode_templates(
  const doc::Node & root, const SourceOntology & ontology, DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  TemplateSet set;
  if (!dec.expect_mapping(root, "templates document") || !dec.check_version(root, kSchemaVersion)) {
    return set;
  }
  if (const auto fallback = dec.string_field(root, "fallback", false)) {
    check_placeholders(dec, *root.find("fallback"), *fallback);
    set.fallback = *fallback;
  }
  if (const auto variant = dec.string_field(root, "distance_variant", false)) {
    check_placeholders(dec, *root.find("distance_variant"), *variant);
    set.distance_variant = *variant;
  }
  for (const auto & node : dec.node_list(root, "templates")) {
    if (!dec.expect_mapping(node, "template")) {
      continue;
    }
    DescriptionTemplate t;
    const auto text = dec.string_field(node, "text");
    if (!text) {
      continue;
    }
    t.text = *text;
    check_placeholders(dec, node, t.text);
    t.source = dec.string_field(node, "source", false).value_or("");
    if (const auto * match = node.find("match")) {
      if (!dec.expect_mapping(*match, "template match")) {
        continue;
      }
      t.sensor = dec.string_field(*match, "sensor", false);
      t.concept_name = dec.string_field(*match, "concept", false);
      t.relation = dec.string_field(*match, "relation", false);
      t.partner = dec.string_field(*match, "partner", false);
      t.property = dec.string_field(*match, "property", false);
      t.stage = dec.string_field(*match, "stage", false);
      t.stage_property = dec.string_field(*match, "stage_property", false);
      for (const auto * name : {&t.concept_name, &t.partner}) {
        if (*name && **name != kSensorName && lookup_concept(ontology, **name) == nullptr) {
          dec.error(*match, ErrorCode::UnknownConcept,
                    "template matches unknown concept '" + **name + "'");
        }
      }
      if (t.stage && find_stage(*t.stage) == nullptr) {
        dec.error(*match, ErrorCode::UnknownStage, "template matches unknown stage '" + *t.stage + "'");
      }
      if (t.relation && *t.relation != "none" && !parse_relationship_kind(*t.relation)) {
        dec.error(*match, ErrorCode::UnknownRelationshipKind,
                  "template matches unknown relationship kind '" + *t.relation + "'");
      }
    }
    set.templates.push_back(std::move(t));
  }
  return set;
}

TemplateSet load_templates(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const std::string & source_name)
{
  DiagnosticSink sink(source_name);
  auto set = decode_templates(doc::parse(text, format, source_name), ontology, sink);
  sink.throw_if_errors();
  return set;
}

TemplateSet load_templates_file(const std::filesystem::path & path, const SourceOntology & ontology)
{
  return load_templates(doc::read_file(path), doc::format_for_path(path), ontology, path.string());
}

doc::Node encode_templates(const TemplateSet & set)
{
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(set.schema_version));
  root.set("fallback", doc::Node::string(set.fallback));
  root.set("distance_variant", doc::Node::string(set.distance_variant));
  auto & list = root.set("templates", doc::Node::sequence());
  for (const auto & t : set.templates) {
    auto node = doc::Node::mapping();
    auto match = doc::Node::mapping();
    const std::pair<const char *, const std::optional<std::string> *> fields[] = {
      {"sensor", &t.sensor},     {"concept", &t.concept_name}, {"relation", &t.relation},
      {"partner", &t.partner},   {"property", &t.property},    {"stage", &t.stage},
      {"stage_property", &t.stage_property}};
    for (const auto & [key, value] : fields) {
      if (*value) {
        match.set(key, doc::Node::string(**value));
      }
    }
    if (!match.entries().empty()) {
      node.set("match", std::move(match));
    }
    node.set("text", doc::Node::string(t.text));
    if (!t.source.empty()) {
      node.set("source", doc::Node::string(t.source));
    }
    list.push_back(std::move(node));
  }
  return root;
}

std::string serialize_templates(const TemplateSet & set, doc::Format format)
{
  return doc::emit(encode_templates(set), format);
}

}  // namespace tcgen
