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

#include "tcgen/effects.hpp"

#include "tcgen/perception.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace tcgen
{

EffectDegree EffectDegree::of(int value)
{
  if (value < -3 || value > 3) {
    throw Error(
      ErrorCode::DegreeOutOfRange, "effect degree " + std::to_string(value) + " outside [-3, 3]");
  }
  EffectDegree d;
  d.value_ = value;
  return d;
}

namespace
{
constexpr std::string_view kUnicodeMinus = "−";
}  // namespace

std::string render_degree(EffectDegree degree, GlyphStyle style)
{
  std::string mark;
  if (degree.is_negative()) {
    mark = style == GlyphStyle::Markdown ? std::string(kUnicodeMinus) : "-";
  } else {
    mark = "+";
  }
  std::string out;
  for (int i = 0; i < degree.magnitude(); ++i) {
    if (i > 0) {
      out += ' ';
    }
    out += mark;
  }
  return out;
}

std::optional<EffectDegree> parse_degree(std::string_view text)
{
  int minus = 0;
  int plus = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
    } else if (text[i] == '-') {
      ++minus;
      ++i;
    } else if (text[i] == '+') {
      ++plus;
      ++i;
    } else if (text.substr(i, kUnicodeMinus.size()) == kUnicodeMinus) {
      ++minus;
      i += kUnicodeMinus.size();
    } else {
      return std::nullopt;
    }
  }
  if ((minus > 0 && plus > 0) || minus > 3 || plus > 3) {
    return std::nullopt;
  }
  return EffectDegree::of(plus - minus);
}

std::string RelationRef::key() const
{
  return std::string(to_string(kind)) + "(" + focal + "," + partner + ")";
}

bool relation_ref_less(const RelationRef & a, const RelationRef & b)
{
  return std::tie(a.kind, a.partner, a.focal) < std::tie(b.kind, b.partner, b.focal);
}

std::string relation_set_key(const std::vector<RelationRef> & relations)
{
  auto sorted = relations;
  std::sort(sorted.begin(), sorted.end(), relation_ref_less);
  std::string out;
  for (const auto & r : sorted) {
    if (!out.empty()) {
      out += '+';
    }
    out += r.key();
  }
  return out;
}

std::vector<RelationRef> to_refs(const std::vector<RelationshipInstance> & relations)
{
  std::vector<RelationRef> out;
  out.reserve(relations.size());
  for (const auto & r : relations) {
    out.push_back(RelationRef{r.kind, r.focal, r.partner});
  }
  return out;
}

std::string EffectEntry::cell_key() const
{
  return concept_name + "." + property + "|" + stage + "." + stage_property + "|" +
         relation_set_key(relations);
}

EffectKnowledgeBase canonicalize(EffectKnowledgeBase kb)
{
  for (auto & e : kb.entries) {
    std::sort(e.relations.begin(), e.relations.end(), relation_ref_less);
  }
  std::stable_sort(kb.entries.begin(), kb.entries.end(), [](const auto & a, const auto & b) {
    return a.cell_key() < b.cell_key();
  });
  return kb;
}

void validate_effects(
  const EffectKnowledgeBase & kb, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix, DiagnosticSink & sink, const std::vector<doc::Mark> * marks)
{
  std::set<std::string> cells;
  for (std::size_t i = 0; i < kb.entries.size(); ++i) {
    const auto & e = kb.entries[i];
    doc::Mark m;
    if (marks != nullptr && i < marks->size()) {
      m = (*marks)[i];
    }
    auto report = [&](ErrorCode code, const std::string & message) {
      sink.error(code, message, m.line, m.column);
    };

    const auto * owner = lookup_concept(ontology, e.concept_name);
    if (owner == nullptr) {
      report(ErrorCode::UnknownConcept, "effect entry names unknown concept '" + e.concept_name + "'");
      continue;
    }
    if (owner->find_property(e.property) == nullptr) {
      report(ErrorCode::UnknownProperty,
             "concept '" + e.concept_name + "' has no property '" + e.property + "'");
    }
    const auto * stage = find_stage(e.stage);
    if (stage == nullptr) {
      report(ErrorCode::UnknownStage, "effect entry names unknown stage '" + e.stage + "'");
    } else if (!has_quality_property(*stage, e.stage_property)) {
      report(ErrorCode::UnknownStageProperty,
             "stage '" + e.stage + "' has no quality property '" + e.stage_property + "'");
    }

    if (!e.relations.empty()) {
      const auto & focal_name = e.relations.front().focal;
      bool owner_in_context = e.concept_name == focal_name;
      for (const auto & r : e.relations) {
        if (r.focal != focal_name) {
          report(ErrorCode::MixedFocal, "relation context of '" + e.cell_key() +
                                          "' mixes focal concepts");
          break;
        }
        const auto * focal = lookup_concept(ontology, r.focal);
        if (focal == nullptr) {
          report(ErrorCode::UnknownConcept, "relation names unknown focal '" + r.focal + "'");
          continue;
        }
        std::vector<RelationshipKind> allowed;
        if (r.partner == kSensorName) {
          allowed = applicable_sensor_relationships(*focal, matrix, ontology);
        } else if (const auto * partner = lookup_concept(ontology, r.partner)) {
          allowed = applicable_relationships(*focal, *partner, matrix, ontology);
        } else {
          report(ErrorCode::UnknownConcept, "relation names unknown partner '" + r.partner + "'");
          continue;
        }
        if (std::find(allowed.begin(), allowed.end(), r.kind) == allowed.end()) {
          report(ErrorCode::IncompatiblePair,
                 "relation " + r.key() + " is not permitted by the compatibility matrix");
        }
        owner_in_context = owner_in_context || r.partner == e.concept_name;
      }
      if (!owner_in_context) {
        report(ErrorCode::InvalidValue, "owner '" + e.concept_name +
                                          "' is neither focal nor partner of its relation context");
      }
    }

    if (!cells.insert(e.cell_key()).second) {
      report(ErrorCode::DuplicateName, "duplicate effect entry for cell " + e.cell_key());
    }
  }
}

EffectKnowledgeBase decode_effects(
  const doc::Node & root, const SourceOntology & ontology, const CompatibilityMatrix & matrix,
  DiagnosticSink & sink)
{
  doc::Decoder dec(sink);
  EffectKnowledgeBase kb;
  if (!dec.expect_mapping(root, "effects document") || !dec.check_version(root, kSchemaVersion)) {
    return kb;
  }
  std::vector<doc::Mark> marks;
  for (const auto & node : dec.node_list(root, "entries")) {
    if (!dec.expect_mapping(node, "effect entry")) {
      continue;
    }
    EffectEntry e;
    const auto concept_name = dec.string_field(node, "concept");
    const auto property = dec.string_field(node, "property");
    const auto stage = dec.string_field(node, "stage");
    const auto stage_property = dec.string_field(node, "stage_property");
    const auto degree = dec.int_field(node, "degree");
    if (!concept_name || !property || !stage || !stage_property || !degree) {
      continue;
    }
    if (*degree < -3 || *degree > 3) {
      dec.error(*node.find("degree"), ErrorCode::DegreeOutOfRange,
                "effect degree " + std::to_string(*degree) + " outside [-3, 3]");
      continue;
    }
    e.concept_name = *concept_name;
    e.property = *property;
    e.stage = *stage;
    e.stage_property = *stage_property;
    e.degree = EffectDegree::of(static_cast<int>(*degree));
    e.principle = dec.string_field(node, "principle", false).value_or("");
    e.worst_case = dec.string_field(node, "worst_case", false).value_or("");
    e.source = dec.string_field(node, "source", false).value_or("");
    bool ok = true;
    for (const auto & rnode : dec.node_list(node, "relations")) {
      if (!dec.expect_mapping(rnode, "relation")) {
        ok = false;
        continue;
      }
      const auto kind_text = dec.string_field(rnode, "kind");
      const auto focal = dec.string_field(rnode, "focal");
      const auto partner = dec.string_field(rnode, "partner");
      if (!kind_text || !focal || !partner) {
        ok = false;
        continue;
      }
      const auto kind = parse_relationship_kind(*kind_text);
      if (!kind) {
        dec.error(rnode, ErrorCode::UnknownRelationshipKind,
                  "unknown relationship kind '" + *kind_text + "'");
        ok = false;
        continue;
      }
      e.relations.push_back(RelationRef{*kind, *focal, *partner});
    }
    if (!ok) {
      continue;
    }
    std::sort(e.relations.begin(), e.relations.end(), relation_ref_less);
    marks.push_back(node.mark);
    kb.entries.push_back(std::move(e));
  }
  validate_effects(kb, ontology, matrix, sink, &marks);
  return canonicalize(std::move(kb));
}

EffectKnowledgeBase load_effects(
  std::string_view text, doc::Format format, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix, const std::string & source_name)
{
  DiagnosticSink sink(source_name);
  auto kb = decode_effects(doc::parse(text, format, source_name), ontology, matrix, sink);
  sink.throw_if_errors();
  return kb;
}

EffectKnowledgeBase load_effects_file(
  const std::filesystem::path & path, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix)
{
  return load_effects(
    doc::read_file(path), doc::format_for_path(path), ontology, matrix, path.string());
}

doc::Node encode_effects(const EffectKnowledgeBase & input)
{
  const auto kb = canonicalize(input);
  auto root = doc::Node::mapping();
  root.set("schema_version", doc::Node::string(kb.schema_version));
  auto & entries = root.set("entries", doc::Node::sequence());
  for (const auto & e : kb.entries) {
    auto node = doc::Node::mapping();
    node.set("concept", doc::Node::string(e.concept_name));
    node.set("property", doc::Node::string(e.property));
    node.set("stage", doc::Node::string(e.stage));
    node.set("stage_property", doc::Node::string(e.stage_property));
    node.set("degree", doc::Node::integer(e.degree.value()));
    if (!e.relations.empty()) {
      auto & rel = node.set("relations", doc::Node::sequence());
      for (const auto & r : e.relations) {
        auto rnode = doc::Node::mapping();
        rnode.set("kind", doc::Node::string(std::string(to_string(r.kind))));
        rnode.set("focal", doc::Node::string(r.focal));
        rnode.set("partner", doc::Node::string(r.partner));
        rel.push_back(std::move(rnode));
      }
    }
    if (!e.principle.empty()) {
      node.set("principle", doc::Node::string(e.principle));
    }
    if (!e.worst_case.empty()) {
      node.set("worst_case", doc::Node::string(e.worst_case));
    }
    if (!e.source.empty()) {
      node.set("source", doc::Node::string(e.source));
    }
    entries.push_back(std::move(node));
  }
  return root;
}

std::string serialize_effects(const EffectKnowledgeBase & kb, doc::Format format)
{
  return doc::emit(encode_effects(kb), format);
}

}  // namespace tcgen
