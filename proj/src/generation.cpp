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

#include "tcgen/generation.hpp"

#include <algorithm>
#include <functional>
#include <tuple>
#include <utility>

namespace tcgen
{

namespace
{

std::string cell_lookup_key(
  std::string_view owner, std::string_view property, std::string_view stage,
  std::string_view stage_property, std::string_view relation_key)
{
  std::string key;
  key.reserve(owner.size() + property.size() + stage.size() + stage_property.size() + 8);
  key.append(owner).append(".").append(property).append("|");
  key.append(stage).append(".").append(stage_property).append("|");
  key.append(relation_key);
  return key;
}

}  // namespace

EffectIndex::EffectIndex(const EffectKnowledgeBase & kb)
{
  for (const auto & e : kb.entries) {
    const auto context = relation_set_key(e.relations);
    cells_.emplace(
      cell_lookup_key(e.concept_name, e.property, e.stage, e.stage_property, context), &e);
    const auto & focal = e.relations.empty() ? e.concept_name : e.relations.front().focal;
    contexts_.emplace(focal, context);
  }
}

const EffectEntry * EffectIndex::find(
  std::string_view owner, std::string_view property, std::string_view stage,
  std::string_view stage_property, std::string_view relation_key) const
{
  const auto it =
    cells_.find(cell_lookup_key(owner, property, stage, stage_property, relation_key));
  return it == cells_.end() ? nullptr : it->second;
}

bool EffectIndex::has_context(std::string_view focal, std::string_view relation_key) const
{
  return contexts_.count(std::make_pair(std::string(focal), std::string(relation_key))) != 0;
}

GenerationMatrix build_matrix(
  const RelationshipBundle & bundle, const PerceptionSystemSpec & system, const EffectIndex & index,
  const SourceOntology & ontology, const CompatibilityMatrix & matrix)
{
  const auto * focal = lookup_concept(ontology, bundle.focal);
  if (focal == nullptr) {
    throw Error(ErrorCode::UnknownConcept, "unknown concept '" + bundle.focal + "'");
  }

  GenerationMatrix out;
  out.sensor = system.sensor;
  out.bundle = bundle;

  auto add_row = [&](const std::string & owner, const std::string & property) {
    const bool seen = std::any_of(out.rows.begin(), out.rows.end(), [&](const MatrixRow & r) {
      return r.owner == owner && r.property == property;
    });
    if (!seen) {
      out.rows.push_back({owner, property});
    }
  };
  for (const auto & p : focal->properties) {
    add_row(focal->name, p.name);
  }
  for (const auto & r : bundle.relations) {
    if (r.involves_sensor()) {
      continue;
    }
    const auto * partner = lookup_concept(ontology, r.partner);
    if (partner == nullptr) {
      throw Error(ErrorCode::UnknownConcept, "unknown concept '" + r.partner + "'");
    }
    for (const auto & p : partner->properties) {
      if (std::find(r.perturbed.begin(), r.perturbed.end(), p.category) != r.perturbed.end()) {
        add_row(partner->name, p.name);
      }
    }
  }

  for (const auto & stage_name : affected_stages(*focal, bundle.relations, system, ontology, matrix)) {
    const auto * stage = find_stage(stage_name);
    for (auto quality : stage->quality_properties) {
      out.columns.push_back({stage_name, std::string(quality)});
    }
  }

  const auto context = bundle.key();
  const auto refs = to_refs(bundle.relations);
  out.cells.reserve(out.rows.size() * out.columns.size());
  for (const auto & row : out.rows) {
    for (const auto & column : out.columns) {
      if (const auto * hit =
            index.find(row.owner, row.property, column.stage, column.stage_property, context)) {
        out.cells.push_back(*hit);
        continue;
      }
      EffectEntry blank;
      blank.concept_name = row.owner;
      blank.property = row.property;
      blank.stage = column.stage;
      blank.stage_property = column.stage_property;
      blank.principle = "unassessed";
      blank.relations = refs;
      out.cells.push_back(std::move(blank));
    }
  }
  return out;
}

GenerationMatrix build_matrix(
  const RelationshipBundle & bundle, const PerceptionSystemSpec & system,
  const EffectKnowledgeBase & effects, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix)
{
  return build_matrix(bundle, system, EffectIndex(effects), ontology, matrix);
}

FilterResult worst_case_filter(const GenerationMatrix & matrix, int threshold)
{
  if (threshold < 1 || threshold > 3) {
    throw Error(
      ErrorCode::ThresholdOutOfRange,
      "threshold must be between 1 and 3, got " + std::to_string(threshold));
  }
  FilterResult out;
  for (const auto & cell : matrix.cells) {
    if (cell.degree.value() <= -threshold) {
      out.kept.push_back(cell);
    } else if (cell.degree.value() > 0) {
      out.positive.push_back(cell);
    }
  }
  const auto order = [](const EffectEntry & a, const EffectEntry & b) {
    return std::make_tuple(
             std::cref(a.concept_name), std::cref(a.property), stage_index(a.stage),
             std::cref(a.stage_property)) <
           std::make_tuple(
             std::cref(b.concept_name), std::cref(b.property), stage_index(b.stage),
             std::cref(b.stage_property));
  };
  std::sort(out.kept.begin(), out.kept.end(), order);
  std::sort(out.positive.begin(), out.positive.end(), order);
  return out;
}

SynthesisResult synthesize_conditions(
  const std::vector<EffectEntry> & kept, const GenerationMatrix & matrix,
  const TemplateSet & templates)
{
  SynthesisResult out;
  const auto sources = matrix.bundle.sources();
  for (const auto & entry : kept) {
    TriggeringCondition c;
    c.sensor = matrix.sensor;
    c.sources = sources;
    c.relationships = matrix.bundle.relations;
    c.property_owner = entry.concept_name;
    c.source_property = entry.property;
    c.affected_stage = entry.stage;
    c.stage_property = entry.stage_property;
    c.effect = entry;

    TemplateContext ctx{
      c.sensor, matrix.bundle.focal, c.relationships, c.sources, c.source_property,
      c.affected_stage, c.stage_property};
    auto rendered = render_description(templates, ctx);
    if (rendered.used_fallback) {
      Diagnostic d;
      d.severity = Severity::Warning;
      d.code = ErrorCode::MissingTemplate;
      d.message = "no description template for " + c.sensor + " " + matrix.bundle.focal +
                  (matrix.bundle.relations.empty() ? "" : " [" + matrix.bundle.key() + "]") + " " +
                  c.property_owner + "." + c.source_property + " -> " + c.affected_stage + "." +
                  c.stage_property + "; fallback text used";
      out.diagnostics.push_back(std::move(d));
    }
    c.description = std::move(rendered.text);
    c.id = condition_id(c);

    const auto * stage = find_stage(c.affected_stage);
    const bool sensing = stage != nullptr && stage->phase == StagePhase::Sensing;
    if (sensing) {
      TriggeringCondition far = c;
      far.distance_augmented = true;
      far.description = render_distance_variant(templates, c.description, ctx);
      far.id = condition_id(far);
      out.conditions.push_back(std::move(c));
      out.conditions.push_back(std::move(far));
    } else {
      out.conditions.push_back(std::move(c));
    }
  }
  std::sort(out.conditions.begin(), out.conditions.end(), canonical_less);
  return out;
}

namespace
{

/// Calls `visit` with every subset of `candidates` of size 0..limit, in lexicographic index order.
void for_each_combination(
  const std::vector<RelationshipInstance> & candidates, std::size_t limit,
  const std::function<void(const std::vector<RelationshipInstance> &)> & visit)
{
  std::vector<RelationshipInstance> current;
  std::function<void(std::size_t)> recurse = [&](std::size_t start) {
    visit(current);
    if (current.size() == limit) {
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      current.push_back(candidates[i]);
      recurse(i + 1);
      current.pop_back();
    }
  };
  recurse(0);
}

}  // namespace

GenerationResult generate_catalog(
  const KnowledgeBase & kb, const VehicleSystem & system, const GenerationOptions & options)
{
  if (options.threshold < 1 || options.threshold > 3) {
    throw Error(
      ErrorCode::ThresholdOutOfRange,
      "threshold must be between 1 and 3, got " + std::to_string(options.threshold));
  }
  GenerationResult out;
  const EffectIndex index(kb.effects);

  for (const auto & sensor : system.sensors) {
    if (sensor.declared_stages.empty()) {
      Diagnostic d;
      d.severity = Severity::Warning;
      d.code = ErrorCode::EmptySystemStages;
      d.message = "sensor '" + sensor.sensor + "' declares no stages; skipped";
      out.diagnostics.push_back(std::move(d));
      continue;
    }
    for (const auto & focal : kb.ontology.concepts) {
      const auto candidates = candidate_relationships(focal, kb.matrix, kb.ontology);
      for_each_combination(
        candidates, options.bundle_limit, [&](const std::vector<RelationshipInstance> & subset) {
          ++out.stats.bundles_considered;
          const auto bundle = compose_bundle(focal, subset, options.bundle_limit);
          // Cells only exist for contexts the knowledge base mentions; every other matrix is
          // all zeros and would produce nothing.
          if (!index.has_context(focal.name, bundle.key())) {
            return;
          }
          const auto matrix = build_matrix(bundle, sensor, index, kb.ontology, kb.matrix);
          ++out.stats.matrices_built;
          auto filtered = worst_case_filter(matrix, options.threshold);
          out.stats.cells_kept += filtered.kept.size();
          out.stats.positive_cells += filtered.positive.size();
          auto synthesized = synthesize_conditions(filtered.kept, matrix, kb.templates);
          for (auto & c : synthesized.conditions) {
            out.conditions.push_back(std::move(c));
          }
          for (auto & d : synthesized.diagnostics) {
            out.diagnostics.push_back(std::move(d));
          }
        });
    }
  }

  std::sort(out.conditions.begin(), out.conditions.end(), canonical_less);
  std::map<std::string, const TriggeringCondition *> by_id;
  for (const auto & c : out.conditions) {
    const auto [it, inserted] = by_id.emplace(c.id, &c);
    if (!inserted && condition_identity(*it->second) != condition_identity(c)) {
      throw Error(
        ErrorCode::DuplicateConditionId, "condition id " + c.id + " is shared by two conditions");
    }
  }
  return out;
}

}  // namespace tcgen
