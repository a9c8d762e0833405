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

#ifndef TCGEN__GENERATION_HPP_
#define TCGEN__GENERATION_HPP_

#include "tcgen/condition.hpp"
#include "tcgen/effects.hpp"
#include "tcgen/ontology.hpp"
#include "tcgen/perception.hpp"
#include "tcgen/relationship.hpp"
#include "tcgen/templates.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

inline constexpr int kDefaultThreshold = 2;

/// Everything the generator reads besides the system description.
struct KnowledgeBase
{
  SourceOntology ontology;
  CompatibilityMatrix matrix;
  EffectKnowledgeBase effects;
  TemplateSet templates;
};

struct MatrixRow
{
  std::string owner;
  std::string property;
  bool operator==(const MatrixRow &) const = default;
};

struct MatrixColumn
{
  std::string stage;
  std::string stage_property;
  bool operator==(const MatrixColumn &) const = default;
};

/// Source properties of one bundle against the quality properties of the stages it reaches.
/// Cells are stored row-major; cells with no knowledge-base entry have degree 0.
struct GenerationMatrix
{
  std::string sensor;
  RelationshipBundle bundle;
  std::vector<MatrixRow> rows;
  std::vector<MatrixColumn> columns;
  std::vector<EffectEntry> cells;

  const EffectEntry & at(std::size_t row, std::size_t column) const
  {
    return cells[row * columns.size() + column];
  }
};

/// Cell lookup over an effect knowledge base.
class EffectIndex
{
public:
  explicit EffectIndex(const EffectKnowledgeBase & kb);

  const EffectEntry * find(
    std::string_view owner, std::string_view property, std::string_view stage,
    std::string_view stage_property, std::string_view relation_key) const;
  /// True if some entry is conditioned on exactly this relation set for this focal concept
  /// (an empty key means the bare source).
  bool has_context(std::string_view focal, std::string_view relation_key) const;

private:
  std::map<std::string, const EffectEntry *, std::less<>> cells_;
  std::set<std::pair<std::string, std::string>, std::less<>> contexts_;
};

/// Rows: the focal concept's properties (one row per name), then for every relation the partner
/// properties whose category that relation perturbs. Columns: every quality property of the
/// stages the focal concept reaches under the bundle, in pipeline order.
GenerationMatrix build_matrix(
  const RelationshipBundle & bundle, const PerceptionSystemSpec & system, const EffectIndex & index,
  const SourceOntology & ontology, const CompatibilityMatrix & matrix);
GenerationMatrix build_matrix(
  const RelationshipBundle & bundle, const PerceptionSystemSpec & system,
  const EffectKnowledgeBase & effects, const SourceOntology & ontology,
  const CompatibilityMatrix & matrix);

struct FilterResult
{
  /// Cells with degree <= -threshold, ordered by owner, property, stage, stage property.
  std::vector<EffectEntry> kept;
  /// Cells with a positive degree; reported, never turned into conditions.
  std::vector<EffectEntry> positive;
};

/// Throws ThresholdOutOfRange unless 1 <= threshold <= 3.
FilterResult worst_case_filter(const GenerationMatrix & matrix, int threshold = kDefaultThreshold);

struct SynthesisResult
{
  std::vector<TriggeringCondition> conditions;
  std::vector<Diagnostic> diagnostics;
};

/// One condition per kept cell, plus a distance-augmented copy for cells on sensing stages.
SynthesisResult synthesize_conditions(
  const std::vector<EffectEntry> & kept, const GenerationMatrix & matrix,
  const TemplateSet & templates);

struct GenerationOptions
{
  int threshold = kDefaultThreshold;
  std::size_t bundle_limit = kDefaultBundleLimit;
};

struct GenerationStats
{
  std::size_t bundles_considered = 0;
  std::size_t matrices_built = 0;
  std::size_t cells_kept = 0;
  std::size_t positive_cells = 0;
};

struct GenerationResult
{
  /// Canonical order (see canonical_less).
  std::vector<TriggeringCondition> conditions;
  std::vector<Diagnostic> diagnostics;
  GenerationStats stats;
};

/// Runs the whole pipeline for every sensor of `system` and every concept of the ontology.
/// Throws DuplicateConditionId if two distinct conditions hash to the same id.
GenerationResult generate_catalog(
  const KnowledgeBase & kb, const VehicleSystem & system, const GenerationOptions & options = {});

}  // namespace tcgen

#endif  // TCGEN__GENERATION_HPP_
