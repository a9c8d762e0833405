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


#ifndef TCGEN__TESTS__WORLD_HPP_
#define TCGEN__TESTS__WORLD_HPP_

#include "tcgen/generation.hpp"
#include "tcgen/perception.hpp"
#include "tcgen/project.hpp"
#include "tcgen/testcase.hpp"

#include <cstddef>
#include <filesystem>
#include <random>
#include <set>
#include <string>

namespace tcgen::testing
{

std::filesystem::path data_dir();
std::filesystem::path reference_project();

/// Reference knowledge base, system and events, loaded once per process.
const Workspace & reference_workspace();

struct World
{
  KnowledgeBase kb;
  VehicleSystem system;
};

struct WorldShape
{
  std::size_t max_concepts = 12;
  std::size_t max_matrix_entries = 6;
  std::size_t max_effects_per_concept = 16;
  std::size_t max_context = 2;
};

/// A valid random ontology, matrix, effect base and two-sensor system.
World random_world(std::mt19937 & rng, const WorldShape & shape = {});

SourceOntology random_ontology(std::mt19937 & rng, std::size_t max_concepts);

/// Ids the generator must produce, found by scanning every bundle up to `bundle_limit`
/// and every effect entry without any indexing or pruning.
std::set<std::string> oracle_condition_ids(
  const KnowledgeBase & kb, const VehicleSystem & system, int threshold, std::size_t bundle_limit);

/// Scratch directory removed on destruction.
class TempDir
{
public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;

  const std::filesystem::path & path() const { return path_; }

private:
  std::filesystem::path path_;
};

/// Copies the reference data into `dir` and writes a project file pointing at it.
std::filesystem::path stage_reference_project(const std::filesystem::path & dir);

}  // namespace tcgen::testing

#endif  // TCGEN__TESTS__WORLD_HPP_
