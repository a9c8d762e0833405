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

#ifndef TCGEN__CATALOG_HPP_
#define TCGEN__CATALOG_HPP_

#include "tcgen/condition.hpp"
#include "tcgen/document.hpp"
#include "tcgen/generation.hpp"

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// A generated condition catalog as written to and read back from catalog.json.
struct Catalog
{
  std::string schema_version{kSchemaVersion};
  std::string system;
  int threshold = kDefaultThreshold;
  std::size_t bundle_limit = kDefaultBundleLimit;
  std::vector<TriggeringCondition> conditions;

  bool operator==(const Catalog &) const = default;
};

doc::Node encode_catalog(const Catalog & catalog);
Catalog decode_catalog(const doc::Node & root, DiagnosticSink & sink);
std::string serialize_catalog(const Catalog & catalog, doc::Format format = doc::Format::Json);
Catalog load_catalog(std::string_view text, doc::Format format, const std::string & source_name = {});
Catalog load_catalog_file(const std::filesystem::path & path);

/// "Pedestrian", or "Occludedby(Pedestrian, Temporary structure)"; several relations are joined
/// with " + ". Relations with the sensor are left out.
std::string sources_label(const TriggeringCondition & condition);
/// Property display label, prefixed with the owner when a partner owns it.
std::string property_label(const TriggeringCondition & condition);

inline constexpr std::string_view kCatalogCsvHeader =
  "No.,Sensor,Triggering sources,Properties,Process stage,Triggering condition";

std::string render_catalog_csv(const std::vector<TriggeringCondition> & conditions);
std::string render_catalog_markdown(const std::vector<TriggeringCondition> & conditions);

/// Matrix view; Markdown uses spaced minus signs, CSV plain hyphens.
std::string render_matrix_markdown(const GenerationMatrix & matrix);
std::string render_matrix_csv(const GenerationMatrix & matrix);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view value);
/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line ends.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace tcgen

#endif  // TCGEN__CATALOG_HPP_
