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

#ifndef TCGEN__DOCUMENT_HPP_
#define TCGEN__DOCUMENT_HPP_

#include "tcgen/error.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Format-neutral document tree shared by the YAML and JSON front ends. Every data file in the
// toolchain is decoded from this tree, so both formats go through the same validation code.
namespace tcgen::doc
{

enum class Format { Yaml, Json };

/// Picks the format from a file extension (.yaml/.yml/.json). Throws UnknownFormat otherwise.
Format format_for_path(const std::filesystem::path & path);

/// 1-based source position; 0 when unknown.
struct Mark
{
  int line = 0;
  int column = 0;
};

enum class ScalarType { String, Integer, Boolean };

class Node
{
public:
  enum class Type { Null, Scalar, Sequence, Mapping };
  using Entry = std::pair<std::string, Node>;

  Node() = default;

  static Node null_value();
  static Node string(std::string value);
  static Node integer(std::int64_t value);
  static Node boolean(bool value);
  static Node sequence();
  static Node mapping();

  Type type() const { return type_; }
  bool is_null() const { return type_ == Type::Null; }
  bool is_scalar() const { return type_ == Type::Scalar; }
  bool is_sequence() const { return type_ == Type::Sequence; }
  bool is_mapping() const { return type_ == Type::Mapping; }

  const std::string & scalar() const { return scalar_; }
  ScalarType scalar_type() const { return scalar_type_; }
  const std::vector<Node> & items() const { return items_; }
  const std::vector<Entry> & entries() const { return entries_; }

  /// Mapping lookup; nullptr if absent or if this is not a mapping.
  const Node * find(std::string_view key) const;

  Node & push_back(Node item);
  /// Appends a key to a mapping. Keys keep insertion order.
  Node & set(std::string key, Node value);

  Mark mark;

private:
  Type type_ = Type::Null;
  std::string scalar_;
  ScalarType scalar_type_ = ScalarType::String;
  std::vector<Node> items_;
  std::vector<Entry> entries_;
};

/// Parses text into a tree. Syntax errors throw Error(SyntaxError) with the position.
Node parse(std::string_view text, Format format, const std::string & source_name = {});

/// Canonical rendering: block-style YAML or two-space indented JSON, trailing newline.
std::string emit(const Node & node, Format format);

std::string read_file(const std::filesystem::path & path);
void write_file(const std::filesystem::path & path, std::string_view content);

/// Parses a file, choosing the format from its extension.
Node load_file(const std::filesystem::path & path);

/// Field access helpers that report problems into a DiagnosticSink instead of throwing, so a
/// loader can keep going and report every defect in one pass.
class Decoder
{
public:
  explicit Decoder(DiagnosticSink & sink) : sink_(sink) {}

  DiagnosticSink & sink() { return sink_; }

  bool expect_mapping(const Node & node, std::string_view what);
  bool expect_sequence(const Node & node, std::string_view what);

  /// Required (or optional) scalar string field.
  std::optional<std::string> string_field(
    const Node & map, std::string_view key, bool required = true);
  std::optional<std::int64_t> int_field(
    const Node & map, std::string_view key, bool required = true);
  std::optional<bool> bool_field(const Node & map, std::string_view key, bool required = true);
  /// Optional list of scalar strings; absent means empty.
  std::vector<std::string> string_list(const Node & map, std::string_view key);
  /// Optional sequence of nodes; absent means empty.
  const std::vector<Node> & node_list(const Node & map, std::string_view key);

  /// Checks the `schema_version` field against the accepted version.
  bool check_version(const Node & root, std::string_view expected);

  void error(const Node & at, ErrorCode code, std::string message);
  void warning(const Node & at, ErrorCode code, std::string message);

private:
  DiagnosticSink & sink_;
};

}  // namespace tcgen::doc

#endif  // TCGEN__DOCUMENT_HPP_
