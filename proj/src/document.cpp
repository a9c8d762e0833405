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

#include "tcgen/document.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"

namespace tcgen::doc
{

Format format_for_path(const std::filesystem::path & path)
{
  const auto ext = path.extension().string();
  if (ext == ".yaml" || ext == ".yml") {
    return Format::Yaml;
  }
  if (ext == ".json") {
    return Format::Json;
  }
  throw Error(
    ErrorCode::UnknownFormat, "cannot infer document format from '" + path.string() + "'");
}

Node Node::null_value() { return Node{}; }

Node Node::string(std::string value)
{
  Node n;
  n.type_ = Type::Scalar;
  n.scalar_ = std::move(value);
  return n;
}

Node Node::integer(std::int64_t value)
{
  Node n = string(std::to_string(value));
  n.scalar_type_ = ScalarType::Integer;
  return n;
}

Node Node::boolean(bool value)
{
  Node n = string(value ? "true" : "false");
  n.scalar_type_ = ScalarType::Boolean;
  return n;
}

Node Node::sequence()
{
  Node n;
  n.type_ = Type::Sequence;
  return n;
}

Node Node::mapping()
{
  Node n;
  n.type_ = Type::Mapping;
  return n;
}

const Node * Node::find(std::string_view key) const
{
  if (type_ != Type::Mapping) {
    return nullptr;
  }
  for (const auto & [k, v] : entries_) {
    if (k == key) {
      return &v;
    }
  }
  return nullptr;
}

Node & Node::push_back(Node item)
{
  items_.push_back(std::move(item));
  return items_.back();
}

Node & Node::set(std::string key, Node value)
{
  entries_.emplace_back(std::move(key), std::move(value));
  return entries_.back().second;
}

namespace
{

Mark to_mark(const YAML::Mark & m)
{
  if (m.is_null()) {
    return {};
  }
  return Mark{m.line + 1, m.column + 1};
}

Node from_yaml(const YAML::Node & y, const std::string & source)
{
  Node out;
  switch (y.Type()) {
    case YAML::NodeType::Undefined:
    case YAML::NodeType::Null:
      out = Node::null_value();
      break;
    case YAML::NodeType::Scalar:
      out = Node::string(y.Scalar());
      break;
    case YAML::NodeType::Sequence:
      out = Node::sequence();
      for (const auto & item : y) {
        out.push_back(from_yaml(item, source));
      }
      break;
    case YAML::NodeType::Map: {
      out = Node::mapping();
      std::set<std::string> seen;
      for (const auto & kv : y) {
        const auto key = kv.first.as<std::string>();
        if (!seen.insert(key).second) {
          const auto m = to_mark(kv.first.Mark());
          throw Error(Diagnostic{
            Severity::Error, ErrorCode::SyntaxError, "duplicate key '" + key + "'", source, m.line,
            m.column});
        }
        out.set(key, from_yaml(kv.second, source));
      }
      break;
    }
  }
  out.mark = to_mark(y.Mark());
  return out;
}

Node from_json(const nlohmann::ordered_json & j)
{
  switch (j.type()) {
    case nlohmann::ordered_json::value_t::null:
    case nlohmann::ordered_json::value_t::discarded:
      return Node::null_value();
    case nlohmann::ordered_json::value_t::boolean:
      return Node::boolean(j.get<bool>());
    case nlohmann::ordered_json::value_t::number_integer:
      return Node::integer(j.get<std::int64_t>());
    case nlohmann::ordered_json::value_t::number_unsigned:
      return Node::integer(static_cast<std::int64_t>(j.get<std::uint64_t>()));
    case nlohmann::ordered_json::value_t::number_float:
      return Node::string(j.dump());
    case nlohmann::ordered_json::value_t::string:
      return Node::string(j.get<std::string>());
    case nlohmann::ordered_json::value_t::array: {
      Node out = Node::sequence();
      for (const auto & item : j) {
        out.push_back(from_json(item));
      }
      return out;
    }
    case nlohmann::ordered_json::value_t::object: {
      Node out = Node::mapping();
      for (const auto & [k, v] : j.items()) {
        out.set(k, from_json(v));
      }
      return out;
    }
    case nlohmann::ordered_json::value_t::binary:
      break;
  }
  throw Error(ErrorCode::SyntaxError, "unsupported JSON value");
}

Mark mark_at_offset(std::string_view text, std::size_t offset)
{
  Mark m{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++m.line;
      m.column = 1;
    } else {
      ++m.column;
    }
  }
  return m;
}

// Strings that a YAML reader could mistake for another type get quoted on output.
bool needs_quotes(const std::string & s)
{
  if (s.empty()) {
    return true;
  }
  static const std::set<std::string> reserved = {
    "~", "null", "Null", "NULL", "true", "True", "TRUE", "false", "False", "FALSE",
    "yes", "Yes", "YES", "no", "No", "NO", "on", "On", "ON", "off", "Off", "OFF"};
  if (reserved.count(s) != 0) {
    return true;
  }
  double d = 0;
  const auto * end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, d);
  return res.ec == std::errc{} && res.ptr == end;
}

void emit_yaml(YAML::Emitter & out, const Node & node)
{
  switch (node.type()) {
    case Node::Type::Null:
      out << YAML::Null;
      break;
    case Node::Type::Scalar:
      if (node.scalar_type() == ScalarType::String && needs_quotes(node.scalar())) {
        out << YAML::DoubleQuoted << node.scalar();
      } else {
        out << node.scalar();
      }
      break;
    case Node::Type::Sequence:
      if (node.items().empty()) {
        out << YAML::Flow;
      }
      out << YAML::BeginSeq;
      for (const auto & item : node.items()) {
        emit_yaml(out, item);
      }
      out << YAML::EndSeq;
      break;
    case Node::Type::Mapping:
      if (node.entries().empty()) {
        out << YAML::Flow;
      }
      out << YAML::BeginMap;
      for (const auto & [k, v] : node.entries()) {
        out << YAML::Key << k << YAML::Value;
        emit_yaml(out, v);
      }
      out << YAML::EndMap;
      break;
  }
}

nlohmann::ordered_json to_json(const Node & node)
{
  switch (node.type()) {
    case Node::Type::Null:
      return nullptr;
    case Node::Type::Scalar:
      switch (node.scalar_type()) {
        case ScalarType::Integer:
          return std::stoll(node.scalar());
        case ScalarType::Boolean:
          return node.scalar() == "true";
        case ScalarType::String:
          return node.scalar();
      }
      break;
    case Node::Type::Sequence: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto & item : node.items()) {
        arr.push_back(to_json(item));
      }
      return arr;
    }
    case Node::Type::Mapping: {
      auto obj = nlohmann::ordered_json::object();
      for (const auto & [k, v] : node.entries()) {
        obj[k] = to_json(v);
      }
      return obj;
    }
  }
  return nullptr;
}

std::string describe(Node::Type t)
{
  switch (t) {
    case Node::Type::Null: return "null";
    case Node::Type::Scalar: return "scalar";
    case Node::Type::Sequence: return "sequence";
    case Node::Type::Mapping: return "mapping";
  }
  return "?";
}

}  // namespace

Node parse(std::string_view text, Format format, const std::string & source_name)
{
  if (format == Format::Yaml) {
    try {
      return from_yaml(YAML::Load(std::string(text)), source_name);
    } catch (const YAML::Exception & e) {
      const auto m = to_mark(e.mark);
      throw Error(
        Diagnostic{Severity::Error, ErrorCode::SyntaxError, e.msg, source_name, m.line, m.column});
    }
  }
  try {
    return from_json(nlohmann::ordered_json::parse(text.begin(), text.end()));
  } catch (const nlohmann::ordered_json::parse_error & e) {
    const auto m = mark_at_offset(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(Diagnostic{
      Severity::Error, ErrorCode::SyntaxError, e.what(), source_name, m.line, m.column});
  }
}

std::string emit(const Node & node, Format format)
{
  if (format == Format::Json) {
    return to_json(node).dump(2) + "\n";
  }
  YAML::Emitter out;
  out.SetIndent(2);
  emit_yaml(out, node);
  std::string text = out.c_str();
  text += "\n";
  return text;
}

std::string read_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Diagnostic{
      Severity::Error, ErrorCode::IoError, "cannot open file for reading", path.string()});
  }
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path & path, std::string_view content)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Diagnostic{
      Severity::Error, ErrorCode::IoError, "cannot open file for writing", path.string()});
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

Node load_file(const std::filesystem::path & path)
{
  return parse(read_file(path), format_for_path(path), path.string());
}

bool Decoder::expect_mapping(const Node & node, std::string_view what)
{
  if (node.is_mapping()) {
    return true;
  }
  error(node, ErrorCode::InvalidValue,
        std::string(what) + " must be a mapping, found " + describe(node.type()));
  return false;
}

bool Decoder::expect_sequence(const Node & node, std::string_view what)
{
  if (node.is_sequence()) {
    return true;
  }
  error(node, ErrorCode::InvalidValue,
        std::string(what) + " must be a sequence, found " + describe(node.type()));
  return false;
}

std::optional<std::string> Decoder::string_field(
  const Node & map, std::string_view key, bool required)
{
  const Node * v = map.find(key);
  if (v == nullptr || v->is_null()) {
    if (required) {
      error(map, ErrorCode::MissingField, "missing required field '" + std::string(key) + "'");
    }
    return std::nullopt;
  }
  if (!v->is_scalar()) {
    error(*v, ErrorCode::InvalidValue, "field '" + std::string(key) + "' must be a scalar");
    return std::nullopt;
  }
  return v->scalar();
}

std::optional<std::int64_t> Decoder::int_field(
  const Node & map, std::string_view key, bool required)
{
  const auto text = string_field(map, key, required);
  if (!text) {
    return std::nullopt;
  }
  std::int64_t value = 0;
  const auto * end = text->data() + text->size();
  const auto res = std::from_chars(text->data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    error(*map.find(key), ErrorCode::InvalidValue,
          "field '" + std::string(key) + "' must be an integer, found '" + *text + "'");
    return std::nullopt;
  }
  return value;
}

std::optional<bool> Decoder::bool_field(const Node & map, std::string_view key, bool required)
{
  const auto text = string_field(map, key, required);
  if (!text) {
    return std::nullopt;
  }
  if (*text == "true") {
    return true;
  }
  if (*text == "false") {
    return false;
  }
  error(*map.find(key), ErrorCode::InvalidValue,
        "field '" + std::string(key) + "' must be true or false");
  return std::nullopt;
}

std::vector<std::string> Decoder::string_list(const Node & map, std::string_view key)
{
  std::vector<std::string> out;
  const Node * v = map.find(key);
  if (v == nullptr || v->is_null()) {
    return out;
  }
  if (!expect_sequence(*v, "field '" + std::string(key) + "'")) {
    return out;
  }
  for (const auto & item : v->items()) {
    if (!item.is_scalar()) {
      error(item, ErrorCode::InvalidValue, "items of '" + std::string(key) + "' must be scalars");
      continue;
    }
    out.push_back(item.scalar());
  }
  return out;
}

const std::vector<Node> & Decoder::node_list(const Node & map, std::string_view key)
{
  static const std::vector<Node> empty;
  const Node * v = map.find(key);
  if (v == nullptr || v->is_null()) {
    return empty;
  }
  if (!expect_sequence(*v, "field '" + std::string(key) + "'")) {
    return empty;
  }
  return v->items();
}

bool Decoder::check_version(const Node & root, std::string_view expected)
{
  const auto version = string_field(root, "schema_version");
  if (!version) {
    return false;
  }
  if (*version != expected) {
    error(*root.find("schema_version"), ErrorCode::UnknownSchemaVersion,
          "unsupported schema_version '" + *version + "' (expected '" + std::string(expected) +
            "')");
    return false;
  }
  return true;
}

void Decoder::error(const Node & at, ErrorCode code, std::string message)
{
  sink_.error(code, std::move(message), at.mark.line, at.mark.column);
}

void Decoder::warning(const Node & at, ErrorCode code, std::string message)
{
  sink_.warning(code, std::move(message), at.mark.line, at.mark.column);
}

}  // namespace tcgen::doc
