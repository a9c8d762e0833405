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

#include "tcgen/error.hpp"

#include <sstream>
#include <utility>

namespace tcgen
{

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSchemaVersion: return "UnknownSchemaVersion";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::DanglingParent: return "DanglingParent";
    case ErrorCode::CrossKindParent: return "CrossKindParent";
    case ErrorCode::TaxonomyCycle: return "TaxonomyCycle";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::DuplicateProperty: return "DuplicateProperty";
    case ErrorCode::DuplicateInstance: return "DuplicateInstance";
    case ErrorCode::IllegalCategoryForKind: return "IllegalCategoryForKind";
    case ErrorCode::ReservedName: return "ReservedName";
    case ErrorCode::UnknownEvent: return "UnknownEvent";
    case ErrorCode::UnknownStage: return "UnknownStage";
    case ErrorCode::UnknownStageProperty: return "UnknownStageProperty";
    case ErrorCode::StageNotApplicable: return "StageNotApplicable";
    case ErrorCode::EmptySystemStages: return "EmptySystemStages";
    case ErrorCode::UnresolvedTarget: return "UnresolvedTarget";
    case ErrorCode::UnknownConcept: return "UnknownConcept";
    case ErrorCode::UnknownProperty: return "UnknownProperty";
    case ErrorCode::UnknownRelationshipKind: return "UnknownRelationshipKind";
    case ErrorCode::InvalidPattern: return "InvalidPattern";
    case ErrorCode::SelfRelationship: return "SelfRelationship";
    case ErrorCode::IncompatiblePair: return "IncompatiblePair";
    case ErrorCode::MixedFocal: return "MixedFocal";
    case ErrorCode::BundleTooLarge: return "BundleTooLarge";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorCode::AlreadyAssessed: return "AlreadyAssessed";
    case ErrorCode::DuplicateConditionId: return "DuplicateConditionId";
    case ErrorCode::NoCompatibleEvent: return "NoCompatibleEvent";
    case ErrorCode::UnknownSensor: return "UnknownSensor";
    case ErrorCode::UnknownTestCase: return "UnknownTestCase";
    case ErrorCode::UnknownBehavior: return "UnknownBehavior";
    case ErrorCode::UnknownFormat: return "UnknownFormat";
    case ErrorCode::MissingTemplate: return "MissingTemplate";
    case ErrorCode::UnratedCondition: return "UnratedCondition";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

std::string Diagnostic::format() const
{
  std::ostringstream out;
  if (!file.empty()) {
    out << file;
    if (line > 0) {
      out << ':' << line;
      if (column > 0) {
        out << ':' << column;
      }
    }
    out << ": ";
  }
  out << (severity == Severity::Error ? "error" : "warning") << '[' << to_string(code)
      << "]: " << message;
  return out.str();
}

namespace
{
std::string summarize(const std::vector<Diagnostic> & diagnostics)
{
  if (diagnostics.empty()) {
    return "unspecified error";
  }
  std::string text = diagnostics.front().format();
  if (diagnostics.size() > 1) {
    text += " (+" + std::to_string(diagnostics.size() - 1) + " more)";
  }
  return text;
}

std::vector<Diagnostic> non_empty(std::vector<Diagnostic> diagnostics)
{
  if (diagnostics.empty()) {
    diagnostics.push_back(Diagnostic{Severity::Error, ErrorCode::InvalidValue, "unspecified error", {}, 0, 0});
  }
  return diagnostics;
}
}  // namespace

Error::Error(Diagnostic diagnostic) : Error(std::vector<Diagnostic>{std::move(diagnostic)}) {}

Error::Error(std::vector<Diagnostic> diagnostics)
: std::runtime_error(summarize(diagnostics)), diagnostics_(non_empty(std::move(diagnostics)))
{
}

Error::Error(ErrorCode code, const std::string & message)
: Error(Diagnostic{Severity::Error, code, message, {}, 0, 0})
{
}

void DiagnosticSink::error(ErrorCode code, std::string message, int line, int column)
{
  diagnostics_.push_back(Diagnostic{Severity::Error, code, std::move(message), file_, line, column});
}

void DiagnosticSink::warning(ErrorCode code, std::string message, int line, int column)
{
  diagnostics_.push_back(
    Diagnostic{Severity::Warning, code, std::move(message), file_, line, column});
}

bool DiagnosticSink::has_errors() const
{
  for (const auto & d : diagnostics_) {
    if (d.severity == Severity::Error) {
      return true;
    }
  }
  return false;
}

void DiagnosticSink::throw_if_errors() const
{
  std::vector<Diagnostic> errors;
  for (const auto & d : diagnostics_) {
    if (d.severity == Severity::Error) {
      errors.push_back(d);
    }
  }
  if (!errors.empty()) {
    throw Error(std::move(errors));
  }
}

}  // namespace tcgen
