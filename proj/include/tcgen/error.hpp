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

#ifndef TCGEN__ERROR_HPP_
#define TCGEN__ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcgen
{

/// Machine-readable error codes. The string form (see to_string) is stable and appears in
/// diagnostics output.
enum class ErrorCode {
  SyntaxError,
  UnknownSchemaVersion,
  MissingField,
  InvalidValue,
  UnknownKind,
  UnknownCategory,
  DanglingParent,
  CrossKindParent,
  TaxonomyCycle,
  DuplicateName,
  DuplicateProperty,
  DuplicateInstance,
  IllegalCategoryForKind,
  ReservedName,
  UnknownEvent,
  UnknownStage,
  UnknownStageProperty,
  StageNotApplicable,
  EmptySystemStages,
  UnresolvedTarget,
  UnknownConcept,
  UnknownProperty,
  UnknownRelationshipKind,
  InvalidPattern,
  SelfRelationship,
  IncompatiblePair,
  MixedFocal,
  BundleTooLarge,
  DegreeOutOfRange,
  ThresholdOutOfRange,
  AlreadyAssessed,
  DuplicateConditionId,
  NoCompatibleEvent,
  UnknownSensor,
  UnknownTestCase,
  UnknownBehavior,
  UnknownFormat,
  MissingTemplate,
  UnratedCondition,
  IoError,
  UsageError,
};

std::string_view to_string(ErrorCode code);

enum class Severity { Error, Warning };

/// One finding produced while loading or checking data. `line`/`column` are 1-based; 0 means the
/// position is not known (e.g. JSON input, or a cross-reference check).
struct Diagnostic
{
  Severity severity = Severity::Error;
  ErrorCode code = ErrorCode::InvalidValue;
  std::string message;
  std::string file;
  int line = 0;
  int column = 0;

  /// `file:line:col: error[Code]: message`
  std::string format() const;
};

/// Thrown by loaders and operations. Carries every error diagnostic collected before giving up.
class Error : public std::runtime_error
{
public:
  explicit Error(Diagnostic diagnostic);
  explicit Error(std::vector<Diagnostic> diagnostics);
  Error(ErrorCode code, const std::string & message);

  ErrorCode code() const { return diagnostics_.front().code; }
  const std::vector<Diagnostic> & diagnostics() const { return diagnostics_; }

private:
  std::vector<Diagnostic> diagnostics_;
};

/// Accumulates diagnostics during validation so that a single pass can report every problem.
class DiagnosticSink
{
public:
  explicit DiagnosticSink(std::string file = {}) : file_(std::move(file)) {}

  void error(ErrorCode code, std::string message, int line = 0, int column = 0);
  void warning(ErrorCode code, std::string message, int line = 0, int column = 0);

  bool has_errors() const;
  const std::vector<Diagnostic> & diagnostics() const { return diagnostics_; }
  const std::string & file() const { return file_; }

  /// Throws Error with all error-severity diagnostics if any were recorded.
  void throw_if_errors() const;

private:
  std::string file_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace tcgen

#endif  // TCGEN__ERROR_HPP_
