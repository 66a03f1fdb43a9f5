// Copyright 2026 The Storyarc Authors.
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

#ifndef STORYARC_SCHEMA_H_
#define STORYARC_SCHEMA_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "storyarc/label.h"

namespace storyarc {

enum class AnnotationStatus { kDraft, kFinal };

std::string_view StatusName(AnnotationStatus status);
AnnotationStatus ParseStatus(std::string_view name);

// Stable report codes. E* are hard errors that block finalization, W* are
// atypical orderings that never block anything.
enum class IssueCode {
  kMultipleMreRuns,       // E1
  kUnseparatedReturn,     // E2
  kResolutionBeforeMre,   // E3
  kMissingMre,            // E4
  kLateAbstract,          // W1
  kLateOrientation,       // W2
  kEarlyEvaluation,       // W3
  kActionAfterResolution, // W4
  kNoOrientation,         // W5
};

std::string_view IssueCodeName(IssueCode code);
bool IsHardError(IssueCode code);

struct Issue {
  IssueCode code;
  std::vector<std::size_t> sentence_indices;
  std::string message;

  bool operator==(const Issue &) const = default;
};

struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool ok() const { return errors.empty(); }
  bool Has(IssueCode code) const;

  bool operator==(const ValidationReport &) const = default;
};

// Checks the structural constraints of a label sequence. Draft status allows
// zero MRE sentences and skips the final-only Resolution check.
ValidationReport Validate(LabelView labels, AnnotationStatus status);

enum class FrameClass { kInFrame, kOutOfFrame, kNeutral };

std::string_view FrameClassName(FrameClass frame);
FrameClass FrameClassOf(Label label);

// Maximal runs of identical labels, as half-open [begin, end) index pairs.
struct Run {
  std::size_t begin;
  std::size_t end;
};
std::vector<Run> RunsOf(LabelView labels, Label label);

// Theory crosswalk between the five narrative theories aligned row by row.
enum class Theory { kFreytag, kLabovWaletzky, kPrince, kTodorov, kOurs };

std::string_view TheoryName(Theory theory);
Theory ParseTheory(std::string_view name);

// Returns the same-row term of `to`, or nullopt for a blank cell. Matching of
// `term` is case-insensitive; for Theory::kOurs schema label names are also
// accepted ("complicating_action", "minor_resolution", ...). Throws
// Error(kNotFound) when the term is not in the `from` column.
std::optional<std::string> Crosswalk(std::string_view term, Theory from,
                                     Theory to);

}  // namespace storyarc

#endif  // STORYARC_SCHEMA_H_
