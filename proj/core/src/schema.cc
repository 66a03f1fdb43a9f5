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

#include "storyarc/schema.h"

#include <algorithm>
#include <string>

#include "storyarc/errors.h"

namespace storyarc {

namespace {

std::vector<std::size_t> IndicesOf(LabelView labels, Label label) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) out.push_back(i);
  }
  return out;
}

std::string IndexList(const std::vector<std::size_t> &indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(indices[i]);
  }
  return out;
}

void AddIssue(ValidationReport &report, IssueCode code,
              std::vector<std::size_t> indices, std::string message) {
  Issue issue{code, std::move(indices), std::move(message)};
  if (IsHardError(code)) {
    report.errors.push_back(std::move(issue));
  } else {
    report.warnings.push_back(std::move(issue));
  }
}

void CheckReturns(LabelView labels, ValidationReport &report) {
  std::vector<std::size_t> orphaned;
  std::vector<std::size_t> unseparated;
  std::optional<std::size_t> last_mre;
  // Last index before the cursor whose label is neither MRE nor Return.
  std::optional<std::size_t> last_other;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    Label label = labels[i];
    if (label == Label::kReturnOfMre) {
      if (!last_mre) {
        orphaned.push_back(i);
      } else if (!last_other || *last_other < *last_mre) {
        unseparated.push_back(i);
      }
    }
    if (label == Label::kMostReportableEvent) {
      last_mre = i;
    } else if (label != Label::kReturnOfMre) {
      last_other = i;
    }
  }
  if (!orphaned.empty()) {
    AddIssue(report, IssueCode::kUnseparatedReturn, orphaned,
             "Return of MRE at sentence(s) " + IndexList(orphaned) +
                 " has no preceding MRE");
  }
  if (!unseparated.empty()) {
    AddIssue(report, IssueCode::kUnseparatedReturn, unseparated,
             "Return of MRE at sentence(s) " + IndexList(unseparated) +
                 " is not separated from the MRE by another label");
  }
}

}  // namespace

std::string_view StatusName(AnnotationStatus status) {
  return status == AnnotationStatus::kFinal ? "final" : "draft";
}

AnnotationStatus ParseStatus(std::string_view name) {
  if (name == "draft") return AnnotationStatus::kDraft;
  if (name == "final") return AnnotationStatus::kFinal;
  throw Error(ErrorKind::kParse, "unknown status '" + std::string(name) + "'");
}

std::string_view IssueCodeName(IssueCode code) {
  switch (code) {
    case IssueCode::kMultipleMreRuns: return "E1";
    case IssueCode::kUnseparatedReturn: return "E2";
    case IssueCode::kResolutionBeforeMre: return "E3";
    case IssueCode::kMissingMre: return "E4";
    case IssueCode::kLateAbstract: return "W1";
    case IssueCode::kLateOrientation: return "W2";
    case IssueCode::kEarlyEvaluation: return "W3";
    case IssueCode::kActionAfterResolution: return "W4";
    case IssueCode::kNoOrientation: return "W5";
  }
  return "?";
}

bool IsHardError(IssueCode code) {
  switch (code) {
    case IssueCode::kMultipleMreRuns:
    case IssueCode::kUnseparatedReturn:
    case IssueCode::kResolutionBeforeMre:
    case IssueCode::kMissingMre:
      return true;
    default:
      return false;
  }
}

bool ValidationReport::Has(IssueCode code) const {
  auto match = [code](const Issue &issue) { return issue.code == code; };
  return std::any_of(errors.begin(), errors.end(), match) ||
         std::any_of(warnings.begin(), warnings.end(), match);
}

std::vector<Run> RunsOf(LabelView labels, Label label) {
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < labels.size()) {
    if (labels[i] != label) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < labels.size() && labels[i] == label) ++i;
    runs.push_back({begin, i});
  }
  return runs;
}

ValidationReport Validate(LabelView labels, AnnotationStatus status) {
  const bool is_final = status == AnnotationStatus::kFinal;
  ValidationReport report;

  const auto mre = IndicesOf(labels, Label::kMostReportableEvent);
  const auto mre_runs = RunsOf(labels, Label::kMostReportableEvent);
  const auto resolutions = IndicesOf(labels, Label::kResolution);

  // E1
  if (mre_runs.size() > 1) {
    AddIssue(report, IssueCode::kMultipleMreRuns, mre,
             "MRE sentences form " + std::to_string(mre_runs.size()) +
                 " separate runs; a story has exactly one MRE run");
  }

  // E2
  CheckReturns(labels, report);

  // E3
  if (!mre.empty()) {
    std::vector<std::size_t> early;
    for (std::size_t i : resolutions) {
      if (i < mre.front()) early.push_back(i);
    }
    if (!early.empty()) {
      AddIssue(report, IssueCode::kResolutionBeforeMre, early,
               "Resolution at sentence(s) " + IndexList(early) +
                   " begins before the MRE");
    }
  } else if (is_final && !resolutions.empty()) {
    AddIssue(report, IssueCode::kResolutionBeforeMre, resolutions,
             "Resolution present but the story has no MRE");
  }

  // E4
  if (is_final && mre.empty()) {
    AddIssue(report, IssueCode::kMissingMre, {},
             "a final annotation needs exactly one MRE run");
  }

  // W1
  {
    std::vector<std::size_t> late;
    bool seen_in_frame = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == Label::kAbstract && seen_in_frame) late.push_back(i);
      if (FrameClassOf(labels[i]) == FrameClass::kInFrame) seen_in_frame = true;
    }
    if (!late.empty()) {
      AddIssue(report, IssueCode::kLateAbstract, late,
               "Abstract at sentence(s) " + IndexList(late) +
                   " follows in-frame material");
    }
  }

  // W2
  {
    std::vector<std::size_t> late;
    bool seen_action = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == Label::kOrientation && seen_action) late.push_back(i);
      if (labels[i] == Label::kComplicatingAction) seen_action = true;
    }
    if (!late.empty()) {
      AddIssue(report, IssueCode::kLateOrientation, late,
               "Orientation at sentence(s) " + IndexList(late) +
                   " follows the first Complicating Action");
    }
  }

  // W3
  {
    std::vector<std::size_t> early;
    bool seen_ending = false;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == Label::kEvaluation && !seen_ending) early.push_back(i);
      if (labels[i] == Label::kResolution || labels[i] == Label::kAftermath) {
        seen_ending = true;
      }
    }
    if (!early.empty()) {
      AddIssue(report, IssueCode::kEarlyEvaluation, early,
               "Evaluation at sentence(s) " + IndexList(early) +
                   " precedes any Resolution or Aftermath");
    }
  }

  // W4
  if (!resolutions.empty()) {
    std::vector<std::size_t> late;
    bool return_follows = false;
    for (std::size_t i = labels.size(); i-- > resolutions.front();) {
      if (labels[i] == Label::kReturnOfMre) return_follows = true;
      if (labels[i] == Label::kComplicatingAction && !return_follows) {
        late.push_back(i);
      }
    }
    std::reverse(late.begin(), late.end());
    if (!late.empty()) {
      AddIssue(report, IssueCode::kActionAfterResolution, late,
               "Complicating Action at sentence(s) " + IndexList(late) +
                   " follows the Resolution without a Return of MRE");
    }
  }

  // W5
  if (std::find(labels.begin(), labels.end(), Label::kOrientation) ==
      labels.end()) {
    AddIssue(report, IssueCode::kNoOrientation, {},
             "no Orientation sentence");
  }

  return report;
}

std::string_view FrameClassName(FrameClass frame) {
  switch (frame) {
    case FrameClass::kInFrame: return "in_frame";
    case FrameClass::kOutOfFrame: return "out_of_frame";
    case FrameClass::kNeutral: return "neutral";
  }
  return "?";
}

FrameClass FrameClassOf(Label label) {
  switch (label) {
    case Label::kAbstract:
    case Label::kEvaluation:
    case Label::kDirectComment:
      return FrameClass::kOutOfFrame;
    case Label::kUnlabeled:
      return FrameClass::kNeutral;
    default:
      return FrameClass::kInFrame;
  }
}

}  // namespace storyarc
