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

#ifndef STORYARC_LABEL_H_
#define STORYARC_LABEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace storyarc {

// The closed narrative-function taxonomy: ten functions plus an explicit
// Unlabeled value. Enumerator order is the canonical display order used by
// confusion matrices, so the underlying values double as matrix indices.
enum class Label : std::uint8_t {
  kUnlabeled = 0,
  kAbstract,
  kOrientation,
  kComplicatingAction,
  kMostReportableEvent,
  kResolution,
  kAftermath,
  kEvaluation,
  kReturnOfMre,
  kMinorResolution,
  kDirectComment,
};

inline constexpr std::size_t kLabelCount = 11;

inline constexpr std::array<Label, kLabelCount> kAllLabels = {
    Label::kUnlabeled,          Label::kAbstract,
    Label::kOrientation,        Label::kComplicatingAction,
    Label::kMostReportableEvent, Label::kResolution,
    Label::kAftermath,          Label::kEvaluation,
    Label::kReturnOfMre,        Label::kMinorResolution,
    Label::kDirectComment,
};

using LabelSequence = std::vector<Label>;
using LabelView = std::span<const Label>;

constexpr std::size_t LabelIndex(Label label) {
  return static_cast<std::size_t>(label);
}

// Wire name, e.g. "most_reportable_event".
std::string_view LabelName(Label label);

// Human-readable axis name, e.g. "MRE" or "Complicating Action".
std::string_view LabelDisplayName(Label label);

std::optional<Label> TryParseLabel(std::string_view name);

// Throws Error(kParse) for anything outside the closed set.
Label ParseLabel(std::string_view name);

}  // namespace storyarc

#endif  // STORYARC_LABEL_H_
