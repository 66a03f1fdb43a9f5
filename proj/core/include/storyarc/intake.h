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

#ifndef STORYARC_INTAKE_H_
#define STORYARC_INTAKE_H_

#include <cstddef>
#include <string_view>
#include <vector>

#include "storyarc/corpus.h"

namespace storyarc {

enum class RejectReason {
  kTooShort,
  kTooLong,
  kTooMuchDialogue,
  kNoMre,
  kMultiStory,
  kTooMuchNonNarrative,
  kOffensive,
};

std::string_view RejectReasonName(RejectReason reason);

struct IntakeDecision {
  bool accepted = false;
  std::size_t word_count = 0;
  std::size_t dialogue_line_count = 0;
  // Every failed criterion, in RejectReason order. Empty iff accepted.
  std::vector<RejectReason> reasons;

  bool operator==(const IntakeDecision &) const = default;
};

// Accepted word counts are strictly between these bounds.
inline constexpr std::size_t kMinWordsExclusive = 90;
inline constexpr std::size_t kMaxWordsExclusive = 700;
// Accepted stories have fewer dialogue lines than this.
inline constexpr std::size_t kMaxDialogueLinesExclusive = 6;

// Maximal runs of non-whitespace bytes.
std::size_t CountWords(std::string_view text);

// Sentences holding a double-quoted span (straight or curly quotes) of at
// least two words. An unclosed quote runs to the end of its sentence.
std::size_t CountDialogueLines(std::string_view text);
std::size_t CountDialogueLines(const Story &story);

// Pure decision over precomputed counts. Throws Error(kInvalidArgument)
// while any flag is still unset.
IntakeDecision EvaluateIntake(std::size_t word_count,
                              std::size_t dialogue_line_count,
                              const IntakeFlags &flags);

// Title excluded from both counts.
IntakeDecision EvaluateIntake(const Story &story, const IntakeFlags &flags);

}  // namespace storyarc

#endif  // STORYARC_INTAKE_H_
