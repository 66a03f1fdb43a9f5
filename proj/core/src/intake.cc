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

#include "storyarc/intake.h"

#include <string>

#include "storyarc/segmenter.h"

namespace storyarc {

namespace {

constexpr std::string_view kLeftDouble = "\xE2\x80\x9C";
constexpr std::string_view kRightDouble = "\xE2\x80\x9D";

enum class QuoteMark { kNone, kStraight, kLeft, kRight };

QuoteMark QuoteAt(std::string_view text, std::size_t pos, std::size_t &length) {
  length = 1;
  if (text[pos] == '"') return QuoteMark::kStraight;
  length = 3;
  if (text.substr(pos, 3) == kLeftDouble) return QuoteMark::kLeft;
  if (text.substr(pos, 3) == kRightDouble) return QuoteMark::kRight;
  length = 1;
  return QuoteMark::kNone;
}

// True when the sentence holds a double-quoted span of at least two words.
bool HasQuotedSpeech(std::string_view sentence) {
  std::optional<std::size_t> open;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    std::size_t length = 1;
    const QuoteMark mark = QuoteAt(sentence, pos, length);
    const bool opens = mark == QuoteMark::kLeft || (mark == QuoteMark::kStraight && !open);
    const bool closes = open && (mark == QuoteMark::kRight || mark == QuoteMark::kStraight);
    if (closes) {
      if (CountWords(sentence.substr(*open, pos - *open)) >= 2) return true;
      open.reset();
    } else if (opens) {
      open = pos + length;
    }
    pos += length;
  }
  return open && CountWords(sentence.substr(*open)) >= 2;
}

}  // namespace

std::string_view RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kTooShort: return "too_short";
    case RejectReason::kTooLong: return "too_long";
    case RejectReason::kTooMuchDialogue: return "too_much_dialogue";
    case RejectReason::kNoMre: return "no_mre";
    case RejectReason::kMultiStory: return "multi_story";
    case RejectReason::kTooMuchNonNarrative: return "too_much_non_narrative";
    case RejectReason::kOffensive: return "offensive";
  }
  return "?";
}

std::size_t CountWords(std::string_view text) {
  std::size_t words = 0;
  bool in_word = false;
  for (char c : text) {
    if (IsSpace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  return words;
}

std::size_t CountDialogueLines(std::string_view text) {
  if (CountWords(text) == 0) return 0;
  std::size_t lines = 0;
  for (const Span &span : SegmentSpans(text)) {
    if (HasQuotedSpeech(text.substr(span.begin, span.size()))) ++lines;
  }
  return lines;
}

std::size_t CountDialogueLines(const Story &story) {
  std::size_t lines = 0;
  for (const Sentence &sentence : story.sentences()) {
    if (HasQuotedSpeech(sentence.text)) ++lines;
  }
  return lines;
}

IntakeDecision EvaluateIntake(std::size_t word_count,
                              std::size_t dialogue_line_count,
                              const IntakeFlags &flags) {
  if (!flags.complete()) {
    throw Error(ErrorKind::kInvalidArgument,
                "intake flags has_mre, single_story, non_narrative_below_half "
                "and offensive must all be asserted before an intake decision");
  }
  IntakeDecision decision;
  decision.word_count = word_count;
  decision.dialogue_line_count = dialogue_line_count;
  auto reject = [&](bool failed, RejectReason reason) {
    if (failed) decision.reasons.push_back(reason);
  };
  reject(word_count <= kMinWordsExclusive, RejectReason::kTooShort);
  reject(word_count >= kMaxWordsExclusive, RejectReason::kTooLong);
  reject(dialogue_line_count >= kMaxDialogueLinesExclusive,
         RejectReason::kTooMuchDialogue);
  reject(!*flags.has_mre, RejectReason::kNoMre);
  reject(!*flags.single_story, RejectReason::kMultiStory);
  reject(!*flags.non_narrative_below_half, RejectReason::kTooMuchNonNarrative);
  reject(*flags.offensive, RejectReason::kOffensive);
  decision.accepted = decision.reasons.empty();
  return decision;
}

IntakeDecision EvaluateIntake(const Story &story, const IntakeFlags &flags) {
  return EvaluateIntake(CountWords(story.text()), CountDialogueLines(story), flags);
}

}  // namespace storyarc
