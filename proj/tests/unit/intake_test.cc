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


#include <string>

#include "doctest.h"
#include "golden.h"
#include "storyarc/errors.h"
#include "storyarc/intake.h"
#include "storyarc/segmenter.h"

namespace storyarc {
namespace {

IntakeFlags Favorable() {
  IntakeFlags flags;
  flags.has_mre = true;
  flags.single_story = true;
  flags.non_narrative_below_half = true;
  flags.offensive = false;
  return flags;
}

std::string Words(std::size_t n) {
  std::string text;
  for (std::size_t i = 0; i < n; ++i) text += i ? " word" : "Word";
  return text + ".";
}

TEST_CASE("word count bounds are strict") {
  const IntakeFlags flags = Favorable();
  CHECK_FALSE(EvaluateIntake(90, 0, flags).accepted);
  CHECK(EvaluateIntake(91, 0, flags).accepted);
  CHECK(EvaluateIntake(699, 0, flags).accepted);
  CHECK_FALSE(EvaluateIntake(700, 0, flags).accepted);
  CHECK(EvaluateIntake(90, 0, flags).reasons == std::vector{RejectReason::kTooShort});
  CHECK(EvaluateIntake(700, 0, flags).reasons == std::vector{RejectReason::kTooLong});
}

TEST_CASE("dialogue bound is strict") {
  const IntakeFlags flags = Favorable();
  CHECK(EvaluateIntake(200, 5, flags).accepted);
  const auto rejected = EvaluateIntake(200, 6, flags);
  CHECK_FALSE(rejected.accepted);
  CHECK(rejected.reasons == std::vector{RejectReason::kTooMuchDialogue});
}

TEST_CASE("every failed criterion is reported in order") {
  IntakeFlags flags;
  flags.has_mre = false;
  flags.single_story = false;
  flags.non_narrative_below_half = false;
  flags.offensive = true;
  const auto decision = EvaluateIntake(10, 9, flags);
  CHECK(decision.reasons ==
        std::vector{RejectReason::kTooShort, RejectReason::kTooMuchDialogue,
                    RejectReason::kNoMre, RejectReason::kMultiStory,
                    RejectReason::kTooMuchNonNarrative, RejectReason::kOffensive});
  CHECK(RejectReasonName(RejectReason::kTooMuchNonNarrative) == "too_much_non_narrative");
}

TEST_CASE("adding a failed condition never flips to acceptance") {
  for (std::size_t words : {50u, 90u, 91u, 400u, 699u, 700u, 900u}) {
    for (std::size_t dialogue : {0u, 5u, 6u}) {
      const IntakeFlags base = Favorable();
      const bool base_accepted = EvaluateIntake(words, dialogue, base).accepted;
      IntakeFlags worse = base;
      worse.offensive = true;
      CHECK_FALSE(EvaluateIntake(words, dialogue, worse).accepted);
      worse = base;
      worse.has_mre = false;
      CHECK_FALSE(EvaluateIntake(words, dialogue, worse).accepted);
      if (!base_accepted) {
        CHECK_FALSE(EvaluateIntake(words, dialogue + 1, base).accepted);
      }
    }
  }
}

TEST_CASE("decisions need every flag") {
  IntakeFlags flags = Favorable();
  flags.single_story.reset();
  CHECK_THROWS_AS(EvaluateIntake(200, 0, flags), Error);
}

TEST_CASE("word counting") {
  CHECK(CountWords("") == 0);
  CHECK(CountWords("  one\ttwo\nthree  ") == 3);
  CHECK(CountWords("don't stop-me now!") == 3);
  CHECK(CountWords(Words(91)) == 91);
}

TEST_CASE("dialogue lines need a quoted span of two words") {
  CHECK(CountDialogueLines("He said \"go now\". She left.") == 1);
  CHECK(CountDialogueLines("He said \"go\". She left.") == 0);
  CHECK(CountDialogueLines("\xE2\x80\x9C" "Come here,\xE2\x80\x9D she said.") == 1);
  CHECK(CountDialogueLines("She shouted \"wait for me") == 1);
  CHECK(CountDialogueLines("\"One two\" and \"three four\" in one line.") == 1);
  CHECK(CountDialogueLines("No quotes at all.") == 0);
}

TEST_CASE("story-level decisions exclude the title") {
  RawStory raw{"s", Source::kQuora, std::string("Title words here"), Words(91),
               std::nullopt};
  const Story story = IngestStory(raw);
  const auto decision = EvaluateIntake(story, Favorable());
  CHECK(decision.word_count == 91);
  CHECK(decision.accepted);
}

TEST_CASE("golden stories") {
  const Story hedgehog = IngestStory(
      {"hedgehog", Source::kQuora, std::nullopt, golden::StoryText(golden::HedgehogRows()),
       std::nullopt});
  CHECK(CountDialogueLines(hedgehog) == 0);
  const Story shirt = IngestStory(
      {"shirt", Source::kQuora, std::nullopt, golden::StoryText(golden::RedShirtRows()),
       std::nullopt});
  CHECK(CountDialogueLines(shirt) == 6);
}

}  // namespace
}  // namespace storyarc
