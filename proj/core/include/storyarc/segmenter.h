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

#ifndef STORYARC_SEGMENTER_H_
#define STORYARC_SEGMENTER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "storyarc/corpus.h"

namespace storyarc {

// Rule-based sentence segmentation. A sentence ends
//  - at every hard newline;
//  - after a run of '.', '?' or '!' plus any closing quotes or brackets, when
//    whitespace follows and the next character is an uppercase letter, a
//    digit or an opening quote.
// Periods ending a listed abbreviation and ellipses ("..", "...") never
// close a sentence on their own. Throws Error(kInvalidArgument) when the
// text has no non-whitespace content.
std::vector<Sentence> Segment(std::string_view text);

std::vector<Span> SegmentSpans(std::string_view text);

int AbbreviationListVersion();
std::span<const std::string_view> Abbreviations();

// Raw story submitted for ingest, before segmentation.
struct RawStory {
  std::string id;
  Source source = Source::kOther;
  std::optional<std::string> title;
  std::string text;
  std::optional<std::string> duplicate_of;
};

// Segments once and freezes the result into the stored Story.
Story IngestStory(RawStory raw);

}  // namespace storyarc

#endif  // STORYARC_SEGMENTER_H_
