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

#include "storyarc/segmenter.h"

#include <algorithm>
#include <string>

#include "storyarc/errors.h"

namespace storyarc {

namespace {

#include "abbreviations.inc"

bool IsTerminal(char c) { return c == '.' || c == '?' || c == '!'; }

bool HasUtf8At(std::string_view text, std::size_t pos, std::string_view seq) {
  return text.substr(pos, seq.size()) == seq;
}

constexpr std::string_view kLeftDouble = "\xE2\x80\x9C";   // “
constexpr std::string_view kRightDouble = "\xE2\x80\x9D";  // ”
constexpr std::string_view kLeftSingle = "\xE2\x80\x98";   // ‘
constexpr std::string_view kRightSingle = "\xE2\x80\x99";  // ’

// Byte length of a closing quote or bracket at pos, or 0.
std::size_t CloserLength(std::string_view text, std::size_t pos) {
  const char c = text[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (HasUtf8At(text, pos, kRightDouble) || HasUtf8At(text, pos, kRightSingle)) {
    return 3;
  }
  return 0;
}

// Byte length of an opening quote or bracket at pos, or 0.
std::size_t OpenerLength(std::string_view text, std::size_t pos) {
  const char c = text[pos];
  if (c == '"' || c == '\'' || c == '(' || c == '[') return 1;
  if (HasUtf8At(text, pos, kLeftDouble) || HasUtf8At(text, pos, kLeftSingle)) {
    return 3;
  }
  return 0;
}

bool IsOpeningQuote(std::string_view text, std::size_t pos) {
  const char c = text[pos];
  return c == '"' || c == '\'' || HasUtf8At(text, pos, kLeftDouble) ||
         HasUtf8At(text, pos, kLeftSingle);
}

// ASCII A-Z, or a Latin-1 supplement capital encoded as C3 80..C3 9E (minus
// the multiplication sign).
bool IsUppercaseAt(std::string_view text, std::size_t pos) {
  const auto c = static_cast<unsigned char>(text[pos]);
  if (c >= 'A' && c <= 'Z') return true;
  if (c == 0xC3 && pos + 1 < text.size()) {
    const auto next = static_cast<unsigned char>(text[pos + 1]);
    return next >= 0x80 && next <= 0x9E && next != 0x97;
  }
  return false;
}

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool IsAbbreviation(std::string_view token) {
  std::size_t pos = 0;
  while (pos < token.size()) {
    const std::size_t len = OpenerLength(token, pos);
    if (len == 0) break;
    pos += len;
  }
  token.remove_prefix(pos);
  return std::find(std::begin(kAbbreviations), std::end(kAbbreviations),
                   token) != std::end(kAbbreviations);
}

// True when the terminal run ending at `pos` is followed by inline
// whitespace and then a sentence opener on the same line.
bool StartsNewSentence(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || !IsSpace(text[pos])) return false;
  while (pos < text.size() && IsSpace(text[pos])) {
    // The newline rule closes the sentence anyway.
    if (text[pos] == '\n') return false;
    ++pos;
  }
  if (pos >= text.size()) return false;
  return IsUppercaseAt(text, pos) || IsDigit(text[pos]) ||
         IsOpeningQuote(text, pos);
}

}  // namespace

int AbbreviationListVersion() { return kAbbreviationListVersion; }

std::span<const std::string_view> Abbreviations() { return kAbbreviations; }

std::vector<Span> SegmentSpans(std::string_view text) {
  std::vector<Span> spans;
  constexpr std::size_t kNoStart = std::string_view::npos;
  std::size_t start = kNoStart;

  auto close = [&](std::size_t end) {
    if (start == kNoStart) return;
    while (end > start && IsSpace(text[end - 1])) --end;
    if (end > start) spans.push_back({start, end});
    start = kNoStart;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      close(i);
      ++i;
      continue;
    }
    if (IsSpace(c)) {
      ++i;
      continue;
    }
    if (start == kNoStart) start = i;
    if (!IsTerminal(c)) {
      ++i;
      continue;
    }

    std::size_t run_end = i;
    std::size_t dots = 0;
    while (run_end < text.size() && IsTerminal(text[run_end])) {
      if (text[run_end] == '.') ++dots;
      ++run_end;
    }
    std::size_t after = run_end;
    while (after < text.size()) {
      const std::size_t len = CloserLength(text, after);
      if (len == 0) break;
      after += len;
    }

    const bool ellipsis = dots >= 2;
    bool abbreviation = false;
    if (run_end - i == 1 && c == '.' && after == run_end) {
      std::size_t token_begin = i;
      while (token_begin > 0 && !IsSpace(text[token_begin - 1])) --token_begin;
      abbreviation = IsAbbreviation(text.substr(token_begin, run_end - token_begin));
    }

    if (!ellipsis && !abbreviation && StartsNewSentence(text, after)) {
      close(after);
    }
    i = after;
  }
  close(text.size());

  if (spans.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "cannot segment text without non-whitespace content");
  }
  return spans;
}

std::vector<Sentence> Segment(std::string_view text) {
  std::vector<Sentence> sentences;
  const auto spans = SegmentSpans(text);
  sentences.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    sentences.push_back(
        {i, std::string(text.substr(spans[i].begin, spans[i].size())), spans[i]});
  }
  return sentences;
}

Story IngestStory(RawStory raw) {
  auto spans = SegmentSpans(raw.text);
  return Story(std::move(raw.id), raw.source, std::move(raw.title),
               std::move(raw.text), spans, std::move(raw.duplicate_of));
}

}  // namespace storyarc
