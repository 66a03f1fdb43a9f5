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

#ifndef STORYARC_CORPUS_H_
#define STORYARC_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "storyarc/errors.h"
#include "storyarc/label.h"
#include "storyarc/schema.h"

namespace storyarc {

// Half-open byte offsets into a story's text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span &) const = default;
};

struct Sentence {
  std::size_t index = 0;
  std::string text;
  Span span;

  bool operator==(const Sentence &) const = default;
};

enum class Source { kQuora, kReddit, kPersonabank, kOther };

std::string_view SourceName(Source source);
Source ParseSource(std::string_view name);

// Whitespace as the segmenter and word counter see it: ASCII space, tab,
// newline, carriage return, vertical tab and form feed.
constexpr bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

// Collapses whitespace runs to a single space and trims both ends.
std::string NormalizeWhitespace(std::string_view text);

// An immutable story with its stored segmentation. Construction checks that
// spans are ordered, non-overlapping, non-empty, trimmed, and together cover
// every non-whitespace byte of the text.
class Story {
 public:
  Story(std::string id, Source source, std::optional<std::string> title,
        std::string text, std::span<const Span> spans,
        std::optional<std::string> duplicate_of = std::nullopt);

  const std::string &id() const { return id_; }
  Source source() const { return source_; }
  const std::optional<std::string> &title() const { return title_; }
  const std::string &text() const { return text_; }
  const std::vector<Sentence> &sentences() const { return sentences_; }
  std::size_t sentence_count() const { return sentences_.size(); }
  const std::optional<std::string> &duplicate_of() const {
    return duplicate_of_;
  }

  bool operator==(const Story &) const = default;

 private:
  std::string id_;
  Source source_;
  std::optional<std::string> title_;
  std::string text_;
  std::vector<Sentence> sentences_;
  std::optional<std::string> duplicate_of_;
};

// Annotator-asserted intake judgments. Each flag stays unset until an
// annotator explicitly answers it.
struct IntakeFlags {
  std::optional<bool> has_mre;
  std::optional<bool> single_story;
  std::optional<bool> non_narrative_below_half;
  std::optional<bool> offensive;

  bool complete() const {
    return has_mre && single_story && non_narrative_below_half && offensive;
  }
  bool operator==(const IntakeFlags &) const = default;
};

// Thrown when a final annotation (or a stage submission) carries hard
// validation errors. The report is attached verbatim.
class ValidationFailure : public Error {
 public:
  ValidationFailure(const std::string &message, ValidationReport report)
      : Error(ErrorKind::kValidation, message), report_(std::move(report)) {}

  const ValidationReport &report() const { return report_; }

 private:
  ValidationReport report_;
};

// One label per sentence for one (story, annotator) pair.
class Annotation {
 public:
  // Unbound construction: checks version >= 1, a non-empty label vector and,
  // for final status, a validation report with zero errors.
  Annotation(std::string story_id, std::string annotator_id,
             AnnotationStatus status, std::int64_t version,
             LabelSequence labels,
             std::optional<IntakeFlags> intake_flags = std::nullopt);

  // Bound construction additionally requires one label per story sentence.
  Annotation(const Story &story, std::string annotator_id,
             AnnotationStatus status, std::int64_t version,
             LabelSequence labels,
             std::optional<IntakeFlags> intake_flags = std::nullopt);

  // Throws Error(kValidation) if this annotation does not fit `story`.
  void CheckAgainst(const Story &story) const;

  const std::string &story_id() const { return story_id_; }
  const std::string &annotator_id() const { return annotator_id_; }
  AnnotationStatus status() const { return status_; }
  bool is_final() const { return status_ == AnnotationStatus::kFinal; }
  std::int64_t version() const { return version_; }
  const LabelSequence &labels() const { return labels_; }
  const std::optional<IntakeFlags> &intake_flags() const {
    return intake_flags_;
  }

  bool operator==(const Annotation &) const = default;

 private:
  std::string story_id_;
  std::string annotator_id_;
  AnnotationStatus status_;
  std::int64_t version_;
  LabelSequence labels_;
  std::optional<IntakeFlags> intake_flags_;
};

enum class AnnotatorRole { kTrainee, kAnnotator, kGoldAuthor };

std::string_view RoleName(AnnotatorRole role);
AnnotatorRole ParseRole(std::string_view name);

struct Annotator {
  std::string id;
  AnnotatorRole role = AnnotatorRole::kAnnotator;
  // Static bearer token; empty means the annotator is not authenticated.
  std::string token;

  bool operator==(const Annotator &) const = default;
};

// JSONL persistence. Loading reports the 1-based line number of a malformed
// record, rejects duplicate ids and any span inconsistency.
std::vector<Story> LoadCorpus(const std::filesystem::path &path);
void SaveCorpus(std::span<const Story> stories,
                const std::filesystem::path &path);

// When `stories` is given every annotation is checked against its story.
std::vector<Annotation> LoadAnnotations(
    const std::filesystem::path &path,
    std::span<const Story> stories = {});
void SaveAnnotations(std::span<const Annotation> annotations,
                     const std::filesystem::path &path);

struct PopulationStats {
  std::size_t story_count = 0;
  std::size_t sentence_count = 0;
  // total sentences / story count, rounded to 2 decimal places.
  double mean_sentences_per_story = 0.0;
};

struct StatsReport {
  // Every story in the corpus.
  PopulationStats all;
  // Stories without a duplicate_of reference.
  PopulationStats unique;
  bool duplicates_flagged = false;
  std::size_t final_annotation_count = 0;
  // Per-label sentence counts over final annotations, canonical label order.
  std::array<std::size_t, kLabelCount> label_frequency{};
};

// Throws Error(kNotFound) if an annotation references an unknown story.
StatsReport CorpusStats(std::span<const Story> stories,
                        std::span<const Annotation> annotations);

// "18.56"-style rendering used in stats output.
std::string FormatMean(double mean);

}  // namespace storyarc

#endif  // STORYARC_CORPUS_H_
