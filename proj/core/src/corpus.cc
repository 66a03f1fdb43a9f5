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

#include "storyarc/corpus.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json_codec.h"

namespace storyarc {

namespace {

bool IsContinuationByte(char c) {
  return (static_cast<unsigned char>(c) & 0xC0) == 0x80;
}

[[noreturn]] void StoryInvalid(const std::string &id, const std::string &what) {
  throw Error(ErrorKind::kValidation, "story '" + id + "': " + what);
}

std::string SpanText(const Span &span) {
  return "[" + std::to_string(span.begin) + ", " + std::to_string(span.end) + ")";
}

double RoundToCents(double value) { return std::round(value * 100.0) / 100.0; }

PopulationStats Population(std::size_t stories, std::size_t sentences) {
  PopulationStats stats;
  stats.story_count = stories;
  stats.sentence_count = sentences;
  if (stories > 0) {
    stats.mean_sentences_per_story =
        RoundToCents(static_cast<double>(sentences) / static_cast<double>(stories));
  }
  return stats;
}

std::ifstream OpenForRead(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "' for reading");
  }
  return in;
}

template <typename T, typename Encode>
void WriteJsonl(std::span<const T> items, const std::filesystem::path &path,
                Encode encode) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "' for writing");
  }
  for (const T &item : items) out << encode(item).dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorKind::kIo, "failed writing '" + path.string() + "'");
}

// Calls `decode` on every non-blank line, prefixing errors with the line.
template <typename Decode>
void ReadJsonl(const std::filesystem::path &path, Decode decode) {
  std::ifstream in = OpenForRead(path);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      decode(codec::Parse(line));
    } catch (const ValidationFailure &e) {
      throw ValidationFailure(path.string() + ":" + std::to_string(line_number) +
                                  ": " + e.what(),
                              e.report());
    } catch (const Error &e) {
      throw Error(e.kind(), path.string() + ":" + std::to_string(line_number) +
                                ": " + e.what());
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorKind::kParse, path.string() + ":" +
                                         std::to_string(line_number) + ": " +
                                         e.what());
    }
  }
}

}  // namespace

std::string_view SourceName(Source source) {
  switch (source) {
    case Source::kQuora: return "quora";
    case Source::kReddit: return "reddit";
    case Source::kPersonabank: return "personabank";
    case Source::kOther: return "other";
  }
  return "other";
}

Source ParseSource(std::string_view name) {
  if (name == "quora") return Source::kQuora;
  if (name == "reddit") return Source::kReddit;
  if (name == "personabank") return Source::kPersonabank;
  if (name == "other") return Source::kOther;
  throw Error(ErrorKind::kParse, "unknown source '" + std::string(name) + "'");
}

std::string_view RoleName(AnnotatorRole role) {
  switch (role) {
    case AnnotatorRole::kTrainee: return "trainee";
    case AnnotatorRole::kAnnotator: return "annotator";
    case AnnotatorRole::kGoldAuthor: return "gold_author";
  }
  return "annotator";
}

AnnotatorRole ParseRole(std::string_view name) {
  if (name == "trainee") return AnnotatorRole::kTrainee;
  if (name == "annotator") return AnnotatorRole::kAnnotator;
  if (name == "gold_author") return AnnotatorRole::kGoldAuthor;
  throw Error(ErrorKind::kParse, "unknown annotator role '" + std::string(name) + "'");
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

Story::Story(std::string id, Source source, std::optional<std::string> title,
             std::string text, std::span<const Span> spans,
             std::optional<std::string> duplicate_of)
    : id_(std::move(id)),
      source_(source),
      title_(std::move(title)),
      text_(std::move(text)),
      duplicate_of_(std::move(duplicate_of)) {
  if (id_.empty()) {
    throw Error(ErrorKind::kValidation, "story id must not be empty");
  }
  if (duplicate_of_ && *duplicate_of_ == id_) {
    StoryInvalid(id_, "cannot be a duplicate of itself");
  }
  if (spans.empty()) StoryInvalid(id_, "has no sentences");

  std::size_t covered = 0;
  sentences_.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const Span &span = spans[i];
    const std::string where = "sentence " + std::to_string(i) + " span " + SpanText(span);
    if (span.begin >= span.end) StoryInvalid(id_, where + " is empty");
    if (span.end > text_.size()) StoryInvalid(id_, where + " runs past the text");
    if (span.begin < covered) {
      StoryInvalid(id_, where + " overlaps or precedes the previous sentence");
    }
    for (std::size_t pos = covered; pos < span.begin; ++pos) {
      if (!IsSpace(text_[pos])) {
        StoryInvalid(id_, where + " leaves non-whitespace text uncovered");
      }
    }
    if (IsSpace(text_[span.begin]) || IsSpace(text_[span.end - 1])) {
      StoryInvalid(id_, where + " is not trimmed");
    }
    if (IsContinuationByte(text_[span.begin]) ||
        (span.end < text_.size() && IsContinuationByte(text_[span.end]))) {
      StoryInvalid(id_, where + " splits a UTF-8 character");
    }
    sentences_.push_back({i, text_.substr(span.begin, span.size()), span});
    covered = span.end;
  }
  for (std::size_t pos = covered; pos < text_.size(); ++pos) {
    if (!IsSpace(text_[pos])) {
      StoryInvalid(id_, "text after the last sentence is not covered");
    }
  }
}

Annotation::Annotation(std::string story_id, std::string annotator_id,
                       AnnotationStatus status, std::int64_t version,
                       LabelSequence labels,
                       std::optional<IntakeFlags> intake_flags)
    : story_id_(std::move(story_id)),
      annotator_id_(std::move(annotator_id)),
      status_(status),
      version_(version),
      labels_(std::move(labels)),
      intake_flags_(std::move(intake_flags)) {
  const std::string who = "annotation of '" + story_id_ + "' by '" + annotator_id_ + "'";
  if (story_id_.empty() || annotator_id_.empty()) {
    throw Error(ErrorKind::kValidation, "annotation needs a story and an annotator id");
  }
  if (version_ < 1) {
    throw Error(ErrorKind::kValidation, who + ": version must be >= 1");
  }
  if (labels_.empty()) {
    throw Error(ErrorKind::kValidation, who + ": has no labels");
  }
  if (status_ == AnnotationStatus::kFinal) {
    ValidationReport report = Validate(labels_, status_);
    if (!report.ok()) {
      std::string codes;
      for (const Issue &issue : report.errors) {
        if (!codes.empty()) codes += ", ";
        codes += IssueCodeName(issue.code);
      }
      throw ValidationFailure(who + ": final status blocked by " + codes,
                              std::move(report));
    }
  }
}

Annotation::Annotation(const Story &story, std::string annotator_id,
                       AnnotationStatus status, std::int64_t version,
                       LabelSequence labels,
                       std::optional<IntakeFlags> intake_flags)
    : Annotation(story.id(), std::move(annotator_id), status, version,
                 std::move(labels), std::move(intake_flags)) {
  CheckAgainst(story);
}

void Annotation::CheckAgainst(const Story &story) const {
  if (story.id() != story_id_) {
    throw Error(ErrorKind::kValidation, "annotation for '" + story_id_ +
                                            "' checked against story '" +
                                            story.id() + "'");
  }
  if (labels_.size() != story.sentence_count()) {
    throw Error(ErrorKind::kValidation,
                "annotation of '" + story_id_ + "' by '" + annotator_id_ +
                    "' has " + std::to_string(labels_.size()) +
                    " labels for " + std::to_string(story.sentence_count()) +
                    " sentences");
  }
}

std::vector<Story> LoadCorpus(const std::filesystem::path &path) {
  std::vector<Story> stories;
  std::unordered_set<std::string> ids;
  ReadJsonl(path, [&](const codec::Json &json) {
    Story story = codec::DecodeStory(json);
    if (!ids.insert(story.id()).second) {
      throw Error(ErrorKind::kValidation, "duplicate story id '" + story.id() + "'");
    }
    stories.push_back(std::move(story));
  });
  return stories;
}

void SaveCorpus(std::span<const Story> stories, const std::filesystem::path &path) {
  WriteJsonl(stories, path, [](const Story &s) { return codec::Encode(s); });
}

std::vector<Annotation> LoadAnnotations(const std::filesystem::path &path,
                                        std::span<const Story> stories) {
  std::unordered_map<std::string, const Story *> by_id;
  for (const Story &story : stories) by_id.emplace(story.id(), &story);

  std::vector<Annotation> annotations;
  ReadJsonl(path, [&](const codec::Json &json) {
    Annotation annotation = codec::DecodeAnnotation(json);
    if (!stories.empty()) {
      auto it = by_id.find(annotation.story_id());
      if (it == by_id.end()) {
        throw Error(ErrorKind::kNotFound,
                    "annotation references unknown story '" +
                        annotation.story_id() + "'");
      }
      annotation.CheckAgainst(*it->second);
    }
    annotations.push_back(std::move(annotation));
  });
  return annotations;
}

void SaveAnnotations(std::span<const Annotation> annotations,
                     const std::filesystem::path &path) {
  WriteJsonl(annotations, path, [](const Annotation &a) { return codec::Encode(a); });
}

StatsReport CorpusStats(std::span<const Story> stories,
                        std::span<const Annotation> annotations) {
  std::unordered_map<std::string, const Story *> by_id;
  std::size_t sentences = 0;
  std::size_t unique_stories = 0;
  std::size_t unique_sentences = 0;
  StatsReport report;
  for (const Story &story : stories) {
    by_id.emplace(story.id(), &story);
    sentences += story.sentence_count();
    if (story.duplicate_of()) {
      report.duplicates_flagged = true;
    } else {
      ++unique_stories;
      unique_sentences += story.sentence_count();
    }
  }
  report.all = Population(stories.size(), sentences);
  report.unique = Population(unique_stories, unique_sentences);

  for (const Annotation &annotation : annotations) {
    auto it = by_id.find(annotation.story_id());
    if (it == by_id.end()) {
      throw Error(ErrorKind::kNotFound, "annotation references unknown story '" +
                                            annotation.story_id() + "'");
    }
    if (!annotation.is_final()) continue;
    ++report.final_annotation_count;
    for (Label label : annotation.labels()) {
      ++report.label_frequency[LabelIndex(label)];
    }
  }
  return report;
}

std::string FormatMean(double mean) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", mean);
  return buffer;
}

}  // namespace storyarc
