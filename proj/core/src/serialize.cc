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

#include "storyarc/serialize.h"

#include "json_codec.h"
#include "storyarc/errors.h"

namespace storyarc {
namespace codec {

namespace {

std::string Describe(std::string_view key) {
  return "field '" + std::string(key) + "'";
}

std::optional<bool> OptionalBool(const Json &object, std::string_view key) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_boolean()) {
    throw Error(ErrorKind::kParse, Describe(key) + " must be a boolean");
  }
  return it->get<bool>();
}

Json OptionalToJson(const std::optional<bool> &value) {
  return value ? Json(*value) : Json(nullptr);
}

Json OptionalToJson(const std::optional<std::string> &value) {
  return value ? Json(*value) : Json(nullptr);
}

std::size_t UnsignedValue(const Json &value, std::string_view what) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw Error(ErrorKind::kParse,
                std::string(what) + " must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

Json EncodeIssues(const std::vector<Issue> &issues) {
  Json out = Json::array();
  for (const Issue &issue : issues) {
    out.push_back({{"code", IssueCodeName(issue.code)},
                   {"sentence_indices", issue.sentence_indices},
                   {"message", issue.message}});
  }
  return out;
}

Json EncodePopulation(const PopulationStats &stats) {
  return {{"story_count", stats.story_count},
          {"sentence_count", stats.sentence_count},
          {"mean_sentences_per_story", stats.mean_sentences_per_story}};
}

}  // namespace

Json Parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
}

const Json &Field(const Json &object, std::string_view key) {
  if (!object.is_object()) {
    throw Error(ErrorKind::kParse, "expected a JSON object");
  }
  auto it = object.find(key);
  if (it == object.end()) {
    throw Error(ErrorKind::kParse, "missing " + Describe(key));
  }
  return *it;
}

std::string StringField(const Json &object, std::string_view key) {
  const Json &value = Field(object, key);
  if (!value.is_string()) {
    throw Error(ErrorKind::kParse, Describe(key) + " must be a string");
  }
  return value.get<std::string>();
}

std::optional<std::string> OptionalStringField(const Json &object,
                                               std::string_view key) {
  if (!object.is_object()) {
    throw Error(ErrorKind::kParse, "expected a JSON object");
  }
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorKind::kParse, Describe(key) + " must be a string or null");
  }
  return it->get<std::string>();
}

Json Encode(const Story &story) {
  Json sentences = Json::array();
  for (const Sentence &sentence : story.sentences()) {
    sentences.push_back({{"index", sentence.index},
                         {"span", {sentence.span.begin, sentence.span.end}}});
  }
  Json out;
  out["id"] = story.id();
  out["source"] = SourceName(story.source());
  out["title"] = OptionalToJson(story.title());
  out["text"] = story.text();
  out["sentences"] = std::move(sentences);
  out["duplicate_of"] = OptionalToJson(story.duplicate_of());
  return out;
}

RawStory DecodeRawStory(const Json &json) {
  RawStory raw;
  raw.id = StringField(json, "id");
  if (auto source = OptionalStringField(json, "source")) raw.source = ParseSource(*source);
  raw.title = OptionalStringField(json, "title");
  raw.text = StringField(json, "text");
  raw.duplicate_of = OptionalStringField(json, "duplicate_of");
  return raw;
}

Story DecodeStory(const Json &json) {
  StringField(json, "source");
  RawStory raw = DecodeRawStory(json);
  const Json &sentences = Field(json, "sentences");
  if (!sentences.is_array()) {
    throw Error(ErrorKind::kParse, "field 'sentences' must be an array");
  }
  std::vector<Span> spans;
  spans.reserve(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const Json &sentence = sentences[i];
    if (UnsignedValue(Field(sentence, "index"), "sentence index") != i) {
      throw Error(ErrorKind::kValidation,
                  "story '" + raw.id + "': sentence " + std::to_string(i) +
                      " has a mismatched index");
    }
    const Json &span = Field(sentence, "span");
    if (!span.is_array() || span.size() != 2) {
      throw Error(ErrorKind::kParse, "sentence span must be [start, end]");
    }
    spans.push_back({UnsignedValue(span[0], "span start"),
                     UnsignedValue(span[1], "span end")});
  }
  return Story(std::move(raw.id), raw.source, std::move(raw.title),
               std::move(raw.text), spans, std::move(raw.duplicate_of));
}

Json Encode(const IntakeFlags &flags) {
  return {{"has_mre", OptionalToJson(flags.has_mre)},
          {"single_story", OptionalToJson(flags.single_story)},
          {"non_narrative_below_half",
           OptionalToJson(flags.non_narrative_below_half)},
          {"offensive", OptionalToJson(flags.offensive)}};
}

IntakeFlags DecodeIntakeFlags(const Json &json) {
  if (!json.is_object()) {
    throw Error(ErrorKind::kParse, "intake flags must be a JSON object");
  }
  IntakeFlags flags;
  flags.has_mre = OptionalBool(json, "has_mre");
  flags.single_story = OptionalBool(json, "single_story");
  flags.non_narrative_below_half = OptionalBool(json, "non_narrative_below_half");
  flags.offensive = OptionalBool(json, "offensive");
  return flags;
}

Json EncodeLabels(LabelView labels) {
  Json out = Json::array();
  for (Label label : labels) out.push_back(LabelName(label));
  return out;
}

LabelSequence DecodeLabels(const Json &json) {
  if (!json.is_array()) {
    throw Error(ErrorKind::kParse, "labels must be an array of strings");
  }
  LabelSequence labels;
  labels.reserve(json.size());
  for (const Json &item : json) {
    if (!item.is_string()) {
      throw Error(ErrorKind::kParse, "labels must be an array of strings");
    }
    labels.push_back(ParseLabel(item.get<std::string>()));
  }
  return labels;
}

Json Encode(const Annotation &annotation) {
  Json out;
  out["story_id"] = annotation.story_id();
  out["annotator_id"] = annotation.annotator_id();
  out["status"] = StatusName(annotation.status());
  out["version"] = annotation.version();
  out["labels"] = EncodeLabels(annotation.labels());
  if (annotation.intake_flags()) {
    out["intake_flags"] = Encode(*annotation.intake_flags());
  }
  return out;
}

Annotation DecodeAnnotation(const Json &json) {
  std::optional<IntakeFlags> flags;
  if (auto it = json.find("intake_flags"); it != json.end() && !it->is_null()) {
    flags = DecodeIntakeFlags(*it);
  }
  const Json &version = Field(json, "version");
  if (!version.is_number_integer()) {
    throw Error(ErrorKind::kParse, "field 'version' must be an integer");
  }
  return Annotation(StringField(json, "story_id"),
                    StringField(json, "annotator_id"),
                    ParseStatus(StringField(json, "status")),
                    version.get<std::int64_t>(),
                    DecodeLabels(Field(json, "labels")), flags);
}

Json Encode(const IntakeDecision &decision) {
  Json reasons = Json::array();
  for (RejectReason reason : decision.reasons) {
    reasons.push_back(RejectReasonName(reason));
  }
  return {{"accepted", decision.accepted},
          {"word_count", decision.word_count},
          {"dialogue_line_count", decision.dialogue_line_count},
          {"reasons", std::move(reasons)}};
}

Json Encode(const ValidationReport &report) {
  return {{"ok", report.ok()},
          {"errors", EncodeIssues(report.errors)},
          {"warnings", EncodeIssues(report.warnings)}};
}

Json Encode(const AgreementReport &report) {
  return {{"annotator_a", report.annotator_a},
          {"annotator_b", report.annotator_b},
          {"sentence_count", report.sentence_count},
          {"observed_agreement", report.observed_agreement},
          {"expected_agreement", report.expected_agreement},
          {"kappa", report.kappa}};
}

Json Encode(const PairReport &report) {
  Json out = Encode(report.raw);
  out["story_count"] = report.story_count;
  if (report.merged) out["merged"] = Encode(*report.merged);
  return out;
}

Json Encode(const StatsReport &report) {
  Json frequency = Json::object();
  for (Label label : kAllLabels) {
    frequency[std::string(LabelName(label))] =
        report.label_frequency[LabelIndex(label)];
  }
  Json out = EncodePopulation(report.all);
  out["duplicates_flagged"] = report.duplicates_flagged;
  out["unique"] = EncodePopulation(report.unique);
  out["final_annotation_count"] = report.final_annotation_count;
  out["label_frequency"] = std::move(frequency);
  return out;
}

Json Encode(const TensionCurve &curve) {
  Json points = Json::array();
  for (const TensionPoint &point : curve.points) {
    points.push_back({{"sentence_index", point.sentence_index},
                      {"label", LabelName(point.label)},
                      {"tension", point.tension}});
  }
  return {{"points", std::move(points)}};
}

Json Encode(const Annotator &annotator) {
  // The token is a credential and never leaves the process.
  return {{"id", annotator.id}, {"role", RoleName(annotator.role)}};
}

Annotator DecodeAnnotator(const Json &json) {
  Annotator annotator;
  annotator.id = StringField(json, "id");
  if (annotator.id.empty()) {
    throw Error(ErrorKind::kValidation, "annotator id must not be empty");
  }
  if (auto role = OptionalStringField(json, "role")) {
    annotator.role = ParseRole(*role);
  }
  annotator.token = OptionalStringField(json, "token").value_or("");
  return annotator;
}

MergeMap DecodeMergeMap(const Json &json) {
  if (json.is_string()) {
    const auto name = json.get<std::string>();
    if (auto preset = MergePreset(name)) return *preset;
    throw Error(ErrorKind::kInvalidArgument,
                "unknown merge preset '" + name + "'");
  }
  if (!json.is_object()) {
    throw Error(ErrorKind::kParse,
                "merge map must be a preset name or a label->label object");
  }
  MergeMap::Table table = MergeMap::Identity().table();
  for (const auto &[from, to] : json.items()) {
    if (!to.is_string()) {
      throw Error(ErrorKind::kParse, "merge target for '" + from +
                                         "' must be a label name");
    }
    table[LabelIndex(ParseLabel(from))] = ParseLabel(to.get<std::string>());
  }
  return MergeMap(table);
}

}  // namespace codec

std::string ToJson(const Story &story) { return codec::Encode(story).dump(); }

Story StoryFromJson(std::string_view json) {
  return codec::DecodeStory(codec::Parse(json));
}

RawStory RawStoryFromJson(std::string_view json) {
  return codec::DecodeRawStory(codec::Parse(json));
}

std::string ToJson(const Annotation &annotation) {
  return codec::Encode(annotation).dump();
}

Annotation AnnotationFromJson(std::string_view json) {
  return codec::DecodeAnnotation(codec::Parse(json));
}

std::string ToJson(const IntakeFlags &flags) {
  return codec::Encode(flags).dump();
}

IntakeFlags IntakeFlagsFromJson(std::string_view json) {
  return codec::DecodeIntakeFlags(codec::Parse(json));
}

std::string ToJson(const IntakeDecision &decision) {
  return codec::Encode(decision).dump();
}

std::string ToJson(const ValidationReport &report) {
  return codec::Encode(report).dump();
}

std::string ToJson(const AgreementReport &report) {
  return codec::Encode(report).dump();
}

std::string ToJson(const PairReport &report) {
  return codec::Encode(report).dump();
}

std::string ToJson(const StatsReport &report) {
  return codec::Encode(report).dump();
}

std::string ToJson(const TensionCurve &curve) {
  return codec::Encode(curve).dump();
}

MergeMap MergeMapFromJson(std::string_view json) {
  return codec::DecodeMergeMap(codec::Parse(json));
}

}  // namespace storyarc
