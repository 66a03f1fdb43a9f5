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

// nlohmann-based codecs shared by the JSONL persistence and the HTTP layer.
// Not installed: the public surface works in terms of JSON strings.

#ifndef STORYARC_SRC_JSON_CODEC_H_
#define STORYARC_SRC_JSON_CODEC_H_

#include <string>
#include <string_view>

#include "json.hpp"
#include "storyarc/agreement.h"
#include "storyarc/corpus.h"
#include "storyarc/intake.h"
#include "storyarc/schema.h"
#include "storyarc/segmenter.h"
#include "storyarc/tension.h"

namespace storyarc::codec {

using Json = nlohmann::ordered_json;

// Parses one JSON document, mapping library errors onto Error(kParse).
Json Parse(std::string_view text);

Json Encode(const Story &story);
Story DecodeStory(const Json &json);
RawStory DecodeRawStory(const Json &json);

Json Encode(const Annotation &annotation);
Annotation DecodeAnnotation(const Json &json);

Json Encode(const IntakeFlags &flags);
IntakeFlags DecodeIntakeFlags(const Json &json);

Json Encode(const IntakeDecision &decision);
Json Encode(const ValidationReport &report);
Json Encode(const AgreementReport &report);
Json Encode(const PairReport &report);
Json Encode(const StatsReport &report);
Json Encode(const TensionCurve &curve);
Json Encode(const Annotator &annotator);
Annotator DecodeAnnotator(const Json &json);

LabelSequence DecodeLabels(const Json &json);
Json EncodeLabels(LabelView labels);

MergeMap DecodeMergeMap(const Json &json);

// Typed field access with Error(kParse) naming the missing/mistyped key.
const Json &Field(const Json &object, std::string_view key);
std::string StringField(const Json &object, std::string_view key);
std::optional<std::string> OptionalStringField(const Json &object,
                                               std::string_view key);

}  // namespace storyarc::codec

#endif  // STORYARC_SRC_JSON_CODEC_H_
