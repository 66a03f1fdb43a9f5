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

#ifndef STORYARC_SERIALIZE_H_
#define STORYARC_SERIALIZE_H_

#include <string>
#include <string_view>

#include "storyarc/agreement.h"
#include "storyarc/corpus.h"
#include "storyarc/intake.h"
#include "storyarc/schema.h"
#include "storyarc/segmenter.h"
#include "storyarc/tension.h"

namespace storyarc {

// Compact single-line JSON with keys in the canonical record order. Parse
// functions throw Error(kParse) on malformed input or unknown enum strings,
// and Error(kValidation) when a record violates a type invariant.

std::string ToJson(const Story &story);
Story StoryFromJson(std::string_view json);

// {"id", "source", "title", "text", "duplicate_of"}; sentences are ignored.
RawStory RawStoryFromJson(std::string_view json);

std::string ToJson(const Annotation &annotation);
Annotation AnnotationFromJson(std::string_view json);

std::string ToJson(const IntakeFlags &flags);
IntakeFlags IntakeFlagsFromJson(std::string_view json);

std::string ToJson(const IntakeDecision &decision);
std::string ToJson(const ValidationReport &report);
std::string ToJson(const AgreementReport &report);
std::string ToJson(const PairReport &report);
std::string ToJson(const StatsReport &report);
std::string ToJson(const TensionCurve &curve);

// Either a preset name as a JSON string ("paper") or an object mapping
// label names to label names; unmentioned labels map to themselves.
MergeMap MergeMapFromJson(std::string_view json);

}  // namespace storyarc

#endif  // STORYARC_SERIALIZE_H_
