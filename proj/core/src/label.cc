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

#include "storyarc/label.h"

#include <string>

#include "storyarc/errors.h"

namespace storyarc {

namespace {

struct LabelNames {
  std::string_view wire;
  std::string_view display;
};

// Indexed by LabelIndex().
constexpr LabelNames kNames[kLabelCount] = {
    {"unlabeled", "Unlabeled"},
    {"abstract", "Abstract"},
    {"orientation", "Orientation"},
    {"complicating_action", "Complicating Action"},
    {"most_reportable_event", "MRE"},
    {"resolution", "Resolution"},
    {"aftermath", "Aftermath"},
    {"evaluation", "Evaluation"},
    {"return_of_mre", "Return of MRE"},
    {"minor_resolution", "Minor Resolution"},
    {"direct_comment", "Direct Comment"},
};

}  // namespace

std::string_view LabelName(Label label) {
  return kNames[LabelIndex(label)].wire;
}

std::string_view LabelDisplayName(Label label) {
  return kNames[LabelIndex(label)].display;
}

std::optional<Label> TryParseLabel(std::string_view name) {
  for (Label label : kAllLabels) {
    if (kNames[LabelIndex(label)].wire == name) return label;
  }
  return std::nullopt;
}

Label ParseLabel(std::string_view name) {
  if (auto label = TryParseLabel(name)) return *label;
  throw Error(ErrorKind::kParse,
              "unknown label '" + std::string(name) + "'");
}

}  // namespace storyarc
