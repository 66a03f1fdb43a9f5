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


#ifndef STORYARC_TESTS_SUPPORT_STAGING_H_
#define STORYARC_TESTS_SUPPORT_STAGING_H_

#include <vector>

#include "storyarc/workflow.h"

namespace storyarc::testing {

// Splits a complete labeling into the four stage payloads that produce it.
inline std::vector<std::vector<LabelAssignment>> StagePlan(const LabelSequence &labels) {
  std::vector<std::vector<LabelAssignment>> plan(4);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (auto stage = OwningStage(labels[i])) {
      plan[StageNumber(*stage) - 1].push_back({i, labels[i]});
    }
  }
  return plan;
}

inline IntakeFlags AcceptingFlags() {
  IntakeFlags flags;
  flags.has_mre = true;
  flags.single_story = true;
  flags.non_narrative_below_half = true;
  flags.offensive = false;
  return flags;
}

}  // namespace storyarc::testing

#endif  // STORYARC_TESTS_SUPPORT_STAGING_H_
