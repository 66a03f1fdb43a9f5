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

// Flat-file persistence behind Workspace. One JSONL file per collection,
// each rewritten atomically (temp file + rename) on every mutation.

#ifndef STORYARC_SRC_STORE_H_
#define STORYARC_SRC_STORE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "storyarc/corpus.h"
#include "storyarc/intake.h"
#include "storyarc/workflow.h"

namespace storyarc::store {

struct IntakeRecord {
  IntakeFlags flags;
  IntakeDecision decision;
};

// Task state without the draft, which lives in the annotation collection.
struct TaskRecord {
  std::string id;
  std::string story_id;
  std::string annotator_id;
  Stage stage = Stage::kReadAndMarkMre;
  int round = 1;
  std::string created_at;
  std::string updated_at;
};

using PairKey = std::pair<std::string, std::string>;  // story, annotator

struct Snapshot {
  std::vector<Story> stories;
  std::map<std::string, IntakeRecord> intake;
  std::map<std::string, Annotator> annotators;
  std::map<PairKey, Annotation> annotations;
  std::map<std::string, TaskRecord> tasks;
  std::uint64_t next_task_number = 1;
};

inline constexpr const char *kStoriesFile = "stories.jsonl";
inline constexpr const char *kIntakeFile = "intake.jsonl";
inline constexpr const char *kAnnotatorsFile = "annotators.jsonl";
inline constexpr const char *kAnnotationsFile = "annotations.jsonl";
inline constexpr const char *kTasksFile = "tasks.jsonl";

// Missing files are empty collections; a missing directory is created.
Snapshot Load(const std::filesystem::path &dir);
void Save(const Snapshot &snapshot, const std::filesystem::path &dir);

}  // namespace storyarc::store

#endif  // STORYARC_SRC_STORE_H_
