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

#ifndef STORYARC_WORKFLOW_H_
#define STORYARC_WORKFLOW_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "storyarc/corpus.h"
#include "storyarc/intake.h"
#include "storyarc/segmenter.h"

namespace storyarc {

// The staged labeling procedure: pinpoint the MRE first, then the actions
// leading to it, then how it resolves, then everything else against that
// skeleton.
enum class Stage {
  kReadAndMarkMre = 1,
  kMarkComplicatingActions = 2,
  kMarkResolution = 3,
  kMarkRemaining = 4,
  kReview = 5,
};

inline int StageNumber(Stage stage) { return static_cast<int>(stage); }
std::string_view StageName(Stage stage);
Stage ParseStage(std::string_view name);

// Labels a payload may assign at `stage`. Empty for Review.
std::span<const Label> StageLabels(Stage stage);

// The stage whose palette contains `label`; Unlabeled belongs to none.
std::optional<Stage> OwningStage(Label label);

struct LabelAssignment {
  std::size_t index = 0;
  Label label = Label::kUnlabeled;
};

struct StagePayload {
  // Draft version the client last saw.
  std::int64_t version = 0;
  std::vector<LabelAssignment> assignments;
};

// Applies a stage payload to a draft. The payload is authoritative for the
// stage's own labels: sentences that carried one of them and are not listed
// fall back to Unlabeled. Sentences holding a label owned by an earlier
// stage are the fixed skeleton and cannot be reassigned. Throws
// Error(kInvalidArgument) for out-of-stage labels, out-of-range or repeated
// indices and skeleton conflicts.
LabelSequence ApplyStagePayload(LabelView draft, Stage stage,
                                std::span<const LabelAssignment> assignments);

struct Task {
  std::string id;
  std::string story_id;
  std::string annotator_id;
  Stage stage = Stage::kReadAndMarkMre;
  // Incremented by every reopen; (round, stage) never decreases.
  int round = 1;
  Annotation draft;
  std::string created_at;
  std::string updated_at;
};

struct DiffEntry {
  std::size_t index = 0;
  Label submitted = Label::kUnlabeled;
  Label gold = Label::kUnlabeled;

  bool operator==(const DiffEntry &) const = default;
};

struct DiffReport {
  std::string story_id;
  std::vector<DiffEntry> entries;
  std::vector<DiffEntry> mismatches;
  std::size_t mismatch_count = 0;
  double agreement = 0.0;
};

// Sentence-by-sentence comparison against a gold annotation. Throws
// Error(kInvalidArgument) on a story or length mismatch.
DiffReport TrainingDiff(const Annotation &submitted, const Annotation &gold);

struct OverlapPlan {
  // Stories every annotator labels, for agreement studies.
  std::vector<std::string> shared;
  // Annotator id -> stories, shared ones first, in plan order.
  std::map<std::string, std::vector<std::string>> assignments;

  std::size_t task_count() const;
};

// Gives the first k story ids to every annotator, shuffles the remainder
// with a seeded generator and deals it round-robin, so no other story has
// two annotators. Throws Error(kInvalidArgument) when k exceeds the story count
// or fewer than two annotators are given.
OverlapPlan AssignOverlap(std::span<const std::string> story_ids,
                          std::span<const std::string> annotator_ids,
                          std::size_t shared_count, std::uint64_t seed);

struct IngestResult {
  Story story;
  std::optional<IntakeDecision> intake;
};

// Thread-safe home of the corpus, annotators, annotations and tasks, backed
// by JSONL files in a data directory (or purely in memory when constructed
// without one). Reads take a shared lock and see a consistent snapshot;
// writes are serialized and guarded by version compare-and-set.
class Workspace {
 public:
  Workspace();
  explicit Workspace(std::filesystem::path data_dir);
  ~Workspace();

  Workspace(const Workspace &) = delete;
  Workspace &operator=(const Workspace &) = delete;

  // Segments and stores a story; decides intake when flags are supplied.
  // Throws Error(kConflict) for a duplicate id.
  IngestResult Ingest(RawStory raw,
                      const std::optional<IntakeFlags> &flags = std::nullopt);
  IntakeDecision DecideIntake(const std::string &story_id,
                              const IntakeFlags &flags);

  std::vector<Story> Stories() const;
  std::optional<Story> FindStory(const std::string &story_id) const;
  std::optional<IntakeDecision> FindIntake(const std::string &story_id) const;

  void PutAnnotator(const Annotator &annotator);
  std::optional<Annotator> FindAnnotator(const std::string &id) const;
  std::vector<Annotator> Annotators() const;

  // Errors: unknown story (kNotFound), intake not passed (kInvalidArgument,
  // citing reasons), an active task for the pair (kConflict).
  Task CreateTask(const std::string &story_id,
                  const std::string &annotator_id);
  Task GetTask(const std::string &task_id) const;
  std::vector<Task> Tasks() const;

  // `stage_number` must name the task's current stage. A stale version is
  // rejected with kConflict. Validation errors leave the task untouched and
  // surface as ValidationFailure.
  Task SubmitStage(const std::string &task_id, int stage_number,
                   const StagePayload &payload);

  // Review -> ReadAndMarkMre in a new round, keeping the labels.
  Task Reopen(const std::string &task_id, std::int64_t version);

  // The single write path for annotation records. Final annotations must
  // validate; a record must carry a version above the stored one.
  void PutAnnotation(const Annotation &annotation);

  // Latest record per (story, annotator).
  std::vector<Annotation> Annotations() const;
  std::optional<Annotation> FindAnnotation(const std::string &story_id,
                                           const std::string &annotator_id) const;
  // A final annotation by a gold_author for the story, if any.
  std::optional<Annotation> FindGold(const std::string &story_id) const;

  OverlapPlan PlanOverlap(std::span<const std::string> story_ids,
                          std::span<const std::string> annotator_ids,
                          std::size_t shared_count, std::uint64_t seed,
                          bool create_tasks);

 private:
  struct State;

  void PersistLocked() const;

  mutable std::shared_mutex mutex_;
  std::unique_ptr<State> state_;
  std::optional<std::filesystem::path> data_dir_;
};

}  // namespace storyarc

#endif  // STORYARC_WORKFLOW_H_
