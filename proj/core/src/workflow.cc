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

#include "storyarc/workflow.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <limits>
#include <mutex>
#include <random>
#include <set>

#include "storyarc/errors.h"
#include "store.h"

namespace storyarc {

namespace {

constexpr Label kStage1[] = {Label::kMostReportableEvent};
constexpr Label kStage2[] = {Label::kComplicatingAction};
constexpr Label kStage3[] = {Label::kResolution, Label::kMinorResolution};
constexpr Label kStage4[] = {Label::kAbstract,   Label::kOrientation,
                             Label::kAftermath,  Label::kEvaluation,
                             Label::kReturnOfMre, Label::kDirectComment,
                             Label::kUnlabeled};

std::string NowUtc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t seconds = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

// Uniform draw in [0, bound) by rejection, so plans do not depend on the
// standard library's distribution implementation.
std::uint64_t Bounded(std::mt19937_64 &rng, std::uint64_t bound) {
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound);
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

[[noreturn]] void InvalidPayload(const std::string &what) {
  throw Error(ErrorKind::kInvalidArgument, what);
}

}  // namespace

std::string_view StageName(Stage stage) {
  switch (stage) {
    case Stage::kReadAndMarkMre: return "read_and_mark_mre";
    case Stage::kMarkComplicatingActions: return "mark_complicating_actions";
    case Stage::kMarkResolution: return "mark_resolution";
    case Stage::kMarkRemaining: return "mark_remaining";
    case Stage::kReview: return "review";
  }
  return "?";
}

Stage ParseStage(std::string_view name) {
  for (Stage stage : {Stage::kReadAndMarkMre, Stage::kMarkComplicatingActions,
                      Stage::kMarkResolution, Stage::kMarkRemaining, Stage::kReview}) {
    if (StageName(stage) == name) return stage;
  }
  throw Error(ErrorKind::kParse, "unknown stage '" + std::string(name) + "'");
}

std::span<const Label> StageLabels(Stage stage) {
  switch (stage) {
    case Stage::kReadAndMarkMre: return kStage1;
    case Stage::kMarkComplicatingActions: return kStage2;
    case Stage::kMarkResolution: return kStage3;
    case Stage::kMarkRemaining: return kStage4;
    case Stage::kReview: return {};
  }
  return {};
}

std::optional<Stage> OwningStage(Label label) {
  if (label == Label::kUnlabeled) return std::nullopt;
  for (Stage stage : {Stage::kReadAndMarkMre, Stage::kMarkComplicatingActions,
                      Stage::kMarkResolution, Stage::kMarkRemaining}) {
    auto palette = StageLabels(stage);
    if (std::find(palette.begin(), palette.end(), label) != palette.end()) return stage;
  }
  return std::nullopt;
}

LabelSequence ApplyStagePayload(LabelView draft, Stage stage,
                                std::span<const LabelAssignment> assignments) {
  const auto palette = StageLabels(stage);
  if (palette.empty()) InvalidPayload("no labels can be assigned during review");

  LabelSequence out(draft.begin(), draft.end());
  for (Label &label : out) {
    if (OwningStage(label) == stage) label = Label::kUnlabeled;
  }

  std::set<std::size_t> seen;
  for (const LabelAssignment &assignment : assignments) {
    const std::string where = "sentence " + std::to_string(assignment.index);
    if (assignment.index >= draft.size()) {
      InvalidPayload(where + " is out of range for a story of " +
                     std::to_string(draft.size()) + " sentences");
    }
    if (!seen.insert(assignment.index).second) {
      InvalidPayload(where + " is assigned twice");
    }
    if (std::find(palette.begin(), palette.end(), assignment.label) == palette.end()) {
      InvalidPayload("label '" + std::string(LabelName(assignment.label)) +
                     "' is not permitted at stage " + std::string(StageName(stage)));
    }
    const auto owner = OwningStage(draft[assignment.index]);
    if (owner && *owner < stage) {
      InvalidPayload(where + " already carries '" +
                     std::string(LabelName(draft[assignment.index])) +
                     "' from an earlier stage");
    }
    out[assignment.index] = assignment.label;
  }
  return out;
}

DiffReport TrainingDiff(const Annotation &submitted, const Annotation &gold) {
  if (submitted.story_id() != gold.story_id()) {
    throw Error(ErrorKind::kInvalidArgument,
                "gold annotation is for story '" + gold.story_id() +
                    "', submission for '" + submitted.story_id() + "'");
  }
  if (submitted.labels().size() != gold.labels().size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "submission and gold disagree on the sentence count");
  }
  DiffReport report;
  report.story_id = gold.story_id();
  for (std::size_t i = 0; i < gold.labels().size(); ++i) {
    DiffEntry entry{i, submitted.labels()[i], gold.labels()[i]};
    if (entry.submitted != entry.gold) report.mismatches.push_back(entry);
    report.entries.push_back(entry);
  }
  report.mismatch_count = report.mismatches.size();
  report.agreement = static_cast<double>(report.entries.size() - report.mismatch_count) /
                     static_cast<double>(report.entries.size());
  return report;
}

std::size_t OverlapPlan::task_count() const {
  std::size_t count = 0;
  for (const auto &[annotator, stories] : assignments) count += stories.size();
  return count;
}

OverlapPlan AssignOverlap(std::span<const std::string> story_ids,
                          std::span<const std::string> annotator_ids,
                          std::size_t shared_count, std::uint64_t seed) {
  if (annotator_ids.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "an overlap plan needs at least two annotators");
  }
  if (shared_count > story_ids.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "shared count " + std::to_string(shared_count) + " exceeds the " +
                    std::to_string(story_ids.size()) + " stories given");
  }
  if (std::set<std::string>(annotator_ids.begin(), annotator_ids.end()).size() !=
      annotator_ids.size()) {
    throw Error(ErrorKind::kInvalidArgument, "annotator ids must be distinct");
  }
  if (std::set<std::string>(story_ids.begin(), story_ids.end()).size() != story_ids.size()) {
    throw Error(ErrorKind::kInvalidArgument, "story ids must be distinct");
  }

  OverlapPlan plan;
  plan.shared.assign(story_ids.begin(), story_ids.begin() + shared_count);
  for (const std::string &annotator : annotator_ids) plan.assignments[annotator] = plan.shared;

  std::vector<std::string> rest(story_ids.begin() + shared_count, story_ids.end());
  std::mt19937_64 rng(seed);
  for (std::size_t i = rest.size(); i > 1; --i) {
    std::swap(rest[i - 1], rest[Bounded(rng, i)]);
  }
  for (std::size_t i = 0; i < rest.size(); ++i) {
    plan.assignments[annotator_ids[i % annotator_ids.size()]].push_back(rest[i]);
  }
  return plan;
}

struct Workspace::State : store::Snapshot {
  std::map<std::string, std::size_t> story_index;
  std::map<store::PairKey, std::string> task_by_pair;

  void Reindex() {
    story_index.clear();
    for (std::size_t i = 0; i < stories.size(); ++i) story_index[stories[i].id()] = i;
    task_by_pair.clear();
    for (const auto &[id, task] : tasks) {
      task_by_pair[{task.story_id, task.annotator_id}] = id;
    }
  }

  const Story *FindStory(const std::string &id) const {
    auto it = story_index.find(id);
    return it == story_index.end() ? nullptr : &stories[it->second];
  }

  const Story &RequireStory(const std::string &id) const {
    if (const Story *story = FindStory(id)) return *story;
    throw Error(ErrorKind::kNotFound, "unknown story '" + id + "'");
  }

  store::TaskRecord &RequireTask(const std::string &id) {
    auto it = tasks.find(id);
    if (it == tasks.end()) throw Error(ErrorKind::kNotFound, "unknown task '" + id + "'");
    return it->second;
  }

  const Annotation &DraftOf(const store::TaskRecord &task) const {
    return annotations.at({task.story_id, task.annotator_id});
  }

  Task Assemble(const store::TaskRecord &record) const {
    return Task{record.id,    record.story_id,    record.annotator_id,
                record.stage, record.round,       DraftOf(record),
                record.created_at, record.updated_at};
  }

  // Throws unless a task for the pair may be created.
  void CheckCreatable(const std::string &story_id, const std::string &annotator_id) const {
    const Story &story = RequireStory(story_id);
    auto intake_it = intake.find(story.id());
    if (intake_it == intake.end()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "story '" + story_id + "' has no intake decision yet");
    }
    const IntakeDecision &decision = intake_it->second.decision;
    if (!decision.accepted) {
      std::string reasons;
      for (RejectReason reason : decision.reasons) {
        if (!reasons.empty()) reasons += ", ";
        reasons += RejectReasonName(reason);
      }
      throw Error(ErrorKind::kInvalidArgument,
                  "story '" + story_id + "' failed intake: " + reasons);
    }
    if (annotator_id.empty()) {
      throw Error(ErrorKind::kInvalidArgument, "annotator id must not be empty");
    }
    if (task_by_pair.count({story_id, annotator_id}) > 0) {
      throw Error(ErrorKind::kConflict, "annotator '" + annotator_id +
                                            "' already has a task for story '" +
                                            story_id + "'");
    }
    if (annotations.count({story_id, annotator_id}) > 0) {
      throw Error(ErrorKind::kConflict, "annotator '" + annotator_id +
                                            "' already annotated story '" + story_id + "'");
    }
  }

  Task Create(const std::string &story_id, const std::string &annotator_id) {
    CheckCreatable(story_id, annotator_id);
    const Story &story = RequireStory(story_id);
    char id[32];
    std::snprintf(id, sizeof(id), "t-%06llu",
                  static_cast<unsigned long long>(next_task_number++));
    store::TaskRecord record;
    record.id = id;
    record.story_id = story_id;
    record.annotator_id = annotator_id;
    record.created_at = record.updated_at = NowUtc();

    annotations.insert_or_assign(
        store::PairKey{story_id, annotator_id},
        Annotation(story, annotator_id, AnnotationStatus::kDraft, 1,
                   LabelSequence(story.sentence_count(), Label::kUnlabeled)));
    task_by_pair[{story_id, annotator_id}] = record.id;
    auto [it, inserted] = tasks.emplace(record.id, std::move(record));
    return Assemble(it->second);
  }
};

Workspace::Workspace() : state_(std::make_unique<State>()) {}

Workspace::Workspace(std::filesystem::path data_dir)
    : state_(std::make_unique<State>()), data_dir_(std::move(data_dir)) {
  static_cast<store::Snapshot &>(*state_) = store::Load(*data_dir_);
  state_->Reindex();
}

Workspace::~Workspace() = default;

void Workspace::PersistLocked() const {
  if (data_dir_) store::Save(*state_, *data_dir_);
}

IngestResult Workspace::Ingest(RawStory raw, const std::optional<IntakeFlags> &flags) {
  Story story = IngestStory(std::move(raw));
  std::optional<IntakeDecision> decision;
  if (flags) decision = EvaluateIntake(story, *flags);

  std::unique_lock lock(mutex_);
  if (state_->FindStory(story.id())) {
    throw Error(ErrorKind::kConflict, "story '" + story.id() + "' already exists");
  }
  if (story.duplicate_of() && !state_->FindStory(*story.duplicate_of())) {
    throw Error(ErrorKind::kNotFound, "duplicate_of references unknown story '" +
                                          *story.duplicate_of() + "'");
  }
  state_->stories.push_back(story);
  state_->story_index[story.id()] = state_->stories.size() - 1;
  if (decision) state_->intake[story.id()] = {*flags, *decision};
  PersistLocked();
  return {std::move(story), decision};
}

IntakeDecision Workspace::DecideIntake(const std::string &story_id, const IntakeFlags &flags) {
  std::unique_lock lock(mutex_);
  const Story &story = state_->RequireStory(story_id);
  IntakeDecision decision = EvaluateIntake(story, flags);
  if (state_->task_by_pair.end() !=
      std::find_if(state_->task_by_pair.begin(), state_->task_by_pair.end(),
                   [&](const auto &entry) { return entry.first.first == story_id; })) {
    throw Error(ErrorKind::kConflict,
                "story '" + story_id + "' already has tasks; intake is settled");
  }
  state_->intake[story_id] = {flags, decision};
  PersistLocked();
  return decision;
}

std::vector<Story> Workspace::Stories() const {
  std::shared_lock lock(mutex_);
  return state_->stories;
}

std::optional<Story> Workspace::FindStory(const std::string &story_id) const {
  std::shared_lock lock(mutex_);
  if (const Story *story = state_->FindStory(story_id)) return *story;
  return std::nullopt;
}

std::optional<IntakeDecision> Workspace::FindIntake(const std::string &story_id) const {
  std::shared_lock lock(mutex_);
  auto it = state_->intake.find(story_id);
  if (it == state_->intake.end()) return std::nullopt;
  return it->second.decision;
}

void Workspace::PutAnnotator(const Annotator &annotator) {
  if (annotator.id.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "annotator id must not be empty");
  }
  std::unique_lock lock(mutex_);
  state_->annotators[annotator.id] = annotator;
  PersistLocked();
}

std::optional<Annotator> Workspace::FindAnnotator(const std::string &id) const {
  std::shared_lock lock(mutex_);
  auto it = state_->annotators.find(id);
  if (it == state_->annotators.end()) return std::nullopt;
  return it->second;
}

std::vector<Annotator> Workspace::Annotators() const {
  std::shared_lock lock(mutex_);
  std::vector<Annotator> out;
  for (const auto &[id, annotator] : state_->annotators) out.push_back(annotator);
  return out;
}

Task Workspace::CreateTask(const std::string &story_id, const std::string &annotator_id) {
  std::unique_lock lock(mutex_);
  Task task = state_->Create(story_id, annotator_id);
  PersistLocked();
  return task;
}

Task Workspace::GetTask(const std::string &task_id) const {
  std::shared_lock lock(mutex_);
  auto it = state_->tasks.find(task_id);
  if (it == state_->tasks.end()) {
    throw Error(ErrorKind::kNotFound, "unknown task '" + task_id + "'");
  }
  return state_->Assemble(it->second);
}

std::vector<Task> Workspace::Tasks() const {
  std::shared_lock lock(mutex_);
  std::vector<Task> out;
  for (const auto &[id, record] : state_->tasks) out.push_back(state_->Assemble(record));
  return out;
}

Task Workspace::SubmitStage(const std::string &task_id, int stage_number,
                            const StagePayload &payload) {
  std::unique_lock lock(mutex_);
  store::TaskRecord &record = state_->RequireTask(task_id);
  if (record.stage == Stage::kReview) {
    throw Error(ErrorKind::kConflict, "task '" + task_id + "' is finalized; reopen it to revise");
  }
  if (stage_number != StageNumber(record.stage)) {
    throw Error(ErrorKind::kConflict,
                "task '" + task_id + "' is at stage " +
                    std::to_string(StageNumber(record.stage)) + " (" +
                    std::string(StageName(record.stage)) + "), not stage " +
                    std::to_string(stage_number));
  }
  const Annotation &draft = state_->DraftOf(record);
  if (payload.version != draft.version()) {
    throw Error(ErrorKind::kConflict,
                "stale version " + std::to_string(payload.version) + "; current is " +
                    std::to_string(draft.version()));
  }

  LabelSequence labels = ApplyStagePayload(draft.labels(), record.stage, payload.assignments);

  ValidationReport report = Validate(labels, AnnotationStatus::kDraft);
  if (record.stage == Stage::kReadAndMarkMre &&
      std::find(labels.begin(), labels.end(), Label::kMostReportableEvent) == labels.end()) {
    report.errors.push_back({IssueCode::kMissingMre, {},
                             "the first stage must mark the MRE"});
  }
  if (!report.ok()) {
    throw ValidationFailure("stage submission rejected by validation", std::move(report));
  }

  const bool finishing = record.stage == Stage::kMarkRemaining;
  const Story &story = state_->RequireStory(record.story_id);
  // Annotation's constructor runs final validation and throws
  // ValidationFailure on any hard error, leaving the task untouched.
  Annotation next(story, record.annotator_id,
                  finishing ? AnnotationStatus::kFinal : AnnotationStatus::kDraft,
                  draft.version() + 1, std::move(labels), draft.intake_flags());

  state_->annotations.insert_or_assign(store::PairKey{record.story_id, record.annotator_id},
                                       std::move(next));
  record.stage = static_cast<Stage>(StageNumber(record.stage) + 1);
  record.updated_at = NowUtc();
  PersistLocked();
  return state_->Assemble(record);
}

Task Workspace::Reopen(const std::string &task_id, std::int64_t version) {
  std::unique_lock lock(mutex_);
  store::TaskRecord &record = state_->RequireTask(task_id);
  if (record.stage != Stage::kReview) {
    throw Error(ErrorKind::kConflict, "only a finalized task can be reopened");
  }
  const Annotation &current = state_->DraftOf(record);
  if (version != current.version()) {
    throw Error(ErrorKind::kConflict,
                "stale version " + std::to_string(version) + "; current is " +
                    std::to_string(current.version()));
  }
  const Story &story = state_->RequireStory(record.story_id);
  Annotation reopened(story, record.annotator_id, AnnotationStatus::kDraft,
                      current.version() + 1, current.labels(), current.intake_flags());
  state_->annotations.insert_or_assign(store::PairKey{record.story_id, record.annotator_id},
                                       std::move(reopened));
  record.stage = Stage::kReadAndMarkMre;
  ++record.round;
  record.updated_at = NowUtc();
  PersistLocked();
  return state_->Assemble(record);
}

void Workspace::PutAnnotation(const Annotation &annotation) {
  std::unique_lock lock(mutex_);
  const Story &story = state_->RequireStory(annotation.story_id());
  annotation.CheckAgainst(story);
  const store::PairKey key{annotation.story_id(), annotation.annotator_id()};
  if (state_->task_by_pair.count(key) > 0) {
    throw Error(ErrorKind::kConflict,
                "annotator '" + annotation.annotator_id() + "' has a task for story '" +
                    annotation.story_id() + "'; submit through its stages");
  }
  if (auto it = state_->annotations.find(key);
      it != state_->annotations.end() && it->second.version() >= annotation.version()) {
    throw Error(ErrorKind::kConflict,
                "stale version " + std::to_string(annotation.version()) +
                    "; stored record is at version " +
                    std::to_string(it->second.version()));
  }
  state_->annotations.insert_or_assign(key, annotation);
  PersistLocked();
}

std::vector<Annotation> Workspace::Annotations() const {
  std::shared_lock lock(mutex_);
  std::vector<Annotation> out;
  out.reserve(state_->annotations.size());
  for (const auto &[key, annotation] : state_->annotations) out.push_back(annotation);
  return out;
}

std::optional<Annotation> Workspace::FindAnnotation(const std::string &story_id,
                                                    const std::string &annotator_id) const {
  std::shared_lock lock(mutex_);
  auto it = state_->annotations.find({story_id, annotator_id});
  if (it == state_->annotations.end()) return std::nullopt;
  return it->second;
}

std::optional<Annotation> Workspace::FindGold(const std::string &story_id) const {
  std::shared_lock lock(mutex_);
  for (const auto &[id, annotator] : state_->annotators) {
    if (annotator.role != AnnotatorRole::kGoldAuthor) continue;
    auto it = state_->annotations.find({story_id, id});
    if (it != state_->annotations.end() && it->second.is_final()) return it->second;
  }
  return std::nullopt;
}

OverlapPlan Workspace::PlanOverlap(std::span<const std::string> story_ids,
                                   std::span<const std::string> annotator_ids,
                                   std::size_t shared_count, std::uint64_t seed,
                                   bool create_tasks) {
  OverlapPlan plan = AssignOverlap(story_ids, annotator_ids, shared_count, seed);
  if (!create_tasks) return plan;

  std::unique_lock lock(mutex_);
  for (const auto &[annotator, stories] : plan.assignments) {
    for (const std::string &story : stories) state_->CheckCreatable(story, annotator);
  }
  for (const auto &[annotator, stories] : plan.assignments) {
    for (const std::string &story : stories) state_->Create(story, annotator);
  }
  PersistLocked();
  return plan;
}

}  // namespace storyarc
