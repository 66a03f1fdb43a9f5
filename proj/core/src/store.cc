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

#include "store.h"

#include <charconv>
#include <fstream>

#include "json_codec.h"

namespace storyarc::store {

namespace {

using codec::Json;

RejectReason ParseReason(std::string_view name) {
  for (RejectReason reason :
       {RejectReason::kTooShort, RejectReason::kTooLong,
        RejectReason::kTooMuchDialogue, RejectReason::kNoMre,
        RejectReason::kMultiStory, RejectReason::kTooMuchNonNarrative,
        RejectReason::kOffensive}) {
    if (RejectReasonName(reason) == name) return reason;
  }
  throw Error(ErrorKind::kParse, "unknown intake reason '" + std::string(name) + "'");
}

std::vector<Json> ReadLines(const std::filesystem::path &path) {
  std::vector<Json> out;
  if (!std::filesystem::exists(path)) return out;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path.string() + "'");
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(codec::Parse(line));
    } catch (const Error &e) {
      throw Error(e.kind(), path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

void WriteAtomically(const std::filesystem::path &path, const std::vector<Json> &records) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write '" + tmp.string() + "'");
    for (const Json &record : records) out << record.dump() << '\n';
    out.flush();
    if (!out) throw Error(ErrorKind::kIo, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "cannot replace '" + path.string() + "': " + ec.message());
  }
}

std::uint64_t TaskNumber(const std::string &id) {
  // Ids look like "t-000042".
  std::uint64_t number = 0;
  if (id.size() > 2 && id.rfind("t-", 0) == 0) {
    std::from_chars(id.data() + 2, id.data() + id.size(), number);
  }
  return number;
}

}  // namespace

Snapshot Load(const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  Snapshot snapshot;

  const auto stories_path = dir / kStoriesFile;
  if (std::filesystem::exists(stories_path)) snapshot.stories = LoadCorpus(stories_path);

  for (const Json &json : ReadLines(dir / kIntakeFile)) {
    IntakeRecord record;
    record.flags = codec::DecodeIntakeFlags(codec::Field(json, "flags"));
    record.decision.accepted = codec::Field(json, "accepted").get<bool>();
    record.decision.word_count = codec::Field(json, "word_count").get<std::size_t>();
    record.decision.dialogue_line_count =
        codec::Field(json, "dialogue_line_count").get<std::size_t>();
    for (const Json &reason : codec::Field(json, "reasons")) {
      record.decision.reasons.push_back(ParseReason(reason.get<std::string>()));
    }
    snapshot.intake[codec::StringField(json, "story_id")] = std::move(record);
  }

  for (const Json &json : ReadLines(dir / kAnnotatorsFile)) {
    Annotator annotator = codec::DecodeAnnotator(json);
    snapshot.annotators[annotator.id] = std::move(annotator);
  }

  for (const Json &json : ReadLines(dir / kAnnotationsFile)) {
    Annotation annotation = codec::DecodeAnnotation(json);
    PairKey key{annotation.story_id(), annotation.annotator_id()};
    snapshot.annotations.insert_or_assign(std::move(key), std::move(annotation));
  }

  for (const Json &json : ReadLines(dir / kTasksFile)) {
    TaskRecord task;
    task.id = codec::StringField(json, "id");
    task.story_id = codec::StringField(json, "story_id");
    task.annotator_id = codec::StringField(json, "annotator_id");
    task.stage = ParseStage(codec::StringField(json, "stage"));
    task.round = codec::Field(json, "round").get<int>();
    task.created_at = codec::StringField(json, "created_at");
    task.updated_at = codec::StringField(json, "updated_at");
    snapshot.next_task_number =
        std::max(snapshot.next_task_number, TaskNumber(task.id) + 1);
    snapshot.tasks[task.id] = std::move(task);
  }
  return snapshot;
}

void Save(const Snapshot &snapshot, const std::filesystem::path &dir) {
  std::vector<Json> records;
  for (const Story &story : snapshot.stories) records.push_back(codec::Encode(story));
  WriteAtomically(dir / kStoriesFile, records);

  records.clear();
  for (const auto &[story_id, record] : snapshot.intake) {
    Json json;
    json["story_id"] = story_id;
    const Json decision = codec::Encode(record.decision);
    for (const auto &[key, value] : decision.items()) json[key] = value;
    json["flags"] = codec::Encode(record.flags);
    records.push_back(std::move(json));
  }
  WriteAtomically(dir / kIntakeFile, records);

  records.clear();
  for (const auto &[id, annotator] : snapshot.annotators) {
    Json json = codec::Encode(annotator);
    json["token"] = annotator.token;
    records.push_back(std::move(json));
  }
  WriteAtomically(dir / kAnnotatorsFile, records);

  records.clear();
  for (const auto &[key, annotation] : snapshot.annotations) {
    records.push_back(codec::Encode(annotation));
  }
  WriteAtomically(dir / kAnnotationsFile, records);

  records.clear();
  for (const auto &[id, task] : snapshot.tasks) {
    Json json;
    json["id"] = task.id;
    json["story_id"] = task.story_id;
    json["annotator_id"] = task.annotator_id;
    json["stage"] = StageName(task.stage);
    json["round"] = task.round;
    json["created_at"] = task.created_at;
    json["updated_at"] = task.updated_at;
    records.push_back(std::move(json));
  }
  WriteAtomically(dir / kTasksFile, records);
}

}  // namespace storyarc::store
