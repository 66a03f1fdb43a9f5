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


#include <string>

#include "doctest.h"
#include "golden.h"
#include "server.h"
#include "staging.h"
#include "storyarc/serialize.h"

namespace storyarc {
namespace {

using testing::Bearer;
using testing::GetBody;
using testing::Json;
using testing::PostJson;
using testing::RunningService;

Json StoryBody(const std::string &id, const std::string &text, bool with_flags = true) {
  Json body = {{"id", id}, {"source", "quora"}, {"title", nullptr}, {"text", text}};
  if (with_flags) body["intake_flags"] = Json::parse(ToJson(testing::AcceptingFlags()));
  return body;
}

Json Assignments(const std::vector<LabelAssignment> &list) {
  Json out = Json::array();
  for (const auto &item : list) out.push_back({{"index", item.index}, {"label", LabelName(item.label)}});
  return out;
}

TEST_CASE("stories") {
  Workspace workspace;
  RunningService server(workspace);
  auto client = server.Client();

  const Json created = PostJson(client, "/stories",
                                StoryBody("h", golden::StoryText(golden::HedgehogRows())), 201);
  CHECK(created["sentences"].size() == 10);
  CHECK(created["sentences"][0]["text"] == "Yes.");
  CHECK(created["intake"]["accepted"] == true);

  const Json list = Json::parse(GetBody(client, "/stories", 200));
  REQUIRE(list.size() == 1);
  CHECK_FALSE(list[0]["sentences"][0].contains("text"));

  CHECK(Json::parse(GetBody(client, "/stories/h", 200))["id"] == "h");
  const Json missing = Json::parse(GetBody(client, "/stories/nope", 404));
  CHECK(missing["error"]["kind"] == "not_found");

  PostJson(client, "/stories", StoryBody("h", "Again."), 409);
  PostJson(client, "/stories", Json{{"text", "no id"}}, 400);
  auto bad = client.Post("/stories", "{oops", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  PostJson(client, "/stories", StoryBody("late", "Short story.", false), 201);
  const Json decision = PostJson(client, "/stories/late/intake",
                                 Json::parse(ToJson(testing::AcceptingFlags())), 200);
  CHECK(decision["accepted"] == false);
  CHECK(decision["reasons"][0] == "too_short");
}

TEST_CASE("staged task flow with bearer tokens") {
  Workspace workspace;
  RunningService server(workspace);
  auto client = server.Client();
  PostJson(client, "/stories", StoryBody("h", golden::StoryText(golden::HedgehogRows())), 201);
  const Json annotator = PostJson(
      client, "/annotators", {{"id", "ann"}, {"role", "annotator"}, {"token", "s3cret-token"}}, 201);
  CHECK_FALSE(annotator.contains("token"));

  PostJson(client, "/tasks", {{"story_id", "h"}, {"annotator_id", "ann"}}, 401);
  const Json denied = PostJson(client, "/tasks", {{"story_id", "h"}, {"annotator_id", "ann"}},
                               401, Bearer("wrong"));
  CHECK(denied.dump().find("s3cret-token") == std::string::npos);
  CHECK(denied.dump().find("wrong") == std::string::npos);

  const auto auth = Bearer("s3cret-token");
  Json task = PostJson(client, "/tasks", {{"story_id", "h"}, {"annotator_id", "ann"}}, 201, auth);
  CHECK(task["stage"] == "read_and_mark_mre");
  CHECK(task["stage_number"] == 1);
  CHECK(task["permitted_labels"] == Json::array({"most_reportable_event"}));
  const std::string id = task["id"];

  const auto plan = testing::StagePlan(golden::SentenceLabels(golden::HedgehogRows()));
  const Json stale = PostJson(client, "/tasks/" + id + "/stages/1",
                              {{"version", 0}, {"assignments", Assignments(plan[0])}}, 409, auth);
  CHECK(stale["error"]["kind"] == "conflict");
  const Json invalid =
      PostJson(client, "/tasks/" + id + "/stages/1", {{"version", 1}, {"assignments", Json::array()}},
               422, auth);
  CHECK(invalid["error"]["report"]["errors"][0]["code"] == "E4");

  for (int stage = 1; stage <= 4; ++stage) {
    task = PostJson(client, "/tasks/" + id + "/stages/" + std::to_string(stage),
                    {{"version", task["version"]}, {"assignments", Assignments(plan[stage - 1])}},
                    200, auth);
  }
  CHECK(task["stage"] == "review");
  CHECK(task["status"] == "final");
  CHECK(task["validation"]["ok"] == true);
  CHECK(task["labels"][7] == "most_reportable_event");
  CHECK(Json::parse(GetBody(client, "/tasks/" + id, 200))["version"] == 5);

  const Json reopened = PostJson(client, "/tasks/" + id + "/reopen", {{"version", 5}}, 200, auth);
  CHECK(reopened["round"] == 2);
  CHECK(reopened["stage_number"] == 1);
  GetBody(client, "/tasks/t-424242", 404);
}

TEST_CASE("validation, metrics, tension, plans and training") {
  Workspace workspace;
  RunningService server(workspace);
  auto client = server.Client();

  const Json report = PostJson(client, "/annotations/validate",
                               {{"labels", {"orientation", "most_reportable_event",
                                            "complicating_action", "most_reportable_event"}},
                                {"status", "final"}},
                               200);
  CHECK(report["ok"] == false);
  CHECK(report["errors"][0]["code"] == "E1");

  PostJson(client, "/stories", StoryBody("s1", "One. Two. Three.", false), 201);
  PostJson(client, "/stories", StoryBody("s2", "Four. Five.", false), 201);
  PostJson(client, "/annotators", {{"id", "gold"}, {"role", "gold_author"}}, 201);
  auto put = [&](const std::string &story, const std::string &annotator, Json labels) {
    PostJson(client, "/annotations",
             {{"story_id", story}, {"annotator_id", annotator}, {"status", "final"},
              {"version", 1}, {"labels", std::move(labels)}},
             201);
  };
  put("s1", "a", {"orientation", "most_reportable_event", "resolution"});
  put("s1", "b", {"orientation", "most_reportable_event", "evaluation"});
  put("s2", "a", {"complicating_action", "most_reportable_event"});
  put("s2", "b", {"complicating_action", "most_reportable_event"});
  put("s1", "gold", {"orientation", "most_reportable_event", "resolution"});
  PostJson(client, "/annotations",
           {{"story_id", "s1"}, {"annotator_id", "a"}, {"status", "final"}, {"version", 1},
            {"labels", {"orientation", "most_reportable_event", "resolution"}}},
           409);

  const Json agreement = Json::parse(GetBody(client, "/metrics/agreement?a=a&b=b&merge=paper", 200));
  CHECK(agreement["story_count"] == 2);
  CHECK(agreement["sentence_count"] == 5);
  CHECK(agreement["observed_agreement"] == 0.8);
  CHECK(agreement["merged"]["kappa"] == 1.0);
  GetBody(client, "/metrics/agreement?a=a&b=nobody", 404);
  GetBody(client, "/metrics/agreement?a=a", 400);
  GetBody(client, "/metrics/agreement?a=a&b=b&merge=bogus", 400);

  const std::string csv = GetBody(client, "/metrics/confusion", 200);
  CHECK(csv.rfind(",Unlabeled,Abstract", 0) == 0);
  const Json matrix = Json::parse(GetBody(client, "/metrics/confusion?format=json", 200));
  CHECK(matrix.contains("pairs"));
  GetBody(client, "/metrics/confusion?format=xml", 400);

  const std::string curve = GetBody(client, "/stories/s1/tension?annotator=a", 200);
  CHECK(curve == "sentence_index,label,tension\n0,orientation,0\n1,most_reportable_event,2\n"
                 "2,resolution,1\n");
  CHECK(GetBody(client, "/stories/s1/tension?annotator=a&format=svg", 200).find("<svg") != std::string::npos);
  const Json points = Json::parse(GetBody(client, "/stories/s1/tension?annotator=a&format=json", 200));
  CHECK(points["points"].size() == 3);
  GetBody(client, "/stories/s1/tension?annotator=zed", 404);
  GetBody(client, "/stories/s1/tension?annotator=a&format=gif", 400);

  const Json plan = PostJson(client, "/plans/overlap",
                             {{"story_ids", {"s1", "s2"}}, {"annotator_ids", {"x", "y"}},
                              {"k", 1}, {"seed", 9}},
                             200);
  CHECK(plan["shared"] == Json::array({"s1"}));
  CHECK(plan["task_count"] == 3);
  PostJson(client, "/plans/overlap", {{"story_ids", {"s1"}}, {"annotator_ids", {"x", "y"}}, {"k", 2}},
           400);

  const Json diff = PostJson(
      client, "/training/diff",
      {{"submitted", {{"story_id", "s1"}, {"annotator_id", "trainee"}, {"status", "final"},
                      {"version", 1},
                      {"labels", {"orientation", "most_reportable_event", "aftermath"}}}},
       {"gold_story_id", "s1"}},
      200);
  CHECK(diff["mismatch_count"] == 1);
  PostJson(client, "/training/diff",
           {{"submitted", {{"story_id", "s2"}, {"annotator_id", "t"}, {"status", "draft"},
                           {"version", 1}, {"labels", {"unlabeled", "unlabeled"}}}},
            {"gold_story_id", "s2"}},
           404);
}

}  // namespace
}  // namespace storyarc
