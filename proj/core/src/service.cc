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

#include "storyarc/service.h"

#include <exception>
#include <string>

#include "httplib.h"
#include "json_codec.h"
#include "storyarc/agreement.h"
#include "storyarc/errors.h"
#include "storyarc/tension.h"

namespace storyarc {

namespace {

using codec::Json;

constexpr const char *kJsonType = "application/json";

int StatusFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kParse:
      return 400;
    case ErrorKind::kNotFound: return 404;
    case ErrorKind::kConflict: return 409;
    case ErrorKind::kValidation: return 422;
    case ErrorKind::kIo: return 500;
  }
  return 500;
}

void Reply(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

void ReplyError(httplib::Response &res, int status, std::string_view kind,
                const std::string &message, const ValidationReport *report = nullptr) {
  Json error = {{"kind", kind}, {"message", message}};
  if (report) error["report"] = codec::Encode(*report);
  Reply(res, status, Json{{"error", std::move(error)}});
}

// Thrown by handlers for authentication failures.
struct Unauthorized {
  std::string message;
};

template <typename Fn>
httplib::Server::Handler Guard(Fn fn) {
  return [fn](const httplib::Request &req, httplib::Response &res) {
    try {
      fn(req, res);
    } catch (const ValidationFailure &e) {
      ReplyError(res, 422, "validation", e.what(), &e.report());
    } catch (const Error &e) {
      ReplyError(res, StatusFor(e.kind()), ErrorKindName(e.kind()), e.what());
    } catch (const Unauthorized &e) {
      ReplyError(res, 401, "unauthorized", e.message);
    } catch (const nlohmann::json::exception &e) {
      ReplyError(res, 400, "parse", e.what());
    } catch (const std::exception &e) {
      ReplyError(res, 500, "internal", e.what());
    }
  };
}

Json Body(const httplib::Request &req) {
  Json body = codec::Parse(req.body);
  if (!body.is_object()) throw Error(ErrorKind::kParse, "request body must be a JSON object");
  return body;
}

std::string Query(const httplib::Request &req, const std::string &key) {
  if (!req.has_param(key)) {
    throw Error(ErrorKind::kInvalidArgument, "missing query parameter '" + key + "'");
  }
  return req.get_param_value(key);
}

std::optional<MergeMap> MergeParam(const httplib::Request &req) {
  if (!req.has_param("merge")) return std::nullopt;
  const std::string name = req.get_param_value("merge");
  if (auto preset = MergePreset(name)) return preset;
  throw Error(ErrorKind::kInvalidArgument, "unknown merge preset '" + name + "'");
}

Json EncodeStoryView(const Story &story, const std::optional<IntakeDecision> &intake,
                     bool with_text) {
  Json json = codec::Encode(story);
  if (with_text) {
    for (std::size_t i = 0; i < story.sentence_count(); ++i) {
      json["sentences"][i]["text"] = story.sentences()[i].text;
    }
  }
  json["intake"] = intake ? codec::Encode(*intake) : Json(nullptr);
  return json;
}

Json EncodeTask(const Task &task) {
  Json permitted = Json::array();
  for (Label label : StageLabels(task.stage)) permitted.push_back(LabelName(label));
  Json json;
  json["id"] = task.id;
  json["story_id"] = task.story_id;
  json["annotator_id"] = task.annotator_id;
  json["stage"] = StageName(task.stage);
  json["stage_number"] = StageNumber(task.stage);
  json["round"] = task.round;
  json["version"] = task.draft.version();
  json["status"] = StatusName(task.draft.status());
  json["labels"] = codec::EncodeLabels(task.draft.labels());
  json["permitted_labels"] = std::move(permitted);
  json["validation"] = codec::Encode(Validate(task.draft.labels(), task.draft.status()));
  json["created_at"] = task.created_at;
  json["updated_at"] = task.updated_at;
  return json;
}

Json EncodeDiff(const DiffReport &report) {
  auto entries = [](const std::vector<DiffEntry> &list) {
    Json out = Json::array();
    for (const DiffEntry &entry : list) {
      out.push_back({{"index", entry.index},
                     {"submitted", LabelName(entry.submitted)},
                     {"gold", LabelName(entry.gold)}});
    }
    return out;
  };
  return {{"story_id", report.story_id},
          {"agreement", report.agreement},
          {"mismatch_count", report.mismatch_count},
          {"mismatches", entries(report.mismatches)},
          {"entries", entries(report.entries)}};
}

Json EncodeMatrix(const RawConfusionMatrix &raw, const NormalizedConfusionMatrix &normalized) {
  Json labels = Json::array();
  Json counts = Json::array();
  Json cells = Json::array();
  for (Label row : kAllLabels) {
    labels.push_back(LabelName(row));
    Json count_row = Json::array();
    Json cell_row = Json::array();
    for (Label col : kAllLabels) {
      count_row.push_back(raw.count(row, col));
      cell_row.push_back(normalized.at(row, col));
    }
    counts.push_back(std::move(count_row));
    cells.push_back(std::move(cell_row));
  }
  return {{"labels", std::move(labels)},
          {"sentence_count", raw.total()},
          {"raw", std::move(counts)},
          {"normalized", std::move(cells)}};
}

std::vector<std::string> StringList(const Json &body, std::string_view key) {
  const Json &value = codec::Field(body, key);
  if (!value.is_array()) {
    throw Error(ErrorKind::kParse, "field '" + std::string(key) + "' must be an array");
  }
  std::vector<std::string> out;
  for (const Json &item : value) {
    if (!item.is_string()) {
      throw Error(ErrorKind::kParse, "field '" + std::string(key) + "' must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

struct Service::Impl {
  explicit Impl(Workspace &ws) : workspace(ws) { Routes(); }

  Workspace &workspace;
  httplib::Server server;

  // Annotators registered with a token must present it.
  void Authorize(const httplib::Request &req, const std::string &annotator_id) const {
    auto annotator = workspace.FindAnnotator(annotator_id);
    if (!annotator || annotator->token.empty()) return;
    const std::string header = req.get_header_value("Authorization");
    if (header != "Bearer " + annotator->token) {
      throw Unauthorized{"a valid bearer token for '" + annotator_id + "' is required"};
    }
  }

  void Routes() {
    server.Post("/stories", Guard([this](const auto &req, auto &res) {
      const Json body = Body(req);
      std::optional<IntakeFlags> flags;
      if (auto it = body.find("intake_flags"); it != body.end() && !it->is_null()) {
        flags = codec::DecodeIntakeFlags(*it);
      }
      IngestResult result = workspace.Ingest(codec::DecodeRawStory(body), flags);
      Reply(res, 201, EncodeStoryView(result.story, result.intake, true));
    }));

    server.Get("/stories", Guard([this](const auto &, auto &res) {
      Json out = Json::array();
      for (const Story &story : workspace.Stories()) {
        out.push_back(EncodeStoryView(story, workspace.FindIntake(story.id()), false));
      }
      Reply(res, 200, out);
    }));

    server.Get(R"(/stories/([^/]+))", Guard([this](const auto &req, auto &res) {
      const std::string id = req.matches[1];
      auto story = workspace.FindStory(id);
      if (!story) throw Error(ErrorKind::kNotFound, "unknown story '" + id + "'");
      Reply(res, 200, EncodeStoryView(*story, workspace.FindIntake(id), true));
    }));

    server.Post(R"(/stories/([^/]+)/intake)", Guard([this](const auto &req, auto &res) {
      const std::string id = req.matches[1];
      IntakeDecision decision = workspace.DecideIntake(id, codec::DecodeIntakeFlags(Body(req)));
      Reply(res, 200, codec::Encode(decision));
    }));

    server.Get(R"(/stories/([^/]+)/tension)", Guard([this](const auto &req, auto &res) {
      const std::string id = req.matches[1];
      const std::string annotator = Query(req, "annotator");
      auto annotation = workspace.FindAnnotation(id, annotator);
      if (!annotation) {
        throw Error(ErrorKind::kNotFound,
                    "no annotation of '" + id + "' by '" + annotator + "'");
      }
      const TensionCurve curve = ComputeTension(annotation->labels());
      const std::string format = req.has_param("format") ? req.get_param_value("format") : "csv";
      if (format == "json") {
        Reply(res, 200, codec::Encode(curve));
        return;
      }
      const CurveFormat parsed = ParseCurveFormat(format);
      res.status = 200;
      res.set_content(ExportCurve(curve, parsed),
                      parsed == CurveFormat::kSvg ? "image/svg+xml" : "text/csv");
    }));

    server.Post("/annotators", Guard([this](const auto &req, auto &res) {
      const Annotator annotator = codec::DecodeAnnotator(Body(req));
      workspace.PutAnnotator(annotator);
      Reply(res, 201, codec::Encode(annotator));
    }));

    server.Post("/tasks", Guard([this](const auto &req, auto &res) {
      const Json body = Body(req);
      const std::string annotator = codec::StringField(body, "annotator_id");
      Authorize(req, annotator);
      Reply(res, 201, EncodeTask(workspace.CreateTask(codec::StringField(body, "story_id"),
                                                      annotator)));
    }));

    server.Get(R"(/tasks/([^/]+))", Guard([this](const auto &req, auto &res) {
      Reply(res, 200, EncodeTask(workspace.GetTask(req.matches[1])));
    }));

    server.Post(R"(/tasks/([^/]+)/stages/(\d+))", Guard([this](const auto &req, auto &res) {
      const std::string task_id = req.matches[1];
      const int stage = std::stoi(req.matches[2]);
      Authorize(req, workspace.GetTask(task_id).annotator_id);
      const Json body = Body(req);
      StagePayload payload;
      payload.version = codec::Field(body, "version").template get<std::int64_t>();
      if (auto it = body.find("assignments"); it != body.end()) {
        for (const Json &item : *it) {
          const Json &index = codec::Field(item, "index");
          if (!index.is_number_integer() || index.template get<std::int64_t>() < 0) {
            throw Error(ErrorKind::kParse, "assignment index must be a non-negative integer");
          }
          payload.assignments.push_back({index.template get<std::size_t>(),
                                         ParseLabel(codec::StringField(item, "label"))});
        }
      }
      Reply(res, 200, EncodeTask(workspace.SubmitStage(task_id, stage, payload)));
    }));

    server.Post(R"(/tasks/([^/]+)/reopen)", Guard([this](const auto &req, auto &res) {
      const std::string task_id = req.matches[1];
      Authorize(req, workspace.GetTask(task_id).annotator_id);
      const Json body = Body(req);
      Reply(res, 200, EncodeTask(workspace.Reopen(
                          task_id, codec::Field(body, "version").template get<std::int64_t>())));
    }));

    server.Post("/annotations", Guard([this](const auto &req, auto &res) {
      const Annotation annotation = codec::DecodeAnnotation(Body(req));
      Authorize(req, annotation.annotator_id());
      workspace.PutAnnotation(annotation);
      Reply(res, 201, codec::Encode(annotation));
    }));

    server.Post("/annotations/validate", Guard([](const auto &req, auto &res) {
      const Json body = Body(req);
      AnnotationStatus status = AnnotationStatus::kDraft;
      if (auto name = codec::OptionalStringField(body, "status")) status = ParseStatus(*name);
      Reply(res, 200, codec::Encode(Validate(codec::DecodeLabels(codec::Field(body, "labels")),
                                             status)));
    }));

    server.Get("/metrics/agreement", Guard([this](const auto &req, auto &res) {
      const AnnotatorPair pair{Query(req, "a"), Query(req, "b")};
      const auto merge = MergeParam(req);
      const auto annotations = workspace.Annotations();
      auto reports = PairwiseReport(annotations, std::span(&pair, 1),
                                    merge ? &*merge : nullptr);
      Reply(res, 200, codec::Encode(reports.front()));
    }));

    server.Get("/metrics/confusion", Guard([this](const auto &req, auto &res) {
      const auto merge = MergeParam(req);
      const auto annotations = workspace.Annotations();
      const auto pairs = OverlappingPairs(annotations);
      const RawConfusionMatrix raw =
          PairwiseConfusion(annotations, pairs, merge ? &*merge : nullptr);
      const NormalizedConfusionMatrix normalized = NormalizeConfusion(raw);
      const std::string format = req.has_param("format") ? req.get_param_value("format") : "csv";
      if (format == "csv") {
        res.status = 200;
        res.set_content(ConfusionCsv(normalized), "text/csv");
      } else if (format == "json") {
        Json out = EncodeMatrix(raw, normalized);
        Json pair_list = Json::array();
        for (const AnnotatorPair &pair : pairs) pair_list.push_back({pair.a, pair.b});
        out["pairs"] = std::move(pair_list);
        Reply(res, 200, out);
      } else {
        throw Error(ErrorKind::kInvalidArgument, "unsupported format '" + format + "'");
      }
    }));

    server.Post("/plans/overlap", Guard([this](const auto &req, auto &res) {
      const Json body = Body(req);
      const auto stories = StringList(body, "story_ids");
      const auto annotators = StringList(body, "annotator_ids");
      const Json &k = codec::Field(body, "k");
      if (!k.is_number_integer() || k.template get<std::int64_t>() < 0) {
        throw Error(ErrorKind::kParse, "field 'k' must be a non-negative integer");
      }
      const std::uint64_t seed =
          body.contains("seed") ? body["seed"].template get<std::uint64_t>() : 0;
      const bool create = body.value("create_tasks", false);
      const OverlapPlan plan = workspace.PlanOverlap(stories, annotators,
                                                     k.template get<std::size_t>(), seed, create);
      Json assignments = Json::object();
      for (const auto &[annotator, list] : plan.assignments) assignments[annotator] = list;
      Reply(res, create ? 201 : 200,
            Json{{"shared", plan.shared},
                 {"assignments", std::move(assignments)},
                 {"task_count", plan.task_count()},
                 {"tasks_created", create}});
    }));

    server.Post("/training/diff", Guard([this](const auto &req, auto &res) {
      const Json body = Body(req);
      const Annotation submitted = codec::DecodeAnnotation(codec::Field(body, "submitted"));
      const std::string gold_story = codec::StringField(body, "gold_story_id");
      auto gold = workspace.FindGold(gold_story);
      if (!gold) {
        throw Error(ErrorKind::kNotFound, "no gold annotation for story '" + gold_story + "'");
      }
      Reply(res, 200, EncodeDiff(TrainingDiff(submitted, *gold)));
    }));
  }
};

Service::Service(Workspace &workspace) : impl_(std::make_unique<Impl>(workspace)) {}

Service::~Service() { Stop(); }

bool Service::Listen(const std::string &host, int port) {
  return impl_->server.listen(host, port);
}

int Service::BindToAnyPort(const std::string &host) {
  return impl_->server.bind_to_any_port(host);
}

bool Service::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void Service::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool Service::running() const { return impl_->server.is_running(); }

}  // namespace storyarc
