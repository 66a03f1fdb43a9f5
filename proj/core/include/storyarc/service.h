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

#ifndef STORYARC_SERVICE_H_
#define STORYARC_SERVICE_H_

#include <memory>
#include <string>

#include "storyarc/workflow.h"

namespace storyarc {

// HTTP+JSON front end over a Workspace.
//
//   POST /stories                      ingest (segment + intake)
//   GET  /stories, /stories/{id}
//   POST /stories/{id}/intake          assert intake flags later
//   GET  /stories/{id}/tension?annotator=<id>&format=csv|svg
//   POST /annotators                   {id, role, token}
//   POST /tasks                        {story_id, annotator_id}
//   GET  /tasks/{id}
//   POST /tasks/{id}/stages/{n}        {version, assignments:[{index,label}]}
//   POST /tasks/{id}/reopen            {version}
//   POST /annotations                  import an annotation record
//   POST /annotations/validate         {labels, status} -> ValidationReport
//   GET  /metrics/agreement?a=<id>&b=<id>[&merge=paper]
//   GET  /metrics/confusion?format=csv|json[&merge=paper]
//   POST /plans/overlap                {story_ids, annotator_ids, k, seed}
//   POST /training/diff                {submitted, gold_story_id}
//
// Annotators registered with a token must send "Authorization: Bearer
// <token>" on requests made in their name.
class Service {
 public:
  explicit Service(Workspace &workspace);
  ~Service();

  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  // Blocks until Stop(). Returns false if the socket cannot be bound.
  bool Listen(const std::string &host, int port);

  // Binds an ephemeral port and returns it, or -1.
  int BindToAnyPort(const std::string &host);
  // Serves on a socket bound by BindToAnyPort; blocks until Stop().
  bool ListenAfterBind();

  void Stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace storyarc

#endif  // STORYARC_SERVICE_H_
