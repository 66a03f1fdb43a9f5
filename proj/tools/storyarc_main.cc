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


// storyarc: command-line front end for corpus ingestion, validation,
// agreement metrics, tension curves and the annotation service.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "storyarc/agreement.h"
#include "storyarc/corpus.h"
#include "storyarc/errors.h"
#include "storyarc/intake.h"
#include "storyarc/schema.h"
#include "storyarc/segmenter.h"
#include "storyarc/serialize.h"
#include "storyarc/service.h"
#include "storyarc/tension.h"
#include "storyarc/workflow.h"

namespace storyarc {
namespace {

using Json = nlohmann::ordered_json;

std::string ReadText(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Non-empty lines of a JSONL file, with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> ReadLines(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path.string() + "'");
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.emplace_back(number, line);
  }
  return lines;
}

void WriteOutput(const std::string &content, const std::string &out) {
  if (out.empty() || out == "-") {
    std::cout << content;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw Error(ErrorKind::kIo, "cannot open '" + out + "' for writing");
  file << content;
}

MergeMap LoadMerge(const std::string &choice) {
  if (auto preset = MergePreset(choice)) return *preset;
  if (std::filesystem::exists(choice)) return MergeMapFromJson(ReadText(choice));
  throw Error(ErrorKind::kInvalidArgument,
              "'" + choice + "' is neither a merge preset nor a merge map file");
}

// Labels of the latest final annotation per story in one file.
std::map<std::string, Annotation> LatestFinal(const std::filesystem::path &path) {
  std::map<std::string, Annotation> latest;
  for (const Annotation &annotation : LoadAnnotations(path)) {
    if (!annotation.is_final()) continue;
    auto it = latest.find(annotation.story_id());
    if (it == latest.end()) {
      latest.emplace(annotation.story_id(), annotation);
    } else if (annotation.version() > it->second.version()) {
      it->second = annotation;
    }
  }
  return latest;
}

struct FilePair {
  std::string a_name;
  std::string b_name;
  std::size_t stories = 0;
  LabelSequence a;
  LabelSequence b;
};

FilePair CoAnnotatedFiles(const std::string &a_path, const std::string &b_path) {
  const auto a = LatestFinal(a_path);
  const auto b = LatestFinal(b_path);
  FilePair pair;
  for (const auto &[story_id, annotation] : a) {
    auto it = b.find(story_id);
    if (it == b.end()) continue;
    if (annotation.labels().size() != it->second.labels().size()) {
      throw Error(ErrorKind::kValidation,
                  "story '" + story_id + "' has different sentence counts in the two files");
    }
    if (pair.stories == 0) {
      pair.a_name = annotation.annotator_id();
      pair.b_name = it->second.annotator_id();
    }
    pair.a.insert(pair.a.end(), annotation.labels().begin(), annotation.labels().end());
    pair.b.insert(pair.b.end(), it->second.labels().begin(), it->second.labels().end());
    ++pair.stories;
  }
  if (pair.stories == 0) {
    throw Error(ErrorKind::kNotFound,
                "'" + a_path + "' and '" + b_path + "' share no final annotations");
  }
  return pair;
}

AgreementReport Named(AgreementReport report, const FilePair &pair) {
  report.annotator_a = pair.a_name;
  report.annotator_b = pair.b_name;
  return report;
}

int Segment(const std::string &file) {
  const std::string text = ReadText(file);
  for (const Sentence &sentence : storyarc::Segment(text)) {
    std::cout << sentence.index << '\t' << sentence.span.begin << '\t' << sentence.span.end
              << '\t' << sentence.text << '\n';
  }
  return 0;
}

int Ingest(const std::string &input, const std::string &out, const std::string &data) {
  std::vector<Story> stories;
  std::string output;
  for (const auto &[number, line] : ReadLines(input)) {
    try {
      stories.push_back(IngestStory(RawStoryFromJson(line)));
    } catch (const Error &e) {
      throw Error(e.kind(), input + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  if (!data.empty()) {
    Workspace workspace{std::filesystem::path(data)};
    for (const Story &story : stories) {
      workspace.Ingest({story.id(), story.source(), story.title(), story.text(),
                        story.duplicate_of()});
    }
    std::cerr << "ingested " << stories.size() << " stories into " << data << "\n";
    return 0;
  }
  if (out.empty() || out == "-") {
    for (const Story &story : stories) std::cout << ToJson(story) << '\n';
  } else {
    SaveCorpus(stories, out);
  }
  return 0;
}

int Intake(const std::string &stories_path, const std::string &flags_path) {
  std::map<std::string, IntakeFlags> flags;
  for (const auto &[number, line] : ReadLines(flags_path)) {
    const Json json = Json::parse(line, nullptr, false);
    if (!json.is_object() || !json.contains("story_id") || !json["story_id"].is_string()) {
      throw Error(ErrorKind::kParse,
                  flags_path + ":" + std::to_string(number) + ": expected {\"story_id\", ...}");
    }
    flags[json["story_id"].get<std::string>()] = IntakeFlagsFromJson(line);
  }
  for (const Story &story : LoadCorpus(stories_path)) {
    auto it = flags.find(story.id());
    Json out = {{"story_id", story.id()}};
    if (it == flags.end() || !it->second.complete()) {
      out["error"] = "intake flags missing or incomplete";
    } else {
      const Json decision = Json::parse(ToJson(EvaluateIntake(story, it->second)));
      for (const auto &[key, value] : decision.items()) out[key] = value;
    }
    std::cout << out.dump() << '\n';
  }
  return 0;
}

int ValidateFile(const std::string &path, const std::string &corpus) {
  std::map<std::string, std::size_t> sentence_counts;
  if (!corpus.empty()) {
    for (const Story &story : LoadCorpus(corpus)) {
      sentence_counts[story.id()] = story.sentence_count();
    }
  }
  bool final_errors = false;
  for (const auto &[number, line] : ReadLines(path)) {
    const Json json = Json::parse(line, nullptr, false);
    if (!json.is_object() || !json.contains("labels") || !json["labels"].is_array()) {
      throw Error(ErrorKind::kParse, path + ":" + std::to_string(number) + ": malformed record");
    }
    LabelSequence labels;
    for (const Json &label : json["labels"]) labels.push_back(ParseLabel(label.get<std::string>()));
    const AnnotationStatus status = ParseStatus(json.value("status", "draft"));
    const ValidationReport report = Validate(labels, status);
    Json out = {{"line", number},
                {"story_id", json.value("story_id", "")},
                {"annotator_id", json.value("annotator_id", "")},
                {"status", StatusName(status)}};
    const Json encoded = Json::parse(ToJson(report));
    for (const auto &[key, value] : encoded.items()) out[key] = value;
    auto count = sentence_counts.find(out["story_id"].get<std::string>());
    if (count != sentence_counts.end() && count->second != labels.size()) {
      out["ok"] = false;
      out["length_mismatch"] = {{"labels", labels.size()}, {"sentences", count->second}};
      if (status == AnnotationStatus::kFinal) final_errors = true;
    }
    if (status == AnnotationStatus::kFinal && !report.ok()) final_errors = true;
    std::cout << out.dump() << '\n';
  }
  return final_errors ? 1 : 0;
}

int Kappa(const std::string &a, const std::string &b, const std::string &merge) {
  const FilePair pair = CoAnnotatedFiles(a, b);
  PairReport report;
  report.story_count = pair.stories;
  report.raw = Named(CohenKappa(pair.a, pair.b), pair);
  if (!merge.empty()) {
    const MergeMap map = LoadMerge(merge);
    report.merged = Named(CohenKappa(ApplyMerge(pair.a, map), ApplyMerge(pair.b, map)), pair);
  }
  std::cout << ToJson(report) << '\n';
  return 0;
}

int Confusion(const std::vector<std::string> &pairs, const std::string &merge,
              const std::string &out) {
  std::optional<MergeMap> map;
  if (!merge.empty()) map = LoadMerge(merge);
  RawConfusionMatrix raw;
  for (const std::string &pair_arg : pairs) {
    const auto comma = pair_arg.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorKind::kInvalidArgument, "pair '" + pair_arg + "' must be a.jsonl,b.jsonl");
    }
    const FilePair pair = CoAnnotatedFiles(pair_arg.substr(0, comma), pair_arg.substr(comma + 1));
    if (map) {
      raw.Add(ApplyMerge(pair.a, *map), ApplyMerge(pair.b, *map));
    } else {
      raw.Add(pair.a, pair.b);
    }
  }
  WriteOutput(ConfusionCsv(NormalizeConfusion(raw)), out);
  return 0;
}

int Tension(const std::string &story_id, const std::string &annotator, const std::string &format,
            const std::string &data) {
  Workspace workspace{std::filesystem::path(data)};
  auto annotation = workspace.FindAnnotation(story_id, annotator);
  if (!annotation) {
    throw Error(ErrorKind::kNotFound,
                "no annotation of '" + story_id + "' by '" + annotator + "' in " + data);
  }
  const TensionCurve curve = ComputeTension(annotation->labels());
  if (format == "json") {
    std::cout << ToJson(curve) << '\n';
  } else {
    std::cout << ExportCurve(curve, ParseCurveFormat(format));
  }
  return 0;
}

int Stats(const std::string &corpus, const std::string &annotations) {
  const auto stories = LoadCorpus(corpus);
  std::vector<Annotation> records;
  if (!annotations.empty()) records = LoadAnnotations(annotations, stories);
  const StatsReport report = CorpusStats(stories, records);
  std::cout << ToJson(report) << '\n';
  std::cerr << report.all.story_count << " stories, " << report.all.sentence_count
            << " sentences, mean " << FormatMean(report.all.mean_sentences_per_story);
  if (report.duplicates_flagged) {
    std::cerr << "; unique " << report.unique.story_count << " stories, mean "
              << FormatMean(report.unique.mean_sentences_per_story);
  }
  std::cerr << '\n';
  return 0;
}

Service *g_service = nullptr;

void HandleSignal(int) {
  if (g_service) g_service->Stop();
}

int Serve(const std::string &host, int port, const std::string &data) {
  std::filesystem::create_directories(data);
  Workspace workspace{std::filesystem::path(data)};
  Service service(workspace);
  g_service = &service;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  std::cerr << "serving " << data << " on " << host << ":" << port << "\n";
  const bool ok = service.Listen(host, port);
  g_service = nullptr;
  if (!ok) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

int Main(int argc, char **argv) {
  CLI::App app{"Story-structure annotation toolkit"};
  app.require_subcommand(1);

  std::string file, out, data, flags, corpus, a, b, merge, story, annotator, annotations;
  std::string format = "csv";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::vector<std::string> pairs;

  auto *serve = app.add_subcommand("serve", "Run the HTTP annotation service");
  serve->add_option("--port", port, "TCP port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--data", data, "Workspace data directory")->required();

  auto *ingest = app.add_subcommand("ingest", "Segment raw stories into a corpus");
  ingest->add_option("input", file, "Raw story JSONL")->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", out, "Corpus JSONL to write (default stdout)");
  ingest->add_option("--data", data, "Add the stories to a workspace instead");

  auto *segment = app.add_subcommand("segment", "Print the sentences of a text file");
  segment->add_option("file", file, "Plain text file")->required()->check(CLI::ExistingFile);

  auto *intake = app.add_subcommand("intake", "Decide intake for every story");
  intake->add_option("stories", corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  intake->add_option("--flags", flags, "Intake flag JSONL keyed by story_id")
      ->required()
      ->check(CLI::ExistingFile);

  auto *validate = app.add_subcommand("validate", "Validate annotation records");
  validate->add_option("annotations", file, "Annotation JSONL")->required()->check(CLI::ExistingFile);
  validate->add_option("--corpus", corpus, "Corpus JSONL for sentence-count checks")
      ->check(CLI::ExistingFile);

  auto *kappa = app.add_subcommand("kappa", "Cohen's kappa between two annotation files");
  kappa->add_option("--a", a, "First annotator's JSONL")->required()->check(CLI::ExistingFile);
  kappa->add_option("--b", b, "Second annotator's JSONL")->required()->check(CLI::ExistingFile);
  kappa->add_option("--merge", merge, "Merge preset name or merge map JSON file");

  auto *confusion = app.add_subcommand("confusion", "Normalized confusion matrix CSV");
  confusion->add_option("--pairs", pairs, "Annotation file pairs as a.jsonl,b.jsonl")
      ->required()
      ->expected(1, -1);
  confusion->add_option("--merge", merge, "Merge preset name or merge map JSON file");
  confusion->add_option("--out", out, "CSV file to write (default stdout)");

  auto *tension = app.add_subcommand("tension", "Tension curve of one annotation");
  tension->add_option("story", story, "Story id")->required();
  tension->add_option("--annotator", annotator, "Annotator id")->required();
  tension->add_option("--format", format, "csv, svg or json")
      ->check(CLI::IsMember({"csv", "svg", "json"}))
      ->capture_default_str();
  tension->add_option("--data", data, "Workspace data directory")->required();

  auto *stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("corpus", corpus, "Corpus JSONL")->required()->check(CLI::ExistingFile);
  stats->add_option("--annotations", annotations, "Annotation JSONL")->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) return Serve(host, port, data);
    if (*ingest) return Ingest(file, out, data);
    if (*segment) return Segment(file);
    if (*intake) return Intake(corpus, flags);
    if (*validate) return ValidateFile(file, corpus);
    if (*kappa) return Kappa(a, b, merge);
    if (*confusion) return Confusion(pairs, merge, out);
    if (*tension) return Tension(story, annotator, format, data);
    if (*stats) return Stats(corpus, annotations);
  } catch (const Error &e) {
    std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace
}  // namespace storyarc

int main(int argc, char **argv) { return storyarc::Main(argc, argv); }
