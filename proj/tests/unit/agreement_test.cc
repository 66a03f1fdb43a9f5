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


#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "storyarc/agreement.h"
#include "storyarc/errors.h"

namespace storyarc {
namespace {

using L = Label;
constexpr double kTight = 1e-12;

MergeMap RandomMergeMap(std::mt19937_64 &rng) {
  MergeMap::Table table = kAllLabels;
  for (std::size_t i = 1; i < kLabelCount; ++i) table[i] = oracle::RandomLabel(rng);
  return MergeMap(table);
}

TEST_CASE("hand-computed kappa") {
  const LabelSequence a = {L::kOrientation, L::kOrientation, L::kComplicatingAction,
                           L::kMostReportableEvent};
  const LabelSequence b = {L::kOrientation, L::kComplicatingAction,
                           L::kComplicatingAction, L::kMostReportableEvent};
  const auto report = CohenKappa(a, b);
  CHECK(report.sentence_count == 4);
  CHECK(std::abs(report.observed_agreement - 0.75) < kTight);
  CHECK(std::abs(report.expected_agreement - 0.3125) < kTight);
  CHECK(std::abs(report.kappa - 7.0 / 11.0) < kTight);
}

TEST_CASE("degenerate kappas") {
  const LabelSequence same = {L::kAbstract, L::kAbstract};
  CHECK(CohenKappa(same, same).kappa == 1.0);
  const LabelSequence a = {L::kOrientation, L::kOrientation};
  const LabelSequence b = {L::kComplicatingAction, L::kComplicatingAction};
  const auto report = CohenKappa(a, b);
  CHECK(report.observed_agreement == 0.0);
  CHECK(report.expected_agreement == 0.0);
  CHECK(report.kappa == 0.0);
  CHECK_THROWS_AS(CohenKappa(LabelSequence{}, LabelSequence{}), Error);
  CHECK_THROWS_AS(CohenKappa(a, LabelSequence{L::kOrientation}), Error);
}

TEST_CASE("kappa matches the brute-force oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = oracle::RandomSequence(rng, 1 + trial % 100);
    const auto b = trial % 3 ? oracle::Perturb(rng, a, 0.4) : oracle::RandomSequence(rng, a.size());
    const auto expected = oracle::BruteForceKappa(a, b);
    const auto actual = CohenKappa(a, b);
    CHECK(std::abs(actual.observed_agreement - expected.p_o) < kTight);
    CHECK(std::abs(actual.expected_agreement - expected.p_e) < kTight);
    CHECK(std::abs(actual.kappa - expected.kappa) < kTight);
  }
}

TEST_CASE("three-sentence confusion example") {
  const LabelSequence a = {L::kOrientation, L::kOrientation, L::kComplicatingAction};
  const LabelSequence b = {L::kOrientation, L::kComplicatingAction, L::kComplicatingAction};
  const auto raw = BuildConfusion(a, b);
  CHECK(raw.half_units(L::kOrientation, L::kOrientation) == 2);
  CHECK(raw.half_units(L::kOrientation, L::kComplicatingAction) == 1);
  CHECK(raw.half_units(L::kComplicatingAction, L::kOrientation) == 1);
  CHECK(raw.half_units(L::kComplicatingAction, L::kComplicatingAction) == 2);
  CHECK(raw.count(L::kOrientation, L::kComplicatingAction) == 0.5);
  CHECK(raw.total() == 3.0);
  CHECK(raw.total_half_units() == 6);

  const auto n = NormalizeConfusion(raw);
  CHECK(std::abs(n.at(L::kOrientation, L::kOrientation) - 2.0 / 3.0) < kTight);
  CHECK(std::abs(n.at(L::kOrientation, L::kComplicatingAction) - 1.0 / 3.0) < kTight);
  CHECK(std::abs(n.at(L::kComplicatingAction, L::kComplicatingAction) - 2.0 / 3.0) < kTight);
  CHECK(n.at(L::kResolution, L::kResolution) == 0.0);
}

TEST_CASE("single disagreement splits one unit") {
  const auto raw = BuildConfusion(LabelSequence{L::kMostReportableEvent},
                                  LabelSequence{L::kResolution});
  CHECK(raw.count(L::kMostReportableEvent, L::kResolution) == 0.5);
  CHECK(raw.count(L::kResolution, L::kMostReportableEvent) == 0.5);
  CHECK(raw.total() == 1.0);
}

TEST_CASE("perfect agreement normalizes to the used diagonal") {
  const LabelSequence a = {L::kOrientation, L::kMostReportableEvent, L::kMostReportableEvent};
  const auto n = NormalizeConfusion(BuildConfusion(a, a));
  CHECK(n.at(L::kOrientation, L::kOrientation) == 1.0);
  CHECK(n.at(L::kMostReportableEvent, L::kMostReportableEvent) == 1.0);
  CHECK(n.at(L::kAbstract, L::kAbstract) == 0.0);
}

TEST_CASE("confusion matches the brute-force oracle") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = oracle::RandomSequence(rng, 1 + trial % 60);
    const auto b = oracle::Perturb(rng, a, 0.5);
    const auto raw = BuildConfusion(a, b);
    const auto expected = oracle::BruteForceConfusion(a, b);
    const auto expected_n = oracle::BruteForceNormalize(expected);
    const auto n = NormalizeConfusion(raw);
    for (Label row : kAllLabels) {
      for (Label col : kAllLabels) {
        CHECK(raw.count(row, col) == expected[LabelIndex(row)][LabelIndex(col)]);
        CHECK(raw.half_units(row, col) == raw.half_units(col, row));
        CHECK(std::abs(n.at(row, col) - expected_n[LabelIndex(row)][LabelIndex(col)]) < kTight);
      }
    }
    CHECK(raw.total() == static_cast<double>(a.size()));
  }
}

TEST_CASE("accumulation is summation") {
  const LabelSequence a1 = {L::kOrientation, L::kResolution};
  const LabelSequence b1 = {L::kOrientation, L::kAftermath};
  const LabelSequence a2 = {L::kMostReportableEvent};
  RawConfusionMatrix sum = BuildConfusion(a1, b1);
  sum += BuildConfusion(a2, a2);
  RawConfusionMatrix direct;
  direct.Add(a1, b1);
  direct.Add(a2, a2);
  CHECK(sum == direct);
  CHECK(sum.total() == 3.0);
  CHECK_THROWS_AS(direct.Add(a1, a2), Error);
}

TEST_CASE("confusion CSV layout") {
  const LabelSequence a = {L::kOrientation, L::kOrientation, L::kComplicatingAction};
  const LabelSequence b = {L::kOrientation, L::kComplicatingAction, L::kComplicatingAction};
  const std::string csv = ConfusionCsv(NormalizeConfusion(BuildConfusion(a, b)));
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    const std::size_t end = csv.find('\n', pos);
    lines.push_back(csv.substr(pos, end - pos));
    pos = end + 1;
  }
  REQUIRE(lines.size() == 12);
  CHECK(lines[0] ==
        ",Unlabeled,Abstract,Orientation,Complicating Action,MRE,Resolution,Aftermath,"
        "Evaluation,Return of MRE,Minor Resolution,Direct Comment");
  CHECK(lines[3] ==
        "Orientation,0.00,0.00,0.67,0.33,0.00,0.00,0.00,0.00,0.00,0.00,0.00");
  CHECK(lines[11].rfind("Direct Comment,", 0) == 0);
}

TEST_CASE("paper merge preset") {
  const MergeMap paper = *MergePreset("paper");
  CHECK(paper == MergeMap::EndingsMerged());
  CHECK(*MergePreset("endings") == paper);
  CHECK(*MergePreset("identity") == MergeMap::Identity());
  CHECK_FALSE(MergePreset("nope").has_value());

  const auto endings = ApplyMerge(LabelSequence{L::kResolution, L::kAftermath, L::kEvaluation}, paper);
  CHECK(endings[0] == endings[1]);
  CHECK(endings[1] == endings[2]);
  CHECK(ApplyMerge(LabelSequence{L::kMinorResolution, L::kReturnOfMre}, paper) ==
        LabelSequence{L::kUnlabeled, L::kUnlabeled});
  CHECK(paper.Codomain().size() == 7);

  // 10 sentences, every disagreement inside {Resolution, Aftermath, Evaluation}.
  const LabelSequence a = {L::kOrientation, L::kComplicatingAction, L::kMostReportableEvent,
                           L::kResolution, L::kAftermath, L::kEvaluation, L::kResolution,
                           L::kUnlabeled, L::kAftermath, L::kDirectComment};
  const LabelSequence b = {L::kOrientation, L::kComplicatingAction, L::kMostReportableEvent,
                           L::kEvaluation, L::kResolution, L::kAftermath, L::kAftermath,
                           L::kUnlabeled, L::kEvaluation, L::kDirectComment};
  CHECK(CohenKappa(a, b).observed_agreement < 1.0);
  const auto ma = ApplyMerge(a, paper);
  const auto mb = ApplyMerge(b, paper);
  CHECK(oracle::BruteForceObserved(ma, mb) == 1.0);
  CHECK(CohenKappa(ma, mb).observed_agreement == 1.0);
}

TEST_CASE("merging never lowers observed agreement") {
  std::mt19937_64 rng(31);
  for (int pair = 0; pair < 40; ++pair) {
    const auto a = oracle::RandomSequence(rng, 50);
    const auto b = oracle::Perturb(rng, a, 0.6);
    const double before = CohenKappa(a, b).observed_agreement;
    for (int m = 0; m < 10; ++m) {
      const MergeMap map = RandomMergeMap(rng);
      CHECK(CohenKappa(ApplyMerge(a, map), ApplyMerge(b, map)).observed_agreement >= before);
    }
  }
  CHECK_THROWS_AS(MergeMap([] {
                    MergeMap::Table table = kAllLabels;
                    table[0] = L::kResolution;
                    return table;
                  }()),
                  Error);
}

std::vector<Annotation> PairFixture() {
  using S = AnnotationStatus;
  return {
      Annotation("s1", "alice", S::kFinal, 1, {L::kOrientation, L::kMostReportableEvent, L::kResolution}),
      Annotation("s1", "bob", S::kFinal, 1, {L::kOrientation, L::kMostReportableEvent, L::kResolution}),
      Annotation("s2", "alice", S::kFinal, 1, {L::kOrientation, L::kMostReportableEvent, L::kAftermath}),
      Annotation("s2", "bob", S::kFinal, 2, {L::kOrientation, L::kMostReportableEvent, L::kAftermath}),
      // Superseded by version 2 above.
      Annotation("s2", "bob", S::kFinal, 1, {L::kComplicatingAction, L::kMostReportableEvent, L::kAftermath}),
      Annotation("s3", "bob", S::kFinal, 1, {L::kMostReportableEvent}),
      Annotation("s3", "carol", S::kFinal, 1, {L::kMostReportableEvent}),
      Annotation("s1", "carol", S::kDraft, 1, {L::kOrientation, L::kUnlabeled, L::kUnlabeled}),
      Annotation("s4", "alice", S::kFinal, 1, {L::kMostReportableEvent}),
      Annotation("s4", "carol", S::kFinal, 1, {L::kMostReportableEvent}),
  };
}

TEST_CASE("pairwise reports") {
  const auto annotations = PairFixture();
  const auto co = CoAnnotated(annotations, "alice", "bob");
  CHECK(co.story_ids == std::vector<std::string>{"s1", "s2"});
  CHECK(co.a.size() == 6);

  const std::vector<AnnotatorPair> pairs = {{"alice", "bob"}};
  const MergeMap paper = MergeMap::EndingsMerged();
  const auto reports = PairwiseReport(annotations, pairs, &paper);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].story_count == 2);
  CHECK(reports[0].raw.sentence_count == 6);
  CHECK(reports[0].raw.kappa == 1.0);
  REQUIRE(reports[0].merged.has_value());
  CHECK(reports[0].merged->kappa == 1.0);

  const auto all = OverlappingPairs(annotations);
  CHECK(all == std::vector<AnnotatorPair>{{"alice", "bob"}, {"alice", "carol"}, {"bob", "carol"}});
  CHECK(PairwiseReport(annotations, all).size() == 3);

  const std::vector<AnnotatorPair> missing = {{"alice", "dave"}};
  try {
    PairwiseReport(annotations, missing);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kNotFound);
  }

  const auto confusion = PairwiseConfusion(annotations, all);
  CHECK(confusion.total() == 8.0);
}

}  // namespace
}  // namespace storyarc
