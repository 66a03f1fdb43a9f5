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

#include "storyarc/agreement.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "storyarc/errors.h"

namespace storyarc {

namespace {

void CheckSameLength(LabelView a, LabelView b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "label sequences differ in length (" + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()) + ")");
  }
}

using AnnotationKey = std::pair<std::string, std::string>;  // story, annotator

// Highest-version final annotation per (story, annotator).
std::map<AnnotationKey, const Annotation *> LatestFinal(
    std::span<const Annotation> annotations) {
  std::map<AnnotationKey, const Annotation *> latest;
  for (const Annotation &annotation : annotations) {
    if (!annotation.is_final()) continue;
    auto [it, inserted] = latest.try_emplace(
        AnnotationKey{annotation.story_id(), annotation.annotator_id()}, &annotation);
    if (!inserted && it->second->version() < annotation.version()) {
      it->second = &annotation;
    }
  }
  return latest;
}

AgreementReport Kappa(const CoAnnotation &co, const AnnotatorPair &pair,
                      const MergeMap *merge) {
  AgreementReport report =
      merge ? CohenKappa(ApplyMerge(co.a, *merge), ApplyMerge(co.b, *merge))
            : CohenKappa(co.a, co.b);
  report.annotator_a = pair.a;
  report.annotator_b = pair.b;
  return report;
}

}  // namespace

void RawConfusionMatrix::Add(LabelView a, LabelView b) {
  CheckSameLength(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t row = LabelIndex(a[i]);
    const std::size_t col = LabelIndex(b[i]);
    if (row == col) {
      cells_[row][row] += 2;
    } else {
      cells_[row][col] += 1;
      cells_[col][row] += 1;
    }
  }
}

RawConfusionMatrix &RawConfusionMatrix::operator+=(const RawConfusionMatrix &other) {
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    for (std::size_t j = 0; j < kLabelCount; ++j) cells_[i][j] += other.cells_[i][j];
  }
  return *this;
}

std::int64_t RawConfusionMatrix::row_half_units(Label row) const {
  std::int64_t sum = 0;
  for (std::int64_t cell : cells_[LabelIndex(row)]) sum += cell;
  return sum;
}

std::int64_t RawConfusionMatrix::total_half_units() const {
  std::int64_t sum = 0;
  for (const auto &row : cells_) {
    for (std::int64_t cell : row) sum += cell;
  }
  return sum;
}

RawConfusionMatrix BuildConfusion(LabelView a, LabelView b) {
  RawConfusionMatrix raw;
  raw.Add(a, b);
  return raw;
}

NormalizedConfusionMatrix NormalizeConfusion(const RawConfusionMatrix &raw) {
  std::array<std::int64_t, kLabelCount> row_sums{};
  for (Label label : kAllLabels) row_sums[LabelIndex(label)] = raw.row_half_units(label);

  NormalizedConfusionMatrix::Cells cells{};
  for (std::size_t i = 0; i < kLabelCount; ++i) {
    for (std::size_t j = 0; j < kLabelCount; ++j) {
      // Column sums equal row sums by symmetry. The half-unit scale cancels.
      const std::int64_t denominator = row_sums[i] + row_sums[j];
      if (denominator == 0) continue;
      cells[i][j] = 2.0 * static_cast<double>(raw.cells()[i][j]) /
                    static_cast<double>(denominator);
    }
  }
  return NormalizedConfusionMatrix(cells);
}

std::string ConfusionCsv(const NormalizedConfusionMatrix &matrix) {
  std::string out;
  for (Label label : kAllLabels) {
    out += ',';
    out += LabelDisplayName(label);
  }
  out += '\n';
  char buffer[32];
  for (Label row : kAllLabels) {
    out += LabelDisplayName(row);
    for (Label col : kAllLabels) {
      std::snprintf(buffer, sizeof(buffer), ",%.2f", matrix.at(row, col));
      out += buffer;
    }
    out += '\n';
  }
  return out;
}

AgreementReport CohenKappa(LabelView a, LabelView b) {
  CheckSameLength(a, b);
  if (a.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "kappa needs at least one sentence");
  }
  std::array<std::uint64_t, kLabelCount> marginal_a{};
  std::array<std::uint64_t, kLabelCount> marginal_b{};
  std::uint64_t matches = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginal_a[LabelIndex(a[i])];
    ++marginal_b[LabelIndex(b[i])];
    if (a[i] == b[i]) ++matches;
  }
  std::uint64_t chance = 0;
  for (std::size_t k = 0; k < kLabelCount; ++k) chance += marginal_a[k] * marginal_b[k];

  const auto n = static_cast<double>(a.size());
  AgreementReport report;
  report.sentence_count = a.size();
  report.observed_agreement = static_cast<double>(matches) / n;
  report.expected_agreement = static_cast<double>(chance) / (n * n);
  if (matches == a.size()) {
    report.kappa = 1.0;
  } else {
    report.kappa = (report.observed_agreement - report.expected_agreement) /
                   (1.0 - report.expected_agreement);
  }
  return report;
}

MergeMap::MergeMap(const Table &table) : table_(table) {
  if (table_[LabelIndex(Label::kUnlabeled)] != Label::kUnlabeled) {
    throw Error(ErrorKind::kInvalidArgument, "a merge map must keep Unlabeled");
  }
}

MergeMap MergeMap::Identity() { return MergeMap(kAllLabels); }

MergeMap MergeMap::EndingsMerged() {
  Table table = kAllLabels;
  table[LabelIndex(Label::kEvaluation)] = Label::kResolution;
  table[LabelIndex(Label::kAftermath)] = Label::kResolution;
  table[LabelIndex(Label::kMinorResolution)] = Label::kUnlabeled;
  table[LabelIndex(Label::kReturnOfMre)] = Label::kUnlabeled;
  return MergeMap(table);
}

std::vector<Label> MergeMap::Codomain() const {
  std::vector<Label> out;
  for (Label label : kAllLabels) {
    if (std::find(table_.begin(), table_.end(), label) != table_.end()) {
      out.push_back(label);
    }
  }
  return out;
}

std::optional<MergeMap> MergePreset(std::string_view name) {
  if (name == "paper" || name == "endings") return MergeMap::EndingsMerged();
  if (name == "identity" || name == "none") return MergeMap::Identity();
  return std::nullopt;
}

LabelSequence ApplyMerge(LabelView labels, const MergeMap &map) {
  LabelSequence out;
  out.reserve(labels.size());
  for (Label label : labels) out.push_back(map(label));
  return out;
}

CoAnnotation CoAnnotated(std::span<const Annotation> annotations,
                         std::string_view annotator_a,
                         std::string_view annotator_b) {
  const auto latest = LatestFinal(annotations);
  CoAnnotation co;
  // `latest` is ordered by story id, so stories come out sorted.
  for (const auto &[key, annotation] : latest) {
    if (key.second != annotator_a) continue;
    auto other = latest.find(AnnotationKey{key.first, std::string(annotator_b)});
    if (other == latest.end()) continue;
    const LabelSequence &a = annotation->labels();
    const LabelSequence &b = other->second->labels();
    if (a.size() != b.size()) {
      throw Error(ErrorKind::kValidation,
                  "annotations of story '" + key.first +
                      "' disagree on the sentence count");
    }
    co.story_ids.push_back(key.first);
    co.a.insert(co.a.end(), a.begin(), a.end());
    co.b.insert(co.b.end(), b.begin(), b.end());
  }
  return co;
}

std::vector<PairReport> PairwiseReport(std::span<const Annotation> annotations,
                                       std::span<const AnnotatorPair> pairs,
                                       const MergeMap *merge) {
  std::vector<PairReport> reports;
  reports.reserve(pairs.size());
  for (const AnnotatorPair &pair : pairs) {
    const CoAnnotation co = CoAnnotated(annotations, pair.a, pair.b);
    if (co.story_ids.empty()) {
      throw Error(ErrorKind::kNotFound, "annotators '" + pair.a + "' and '" +
                                            pair.b +
                                            "' share no finalized story");
    }
    PairReport report;
    report.story_count = co.story_ids.size();
    report.raw = Kappa(co, pair, nullptr);
    if (merge) report.merged = Kappa(co, pair, merge);
    reports.push_back(std::move(report));
  }
  return reports;
}

std::vector<AnnotatorPair> OverlappingPairs(std::span<const Annotation> annotations) {
  const auto latest = LatestFinal(annotations);
  std::map<std::string, std::set<std::string>> by_story;
  for (const auto &[key, annotation] : latest) by_story[key.first].insert(key.second);

  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto &[story, annotators] : by_story) {
    for (auto i = annotators.begin(); i != annotators.end(); ++i) {
      for (auto j = std::next(i); j != annotators.end(); ++j) pairs.emplace(*i, *j);
    }
  }
  std::vector<AnnotatorPair> out;
  for (const auto &[a, b] : pairs) out.push_back({a, b});
  return out;
}

RawConfusionMatrix PairwiseConfusion(std::span<const Annotation> annotations,
                                     std::span<const AnnotatorPair> pairs,
                                     const MergeMap *merge) {
  RawConfusionMatrix raw;
  for (const AnnotatorPair &pair : pairs) {
    const CoAnnotation co = CoAnnotated(annotations, pair.a, pair.b);
    if (merge) {
      raw.Add(ApplyMerge(co.a, *merge), ApplyMerge(co.b, *merge));
    } else {
      raw.Add(co.a, co.b);
    }
  }
  return raw;
}

}  // namespace storyarc
