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

#ifndef STORYARC_AGREEMENT_H_
#define STORYARC_AGREEMENT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "storyarc/corpus.h"
#include "storyarc/label.h"

namespace storyarc {

// Symmetric co-annotation counts over the canonical label axes. A sentence
// both annotators put in category i adds 1 to (i, i); a split i/j decision
// adds 0.5 to both (i, j) and (j, i). Counts are held as integer half-units
// so accumulation is exact.
class RawConfusionMatrix {
 public:
  using Cells = std::array<std::array<std::int64_t, kLabelCount>, kLabelCount>;

  RawConfusionMatrix() = default;

  // Throws Error(kInvalidArgument) on a length mismatch.
  void Add(LabelView a, LabelView b);
  RawConfusionMatrix &operator+=(const RawConfusionMatrix &other);

  std::int64_t half_units(Label row, Label col) const {
    return cells_[LabelIndex(row)][LabelIndex(col)];
  }
  double count(Label row, Label col) const {
    return static_cast<double>(half_units(row, col)) / 2.0;
  }
  std::int64_t row_half_units(Label row) const;
  std::int64_t total_half_units() const;
  // Number of co-annotated sentences.
  double total() const { return static_cast<double>(total_half_units()) / 2.0; }

  const Cells &cells() const { return cells_; }

  bool operator==(const RawConfusionMatrix &) const = default;

 private:
  Cells cells_{};
};

RawConfusionMatrix BuildConfusion(LabelView a, LabelView b);

// n_ij = 2 c_ij / (sum_k c_ik + sum_k c_kj); zero where the denominator is 0.
class NormalizedConfusionMatrix {
 public:
  using Cells = std::array<std::array<double, kLabelCount>, kLabelCount>;

  explicit NormalizedConfusionMatrix(const Cells &cells) : cells_(cells) {}

  double at(Label row, Label col) const {
    return cells_[LabelIndex(row)][LabelIndex(col)];
  }
  const Cells &cells() const { return cells_; }

 private:
  Cells cells_;
};

NormalizedConfusionMatrix NormalizeConfusion(const RawConfusionMatrix &raw);

// 12x12 CSV: a header row and column of display names in canonical order,
// cells rendered with two decimals.
std::string ConfusionCsv(const NormalizedConfusionMatrix &matrix);

struct AgreementReport {
  std::string annotator_a;
  std::string annotator_b;
  std::size_t sentence_count = 0;
  double observed_agreement = 0.0;
  double expected_agreement = 0.0;
  double kappa = 0.0;
};

// Cohen's kappa at sentence level, Unlabeled counted as an ordinary
// category. Perfect observed agreement yields kappa = 1 even when chance
// agreement is also 1. Throws Error(kInvalidArgument) on empty or
// mismatched inputs.
AgreementReport CohenKappa(LabelView a, LabelView b);

// Total map from the eleven labels onto a (possibly) smaller set, expressed
// as a representative label per source label. Unlabeled always maps to
// itself.
class MergeMap {
 public:
  using Table = std::array<Label, kLabelCount>;

  explicit MergeMap(const Table &table);

  static MergeMap Identity();
  // Resolution, Evaluation and Aftermath collapse into one category;
  // Minor Resolution and Return of MRE become Unlabeled.
  static MergeMap EndingsMerged();

  Label operator()(Label label) const { return table_[LabelIndex(label)]; }
  const Table &table() const { return table_; }
  // Distinct images in canonical order.
  std::vector<Label> Codomain() const;

  bool operator==(const MergeMap &) const = default;

 private:
  Table table_;
};

// Named presets; "paper" and "endings" both name EndingsMerged().
std::optional<MergeMap> MergePreset(std::string_view name);

LabelSequence ApplyMerge(LabelView labels, const MergeMap &map);

struct AnnotatorPair {
  std::string a;
  std::string b;

  bool operator==(const AnnotatorPair &) const = default;
};

// Concatenated label vectors over every story both annotators finalized,
// stories in id order. Only the highest-version final annotation of each
// (story, annotator) counts.
struct CoAnnotation {
  std::vector<std::string> story_ids;
  LabelSequence a;
  LabelSequence b;
};

CoAnnotation CoAnnotated(std::span<const Annotation> annotations,
                         std::string_view annotator_a,
                         std::string_view annotator_b);

struct PairReport {
  AgreementReport raw;
  std::optional<AgreementReport> merged;
  std::size_t story_count = 0;
};

// One report per requested pair. Throws Error(kNotFound) for a pair without
// co-annotated stories.
std::vector<PairReport> PairwiseReport(std::span<const Annotation> annotations,
                                       std::span<const AnnotatorPair> pairs,
                                       const MergeMap *merge = nullptr);

// Every unordered annotator pair (ids sorted) sharing at least one story.
std::vector<AnnotatorPair> OverlappingPairs(
    std::span<const Annotation> annotations);

// Raw counts summed over the co-annotated sentences of every pair.
RawConfusionMatrix PairwiseConfusion(std::span<const Annotation> annotations,
                                     std::span<const AnnotatorPair> pairs,
                                     const MergeMap *merge = nullptr);

}  // namespace storyarc

#endif  // STORYARC_AGREEMENT_H_
