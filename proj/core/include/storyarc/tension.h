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

#ifndef STORYARC_TENSION_H_
#define STORYARC_TENSION_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "storyarc/label.h"

namespace storyarc {

struct TensionPoint {
  std::size_t sentence_index = 0;
  Label label = Label::kUnlabeled;
  double tension = 0.0;

  bool operator==(const TensionPoint &) const = default;
};

// Out-of-frame sentences (Abstract, Evaluation, Direct Comment) emit no point.
struct TensionCurve {
  std::vector<TensionPoint> points;

  std::vector<double> values() const;
};

// The magnitudes only encode ordinal behaviour: a rise per complicating
// action, the MRE as peak, a slight dip on a minor resolution, a swift drop
// at resolution and a re-rise just short of the peak on a return.
struct TensionParams {
  double action_step = 1.0;
  double minor_resolution_drop = 0.5;
  double mre_margin = 2.0;
  double resolution_level = 1.0;
  double aftermath_level = 0.5;
  double return_offset = 0.5;
};

// Left-to-right pass with running value v (starting at 0) and running
// maximum M over emitted points:
//   Orientation         v = 0
//   Complicating Action v += action_step before the MRE; afterwards v moves
//                       halfway to the peak, starting from peak -
//                       return_offset when v is at the peak
//   Minor Resolution    v = max(v - minor_resolution_drop, 0)
//   MRE run             v = M + mre_margin, fixed at the start of the run
//   Resolution          v = resolution_level
//   Aftermath           v = aftermath_level
//   Return of MRE       v = peak - return_offset (M when no MRE precedes it)
//   Unlabeled           v unchanged, except that a value still at the peak
//                       after the MRE run settles to peak - return_offset
TensionCurve ComputeTension(LabelView labels, const TensionParams &params = {});

enum class CurveFormat { kCsv, kSvg };

// Throws Error(kInvalidArgument) for anything but "csv" or "svg".
CurveFormat ParseCurveFormat(std::string_view name);

std::string ExportCurve(const TensionCurve &curve, CurveFormat format);

}  // namespace storyarc

#endif  // STORYARC_TENSION_H_
