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

#include "storyarc/tension.h"

#include <algorithm>
#include <charconv>
#include <optional>

#include "storyarc/errors.h"
#include "storyarc/schema.h"

namespace storyarc {

namespace {

std::string FormatNumber(double value) {
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

std::string ExportCsv(const TensionCurve &curve) {
  std::string out = "sentence_index,label,tension\n";
  for (const TensionPoint &point : curve.points) {
    out += std::to_string(point.sentence_index);
    out += ',';
    out += LabelName(point.label);
    out += ',';
    out += FormatNumber(point.tension);
    out += '\n';
  }
  return out;
}

std::string ExportSvg(const TensionCurve &curve) {
  constexpr double kMargin = 40.0;
  constexpr double kStep = 40.0;
  constexpr double kPlotHeight = 200.0;

  const std::size_t n = curve.points.size();
  const double width = 2 * kMargin + kStep * static_cast<double>(std::max<std::size_t>(n, 2) - 1);
  const double height = kPlotHeight + 2 * kMargin;
  double top = 1.0;
  for (const TensionPoint &point : curve.points) top = std::max(top, point.tension);

  auto x_of = [&](std::size_t i) { return kMargin + kStep * static_cast<double>(i); };
  auto y_of = [&](double t) { return kMargin + kPlotHeight * (1.0 - t / top); };
  const double axis_y = y_of(0.0);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + FormatNumber(width) +
         "\" height=\"" + FormatNumber(height) + "\" viewBox=\"0 0 " +
         FormatNumber(width) + " " + FormatNumber(height) + "\">\n";
  out += "  <title>Dramatic tension by sentence</title>\n";
  out += "  <line class=\"x-axis\" x1=\"" + FormatNumber(kMargin) + "\" y1=\"" +
         FormatNumber(axis_y) + "\" x2=\"" + FormatNumber(width - kMargin) +
         "\" y2=\"" + FormatNumber(axis_y) + "\" stroke=\"black\"/>\n";
  out += "  <g class=\"ticks\" font-size=\"10\" text-anchor=\"middle\">\n";
  for (std::size_t i = 0; i < n; ++i) {
    const std::string x = FormatNumber(x_of(i));
    out += "    <line x1=\"" + x + "\" y1=\"" + FormatNumber(axis_y) + "\" x2=\"" + x +
           "\" y2=\"" + FormatNumber(axis_y + 5) + "\" stroke=\"black\"/>\n";
    out += "    <text x=\"" + x + "\" y=\"" + FormatNumber(axis_y + 18) + "\">" +
           std::to_string(curve.points[i].sentence_index) + "</text>\n";
  }
  out += "  </g>\n";
  out += "  <polyline class=\"tension\" fill=\"none\" stroke=\"steelblue\" "
         "stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += FormatNumber(x_of(i)) + "," + FormatNumber(y_of(curve.points[i].tension));
  }
  out += "\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace

std::vector<double> TensionCurve::values() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const TensionPoint &point : points) out.push_back(point.tension);
  return out;
}

TensionCurve ComputeTension(LabelView labels, const TensionParams &params) {
  TensionCurve curve;
  double value = 0.0;
  double running_max = 0.0;
  std::optional<double> peak;

  for (std::size_t i = 0; i < labels.size(); ++i) {
    const Label label = labels[i];
    if (FrameClassOf(label) == FrameClass::kOutOfFrame) continue;

    switch (label) {
      case Label::kOrientation:
        value = 0.0;
        break;
      case Label::kComplicatingAction:
        if (!peak) {
          value += params.action_step;
        } else {
          if (value >= *peak) value = *peak - params.return_offset;
          value += (*peak - value) / 2.0;
        }
        break;
      case Label::kMinorResolution:
        value = std::max(value - params.minor_resolution_drop, 0.0);
        break;
      case Label::kMostReportableEvent:
        if (i == 0 || labels[i - 1] != Label::kMostReportableEvent) {
          peak = running_max + params.mre_margin;
        }
        value = *peak;
        break;
      case Label::kResolution:
        value = params.resolution_level;
        break;
      case Label::kAftermath:
        value = params.aftermath_level;
        break;
      case Label::kReturnOfMre:
        value = peak ? *peak - params.return_offset : running_max;
        break;
      case Label::kUnlabeled:
        if (peak && value >= *peak) value = *peak - params.return_offset;
        break;
      default:
        break;
    }
    curve.points.push_back({i, label, value});
    running_max = std::max(running_max, value);
  }
  return curve;
}

CurveFormat ParseCurveFormat(std::string_view name) {
  if (name == "csv") return CurveFormat::kCsv;
  if (name == "svg") return CurveFormat::kSvg;
  throw Error(ErrorKind::kInvalidArgument,
              "unsupported curve format '" + std::string(name) + "'");
}

std::string ExportCurve(const TensionCurve &curve, CurveFormat format) {
  return format == CurveFormat::kSvg ? ExportSvg(curve) : ExportCsv(curve);
}

}  // namespace storyarc
