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

#include <array>
#include <cctype>
#include <vector>
#include <string>

#include "storyarc/errors.h"
#include "storyarc/schema.h"

namespace storyarc {

namespace {

constexpr std::size_t kTheoryCount = 5;

// First alias is the printed term; the rest are accepted spellings.
struct Cell {
  std::vector<std::string_view> aliases;

  bool blank() const { return aliases.empty(); }
  std::string_view term() const { return aliases.front(); }
};

using Row = std::array<Cell, kTheoryCount>;

// Columns: Freytag, Labov & Waletzky, Prince, Todorov, ours.
const std::array<Row, 5> &Table() {
  static const std::array<Row, 5> table = {{
      {{{{"Exposition"}},
        {{"Orientation"}},
        {{"Starting State"}},
        {{"Old Equilibrium"}},
        {{"Orientation", "orientation"}}}},
      {{{{"Rising Action"}},
        {{"Complicating Actions", "Complicating Action"}},
        {{}},
        {{"Disruption"}},
        {{"Complicating Actions", "Complicating Action",
          "complicating_action"}}}},
      {{{{"Climax"}},
        {{"Most Reportable Event", "MRE"}},
        {{"State-changing Event"}},
        {{"Efforts to repair the disruption"}},
        {{"Most Reportable Event", "MRE", "most_reportable_event"}}}},
      {{{{"Falling Action"}},
        {{"Resolution"}},
        {{"Ending State"}},
        {{}},
        {{"(Minor) Resolution", "Resolution", "Minor Resolution",
          "resolution", "minor_resolution"}}}},
      {{{{"Dénouement", "Denouement"}},
        {{"Coda"}},
        {{}},
        {{"New Equilibrium"}},
        {{}}}},
  }};
  return table;
}

std::string Fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

bool Matches(const Cell &cell, std::string_view term) {
  const std::string folded = Fold(term);
  for (std::string_view alias : cell.aliases) {
    if (Fold(alias) == folded) return true;
  }
  return false;
}

}  // namespace

std::string_view TheoryName(Theory theory) {
  switch (theory) {
    case Theory::kFreytag: return "freytag";
    case Theory::kLabovWaletzky: return "labov_waletzky";
    case Theory::kPrince: return "prince";
    case Theory::kTodorov: return "todorov";
    case Theory::kOurs: return "ours";
  }
  return "?";
}

Theory ParseTheory(std::string_view name) {
  for (Theory theory : {Theory::kFreytag, Theory::kLabovWaletzky,
                        Theory::kPrince, Theory::kTodorov, Theory::kOurs}) {
    if (TheoryName(theory) == name) return theory;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown theory '" + std::string(name) + "'");
}

std::optional<std::string> Crosswalk(std::string_view term, Theory from,
                                     Theory to) {
  const auto from_col = static_cast<std::size_t>(from);
  const auto to_col = static_cast<std::size_t>(to);
  for (const Row &row : Table()) {
    if (!Matches(row[from_col], term)) continue;
    if (row[to_col].blank()) return std::nullopt;
    return std::string(row[to_col].term());
  }
  throw Error(ErrorKind::kNotFound, "'" + std::string(term) +
                                        "' is not a " +
                                        std::string(TheoryName(from)) +
                                        " term");
}

}  // namespace storyarc
