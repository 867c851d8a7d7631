// Copyright 2026 The rehab-extract Authors.
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

#include <cctype>
#include <cmath>
#include <string>

#include "rehab/error.h"
#include "rehab/ruletagger.h"

namespace rehab {
namespace {

const boost::regex& SetsRepsPattern() {
  static const boost::regex re(R"((\d+)\s*[xX]\s*(\d+))");
  return re;
}

const boost::regex& DurationPattern() {
  static const boost::regex re(
      R"((\d+(?:\.\d+)?)\s*(minutes?|mins?|'|seconds?|secs?|s\b|"))",
      boost::regex::perl | boost::regex::icase);
  return re;
}

std::int64_t FirstInteger(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && !(text[i] >= '0' && text[i] <= '9')) ++i;
  if (i == text.size()) {
    throw NoNumber("no number in span: '" + std::string(text) + "'");
  }
  std::int64_t v = 0;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
    v = v * 10 + (text[i] - '0');
  }
  return v;
}

}  // namespace

std::optional<std::pair<std::int64_t, std::int64_t>> ParseSetsReps(
    std::string_view text) {
  boost::cmatch m;
  if (!boost::regex_search(text.data(), text.data() + text.size(), m,
                           SetsRepsPattern())) {
    return std::nullopt;
  }
  return std::make_pair(std::stoll(m[1].str()), std::stoll(m[2].str()));
}

NumericValue NormalizeNumeric(std::string_view text, NumericKind kind) {
  NumericValue out{kind, 0};
  switch (kind) {
    case NumericKind::kDuration: {
      boost::cmatch m;
      if (boost::regex_search(text.data(), text.data() + text.size(), m,
                              DurationPattern())) {
        double amount = std::stod(m[1].str());
        char unit = static_cast<char>(std::tolower(static_cast<unsigned char>(m[2].str()[0])));
        bool minutes = unit == 'm' || unit == '\'';
        out.value = std::llround(minutes ? amount * 60.0 : amount);
      } else {
        out.value = FirstInteger(text);
      }
      break;
    }
    case NumericKind::kSets:
    case NumericKind::kReps:
      if (auto sr = ParseSetsReps(text)) {
        out.value = kind == NumericKind::kSets ? sr->first : sr->second;
      } else {
        out.value = FirstInteger(text);
      }
      break;
  }
  return out;
}

}  // namespace rehab
