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

#include "rehab/text.h"

#include <fstream>
#include <sstream>

#include "rehab/error.h"

namespace rehab {
namespace {

// Width of the UTF-8 sequence introduced by a lead byte; 1 for continuation
// or invalid bytes so that malformed input still advances.
std::size_t SequenceWidth(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

std::size_t Utf8Length(std::string_view text) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < text.size(); ++count) {
    i += SequenceWidth(static_cast<unsigned char>(text[i]));
  }
  return count;
}

std::size_t ByteToChar(std::string_view text, std::size_t byte_offset) {
  if (byte_offset > text.size()) byte_offset = text.size();
  return Utf8Length(text.substr(0, byte_offset));
}

std::size_t CharToByte(std::string_view text, std::size_t char_offset) {
  std::size_t i = 0;
  for (std::size_t c = 0; c < char_offset; ++c) {
    if (i >= text.size()) {
      throw ValidationError("character offset " + std::to_string(char_offset) +
                            " is past the end of a text of length " +
                            std::to_string(Utf8Length(text)));
    }
    i += SequenceWidth(static_cast<unsigned char>(text[i]));
  }
  return i > text.size() ? text.size() : i;
}

std::string ToLowerAscii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view TrimView(std::string_view text) {
  const char* ws = " \t\r\n\f\v";
  std::size_t b = text.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  std::size_t e = text.find_last_not_of(ws);
  return text.substr(b, e - b + 1);
}

bool ContainsKeyword(std::string_view text, std::string_view keyword) {
  if (keyword.empty()) return false;
  bool leading_alpha = IsAsciiAlpha(keyword.front());
  bool trailing_alpha = IsAsciiAlpha(keyword.back());
  for (std::size_t pos = text.find(keyword); pos != std::string_view::npos;
       pos = text.find(keyword, pos + 1)) {
    std::size_t end = pos + keyword.size();
    bool left_ok = !leading_alpha || pos == 0 || !IsAsciiAlpha(text[pos - 1]);
    bool right_ok =
        !trailing_alpha || end == text.size() || !IsAsciiAlpha(text[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

std::uint64_t Fnv1a64(std::string_view data, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t Rng::Below(std::uint64_t n) {
  // Rejection sampling removes modulo bias.
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Rng::Between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  Below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace rehab
