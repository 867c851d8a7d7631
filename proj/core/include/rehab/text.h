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

// Small text and randomness helpers shared by every module.
//
// In memory, all offsets are UTF-8 byte offsets. Files exchanged with other
// tools (sections, sequences, gold, spans) carry offsets counted in Unicode
// scalar values; the conversion happens at the serialization boundary with
// ByteToChar/CharToByte.

#ifndef REHAB_TEXT_H_
#define REHAB_TEXT_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rehab {

// Number of Unicode scalar values in a UTF-8 string. Malformed bytes count
// as one character each.
std::size_t Utf8Length(std::string_view text);

// Converts a byte offset (which must fall on a character boundary) into a
// character offset.
std::size_t ByteToChar(std::string_view text, std::size_t byte_offset);

// Converts a character offset into a byte offset. Throws ValidationError
// when the offset is past the end of the text.
std::size_t CharToByte(std::string_view text, std::size_t char_offset);

std::string ToLowerAscii(std::string_view text);
std::string_view TrimView(std::string_view text);

inline bool IsAsciiAlnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}
inline bool IsAsciiAlpha(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

// Occurrence test used for category keywords: case-insensitive, and the
// match may not be glued to another letter on either side. Digits are
// allowed as neighbours so that "x" matches inside "2x10".
bool ContainsKeyword(std::string_view lowered_text,
                     std::string_view lowered_keyword);

// 64-bit FNV-1a. Stable across platforms; used to derive per-item seeds.
std::uint64_t Fnv1a64(std::string_view data,
                      std::uint64_t basis = 1469598103934665603ULL);

// Seeded generator with platform-independent helpers. The standard
// distributions are implementation-defined, so sampling is done by hand
// on top of the raw 64-bit engine output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t Below(std::uint64_t n);
  // Uniform integer in [lo, hi].
  std::int64_t Between(std::int64_t lo, std::int64_t hi);
  // Uniform real in [0, 1).
  double Uniform();
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(Below(items.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

// Reads a whole file; throws NotFound if it cannot be opened.
std::string ReadFile(const std::string& path);

}  // namespace rehab

#endif  // REHAB_TEXT_H_
