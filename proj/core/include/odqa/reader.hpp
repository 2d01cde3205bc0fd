// Copyright 2026 The odqa Authors.
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

#ifndef ODQA_READER_HPP_
#define ODQA_READER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace odqa::reader {

// Longest candidate span, in tokens.
inline constexpr std::size_t kMaxSpanTokens = 5;

struct Candidate {
  std::string surface;         // earliest occurrence, original casing
  std::size_t frequency = 0;   // passages containing the span
  std::size_t best_rank = 0;   // 1-based rank of the first such passage
  std::size_t length = 0;      // tokens
  double score = 0.0;          // frequency + 1 / (best_rank + 1)
};

// Built-in English stopword list, sorted.
std::span<const std::string_view> stopwords();
bool is_stopword(std::string_view token);

// All candidate spans, best first. A span qualifies when it is 1 to 5
// tokens long, has at least one token outside the question and at least
// one non-stopword. Ties on score prefer the shorter span, then the
// earlier occurrence.
std::vector<Candidate> rank_candidates(std::string_view question,
                                       std::span<const std::string> passages);

// Surface of the best candidate, or "" when there is none.
std::string predict(std::string_view question, std::span<const std::string> passages);

}  // namespace odqa::reader

#endif  // ODQA_READER_HPP_
