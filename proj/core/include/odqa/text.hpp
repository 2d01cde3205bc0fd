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

#ifndef ODQA_TEXT_HPP_
#define ODQA_TEXT_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace odqa::text {

// Placeholder substituted for the answer in a cloze question. The tokenizer
// keeps it intact as a single token.
inline constexpr std::string_view kMaskToken = "[MASK]";

// Half-open byte range [begin, end) into the text a token came from.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

// Half-open token range [start, end) into a TokenSeq.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  friend bool operator==(const Span&, const Span&) = default;
};

// Normalized word tokens plus, for each token, where it came from in the
// original text. Both vectors always have the same length.
struct TokenSeq {
  std::vector<std::string> tokens;
  std::vector<ByteRange> offsets;

  std::size_t size() const noexcept { return tokens.size(); }
  bool empty() const noexcept { return tokens.empty(); }
  friend bool operator==(const TokenSeq&, const TokenSeq&) = default;
};

// Lowercases, splits on word boundaries and drops punctuation-only tokens.
//
// Word characters are letters, digits, combining marks and underscores.
// Apostrophes and periods stay inside a token when they sit between two
// letters ("don't", "u.s"), and periods, commas and semicolons stay inside
// a token between two digits ("3.5", "1,000"). Every other character
// separates tokens. The literal "[MASK]" is always emitted verbatim as one
// token. Invalid UTF-8 bytes act as separators.
TokenSeq tokenize(std::string_view raw);

// Every contiguous token-exact occurrence of `answer` in `passage`,
// overlapping occurrences included, in ascending start order.
// Throws InputError when `answer` is empty.
std::vector<Span> contains_answer(std::span<const std::string> passage,
                                  std::span<const std::string> answer);

struct ContextNgrams {
  std::vector<std::string> left;
  std::vector<std::string> right;

  friend bool operator==(const ContextNgrams&, const ContextNgrams&) = default;
};

// Up to n tokens immediately before and after `span`. Throws InputError
// when n is zero or the span is empty or out of range.
ContextNgrams context_ngrams(std::span<const std::string> seq, Span span,
                             std::size_t n);

// Answer canonicalization used for exact-match scoring: lowercase, delete
// punctuation, drop the standalone articles "a", "an" and "the", collapse
// whitespace runs and trim. Idempotent.
std::string em_canonicalize(std::string_view answer);

// Lowercase mapping applied by tokenize() and em_canonicalize().
std::string to_lower(std::string_view raw);

// Number of code points in a UTF-8 string. Invalid bytes count as one each.
std::size_t codepoint_count(std::string_view utf8);

// Byte offset of code point `index`; index == codepoint_count() maps to
// utf8.size(). Returns nullopt past the end.
std::optional<std::size_t> codepoint_to_byte(std::string_view utf8,
                                             std::size_t index);

}  // namespace odqa::text

#endif  // ODQA_TEXT_HPP_
