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

#include "odqa/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>

#include "odqa/error.hpp"

namespace odqa::text {
namespace {

struct Decoded {
  char32_t cp = 0;
  std::size_t length = 1;
  bool valid = false;
};

Decoded decode(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1, true};

  std::size_t length = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if ((b0 & 0xE0) == 0xC0) {
    length = 2, cp = b0 & 0x1F, min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    length = 3, cp = b0 & 0x0F, min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    length = 4, cp = b0 & 0x07, min = 0x10000;
  } else {
    return {};
  }
  if (i + length > s.size()) return {};
  for (std::size_t k = 1; k < length; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {};
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return {};
  return {cp, length, true};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Coarse word-break classes, loosely following UAX #29.
enum class CharClass {
  kLetter,
  kDigit,
  kExtend,          // combining marks and format characters
  kConnector,       // underscore and friends: joins words, but is punctuation
  kMidLetter,       // joins letter-letter
  kMidNum,          // joins digit-digit
  kMidNumLet,       // joins letter-letter or digit-digit
  kSpace,
  kPunct,           // any other separator
};

struct Range {
  char32_t lo;
  char32_t hi;
};

// Punctuation scattered through otherwise alphabetic blocks U+0530..U+1FFF.
constexpr std::array<Range, 26> kScriptPunct = {{
    {0x055A, 0x055F}, {0x0589, 0x058A}, {0x05BE, 0x05BE}, {0x05C0, 0x05C0},
    {0x05C3, 0x05C3}, {0x05C6, 0x05C6}, {0x05F3, 0x05F4}, {0x0609, 0x060D},
    {0x061B, 0x061F}, {0x066A, 0x066D}, {0x06D4, 0x06D4}, {0x0964, 0x0965},
    {0x0970, 0x0970}, {0x0E4F, 0x0E4F}, {0x0E5A, 0x0E5B}, {0x10FB, 0x10FB},
    {0x1360, 0x1368}, {0x166D, 0x166E}, {0x16EB, 0x16ED}, {0x17D4, 0x17DA},
    {0x1800, 0x180A}, {0x1944, 0x1945}, {0x1AA0, 0x1AAD}, {0x1B5A, 0x1B60},
    {0x1FBD, 0x1FBD}, {0x1FBF, 0x1FC1},
}};

constexpr std::array<Range, 5> kScriptDigits = {{
    {0x0660, 0x0669}, {0x06F0, 0x06F9}, {0x0966, 0x096F}, {0x09E6, 0x09EF},
    {0x0E50, 0x0E59},
}};

bool in_ranges(char32_t cp, std::span<const Range> ranges) {
  return std::any_of(ranges.begin(), ranges.end(),
                     [cp](const Range& r) { return cp >= r.lo && cp <= r.hi; });
}

CharClass classify_ascii(char32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) {
    return CharClass::kLetter;
  }
  if (cp >= '0' && cp <= '9') return CharClass::kDigit;
  switch (cp) {
    case ' ': case '\t': case '\n': case '\v': case '\f': case '\r':
      return CharClass::kSpace;
    case '_':
      return CharClass::kConnector;
    case '\'': case '.':
      return CharClass::kMidNumLet;
    case ':':
      return CharClass::kMidLetter;
    case ',': case ';':
      return CharClass::kMidNum;
    default:
      return CharClass::kPunct;
  }
}

CharClass classify_general_punctuation(char32_t cp) {
  if (cp <= 0x200A || cp == 0x200B || cp == 0x2028 || cp == 0x2029 ||
      cp == 0x202F || cp == 0x205F) {
    return CharClass::kSpace;
  }
  if (cp == 0x200C || cp == 0x200D || (cp >= 0x2060 && cp <= 0x206F)) {
    return CharClass::kExtend;
  }
  if (cp == 0x2018 || cp == 0x2019 || cp == 0x2024) return CharClass::kMidNumLet;
  if (cp == 0x2027) return CharClass::kMidLetter;
  if (cp == 0x203F || cp == 0x2040 || cp == 0x2054) return CharClass::kConnector;
  return CharClass::kPunct;
}

CharClass classify_halfwidth_fullwidth(char32_t cp) {
  if (cp >= 0xFF10 && cp <= 0xFF19) return CharClass::kDigit;
  if ((cp >= 0xFF21 && cp <= 0xFF3A) || (cp >= 0xFF41 && cp <= 0xFF5A) ||
      (cp >= 0xFF66 && cp <= 0xFFDF)) {
    return CharClass::kLetter;
  }
  switch (cp) {
    case 0xFF07: case 0xFF0E: return CharClass::kMidNumLet;
    case 0xFF0C: case 0xFF1B: return CharClass::kMidNum;
    case 0xFF1A: return CharClass::kMidLetter;
    case 0xFF3F: return CharClass::kConnector;
    default: return CharClass::kPunct;
  }
}

CharClass classify(char32_t cp) {
  if (cp < 0x80) return classify_ascii(cp);
  if (cp == 0x85 || cp == 0xA0 || cp == 0x1680 || cp == 0x3000) {
    return CharClass::kSpace;
  }
  if (cp < 0xA0) return CharClass::kPunct;
  if (cp < 0xC0) {
    if (cp == 0xAA || cp == 0xB5 || cp == 0xBA) return CharClass::kLetter;
    if (cp == 0xB7) return CharClass::kMidLetter;
    if (cp == 0xAD) return CharClass::kExtend;
    return CharClass::kPunct;
  }
  if (cp == 0xD7 || cp == 0xF7) return CharClass::kPunct;
  if (cp < 0x300) return CharClass::kLetter;
  if (cp < 0x370) return CharClass::kExtend;
  if (cp < 0x530) {
    if (cp == 0x37E || cp == 0x387) return CharClass::kPunct;
    if (cp >= 0x483 && cp <= 0x489) return CharClass::kExtend;
    return CharClass::kLetter;
  }
  if (cp < 0x2000) {
    if (in_ranges(cp, kScriptPunct)) return CharClass::kPunct;
    if (in_ranges(cp, kScriptDigits)) return CharClass::kDigit;
    if ((cp >= 0x1AB0 && cp <= 0x1AFF) || (cp >= 0x1DC0 && cp <= 0x1DFF)) {
      return CharClass::kExtend;
    }
    return CharClass::kLetter;
  }
  if (cp < 0x2070) return classify_general_punctuation(cp);
  if (cp < 0x20A0) return CharClass::kLetter;  // super- and subscripts
  if (cp < 0x20D0) return CharClass::kPunct;   // currency
  if (cp < 0x2100) return CharClass::kExtend;
  if (cp < 0x2190) return CharClass::kLetter;  // letterlike, number forms
  if (cp < 0x2C00) return CharClass::kPunct;   // arrows, math, shapes
  if (cp < 0x2E00) return CharClass::kLetter;
  if (cp < 0x2E80) return CharClass::kPunct;
  if (cp < 0x3000) return CharClass::kLetter;
  if (cp < 0x3040) {
    if ((cp >= 0x3001 && cp <= 0x3004) || (cp >= 0x3008 && cp <= 0x3020) ||
        cp == 0x3030 || cp >= 0x303D) {
      return CharClass::kPunct;
    }
    if (cp >= 0x302A && cp <= 0x302F) return CharClass::kExtend;
    return CharClass::kLetter;
  }
  if (cp < 0xE000) return CharClass::kLetter;
  if (cp < 0xF900) return CharClass::kPunct;  // private use
  if (cp < 0xFE00) {
    return (cp == 0xFD3E || cp == 0xFD3F) ? CharClass::kPunct
                                          : CharClass::kLetter;
  }
  if (cp < 0xFE10) return CharClass::kExtend;
  if (cp < 0xFE20) return CharClass::kPunct;
  if (cp < 0xFE30) return CharClass::kExtend;
  if (cp < 0xFE50) {
    if (cp == 0xFE33 || cp == 0xFE34 || cp >= 0xFE4D) return CharClass::kConnector;
    return CharClass::kPunct;
  }
  if (cp < 0xFE70) {
    if (cp == 0xFE50 || cp == 0xFE54) return CharClass::kMidNum;
    if (cp == 0xFE52) return CharClass::kMidNumLet;
    if (cp == 0xFE55) return CharClass::kMidLetter;
    return CharClass::kPunct;
  }
  if (cp < 0xFEFF) return CharClass::kLetter;
  if (cp == 0xFEFF) return CharClass::kExtend;
  if (cp < 0xFF00) return CharClass::kPunct;
  if (cp < 0xFFF0) return classify_halfwidth_fullwidth(cp);
  if (cp < 0x10000) return CharClass::kPunct;
  if (cp < 0x1F000) return CharClass::kLetter;
  if (cp < 0x20000) return CharClass::kPunct;  // emoji, symbols
  if (cp < 0x40000) return CharClass::kLetter;
  if (cp >= 0xE0000 && cp <= 0xE01EF) return CharClass::kExtend;
  return CharClass::kPunct;
}

bool is_word(CharClass c) {
  return c == CharClass::kLetter || c == CharClass::kDigit ||
         c == CharClass::kExtend || c == CharClass::kConnector;
}

bool is_punct_like(CharClass c) {
  return c == CharClass::kPunct || c == CharClass::kConnector ||
         c == CharClass::kMidLetter || c == CharClass::kMidNum ||
         c == CharClass::kMidNumLet;
}

// True when `joiner` may sit between a word character of class `before`
// and one of class `after` without breaking the token.
bool joins(CharClass joiner, CharClass before, CharClass after) {
  const bool letters = before == CharClass::kLetter && after == CharClass::kLetter;
  const bool digits = before == CharClass::kDigit && after == CharClass::kDigit;
  switch (joiner) {
    case CharClass::kMidLetter: return letters;
    case CharClass::kMidNum: return digits;
    case CharClass::kMidNumLet: return letters || digits;
    default: return false;
  }
}

char32_t lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x130) return 'i';
    if (cp == 0x178) return 0xFF;
    if ((cp <= 0x137 || (cp >= 0x14A && cp <= 0x177)) && cp % 2 == 0) return cp + 1;
    if (((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E)) &&
        cp % 2 == 1) {
      return cp + 1;
    }
    return cp;
  }
  if (cp >= 0x370 && cp <= 0x3FF) {
    if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
    if (cp == 0x386) return 0x3AC;
    if (cp >= 0x388 && cp <= 0x38A) return cp + 0x25;
    if (cp == 0x38C) return 0x3CC;
    if (cp == 0x38E || cp == 0x38F) return cp + 0x3F;
    return cp;
  }
  if (cp >= 0x400 && cp <= 0x52F) {
    if (cp <= 0x40F) return cp + 0x50;
    if (cp <= 0x42F) return cp + 0x20;
    if (cp == 0x4C0) return 0x4CF;
    if (((cp >= 0x460 && cp <= 0x481) || (cp >= 0x48A && cp <= 0x4BF) ||
         cp >= 0x4D0) &&
        cp % 2 == 0) {
      return cp + 1;
    }
    if (cp >= 0x4C1 && cp <= 0x4CE && cp % 2 == 1) return cp + 1;
    return cp;
  }
  if (cp >= 0x531 && cp <= 0x556) return cp + 0x30;
  if (cp >= 0x1E00 && cp <= 0x1EFF) {
    if (cp == 0x1E9E) return 0xDF;
    if ((cp <= 0x1E95 || cp >= 0x1EA0) && cp % 2 == 0) return cp + 1;
    return cp;
  }
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;
  return cp;
}

}  // namespace

std::string to_lower(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    const Decoded d = decode(raw, i);
    if (d.valid) {
      append_utf8(out, lower(d.cp));
    } else {
      out.push_back(raw[i]);
    }
    i += d.length;
  }
  return out;
}

TokenSeq tokenize(std::string_view raw) {
  TokenSeq seq;
  std::string current;
  std::size_t start = 0;
  std::size_t end = 0;
  bool has_alnum = false;
  CharClass last = CharClass::kPunct;

  auto flush = [&] {
    if (!current.empty() && has_alnum) {
      seq.tokens.push_back(std::move(current));
      seq.offsets.push_back({start, end});
    }
    current.clear();
    has_alnum = false;
  };

  for (std::size_t i = 0; i < raw.size();) {
    if (raw.compare(i, kMaskToken.size(), kMaskToken) == 0) {
      flush();
      seq.tokens.emplace_back(kMaskToken);
      seq.offsets.push_back({i, i + kMaskToken.size()});
      i += kMaskToken.size();
      continue;
    }
    const Decoded d = decode(raw, i);
    const CharClass cls = d.valid ? classify(d.cp) : CharClass::kPunct;

    if (is_word(cls)) {
      if (current.empty()) start = i;
      append_utf8(current, lower(d.cp));
      end = i + d.length;
      if (cls == CharClass::kLetter || cls == CharClass::kDigit) {
        has_alnum = true;
        last = cls;
      } else if (cls == CharClass::kConnector) {
        last = cls;
      }
      i += d.length;
      continue;
    }

    if (!current.empty() && i + d.length < raw.size() &&
        raw.compare(i + d.length, kMaskToken.size(), kMaskToken) != 0) {
      const Decoded next = decode(raw, i + d.length);
      if (next.valid && joins(cls, last, classify(next.cp))) {
        append_utf8(current, d.cp);
        i += d.length;
        continue;
      }
    }
    flush();
    i += d.length;
  }
  flush();
  return seq;
}

std::vector<Span> contains_answer(std::span<const std::string> passage,
                                  std::span<const std::string> answer) {
  if (answer.empty()) throw InputError("contains_answer: empty answer");
  std::vector<Span> hits;
  if (answer.size() > passage.size()) return hits;
  for (std::size_t i = 0; i + answer.size() <= passage.size(); ++i) {
    if (std::equal(answer.begin(), answer.end(), passage.begin() + i)) {
      hits.push_back({i, i + answer.size()});
    }
  }
  return hits;
}

ContextNgrams context_ngrams(std::span<const std::string> seq, Span span,
                             std::size_t n) {
  if (n == 0) throw InputError("context_ngrams: window size must be >= 1");
  if (span.start >= span.end || span.end > seq.size()) {
    throw InputError("context_ngrams: span [" + std::to_string(span.start) +
                     ", " + std::to_string(span.end) +
                     ") invalid for sequence of length " +
                     std::to_string(seq.size()));
  }
  const std::size_t left_begin = span.start > n ? span.start - n : 0;
  const std::size_t right_end = std::min(seq.size(), span.end + n);
  return {
      {seq.begin() + left_begin, seq.begin() + span.start},
      {seq.begin() + span.end, seq.begin() + right_end},
  };
}

std::string em_canonicalize(std::string_view answer) {
  std::string stripped;
  stripped.reserve(answer.size());
  for (std::size_t i = 0; i < answer.size();) {
    const Decoded d = decode(answer, i);
    i += d.length;
    if (!d.valid) continue;
    const CharClass cls = classify(d.cp);
    if (cls == CharClass::kSpace) {
      stripped.push_back(' ');
    } else if (!is_punct_like(cls)) {
      append_utf8(stripped, lower(d.cp));
    }
  }

  std::string out;
  std::size_t pos = 0;
  while (pos < stripped.size()) {
    const std::size_t word_begin = stripped.find_first_not_of(' ', pos);
    if (word_begin == std::string::npos) break;
    std::size_t word_end = stripped.find(' ', word_begin);
    if (word_end == std::string::npos) word_end = stripped.size();
    const std::string_view word(stripped.data() + word_begin,
                                word_end - word_begin);
    if (word != "a" && word != "an" && word != "the") {
      if (!out.empty()) out.push_back(' ');
      out.append(word);
    }
    pos = word_end;
  }
  return out;
}

std::size_t codepoint_count(std::string_view utf8) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < utf8.size(); i += decode(utf8, i).length) {
    ++count;
  }
  return count;
}

std::optional<std::size_t> codepoint_to_byte(std::string_view utf8,
                                             std::size_t index) {
  std::size_t i = 0;
  for (std::size_t k = 0; k < index; ++k) {
    if (i >= utf8.size()) return std::nullopt;
    i += decode(utf8, i).length;
  }
  return i;
}

}  // namespace odqa::text
