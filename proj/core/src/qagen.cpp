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

#include "odqa/qagen.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "json.hpp"
#include "odqa/error.hpp"
#include "odqa/text.hpp"

namespace odqa::qagen {
namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Mention parse_mention(const json& j, std::string_view field) {
  const std::string where = "field \"" + std::string(field) + "\"";
  if (!j.is_object()) throw InputError(where + ": expected an object");
  const auto surface = j.find("surface");
  const auto start = j.find("start");
  const auto end = j.find("end");
  if (surface == j.end() || !surface->is_string()) {
    throw InputError(where + ": missing string \"surface\"");
  }
  if (start == j.end() || !start->is_number_unsigned() || end == j.end() ||
      !end->is_number_unsigned()) {
    throw InputError(where + ": \"start\" and \"end\" must be non-negative integers");
  }
  return {surface->get<std::string>(),
          {start->get<std::size_t>(), end->get<std::size_t>()}};
}

std::string describe(const Mention& m) {
  return "\"" + m.surface + "\" [" + std::to_string(m.span.start) + ", " +
         std::to_string(m.span.end) + ")";
}

}  // namespace

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kOurMethod: return "our_method";
    case Strategy::kRandEnt: return "rand_ent";
    case Strategy::kRandSent: return "rand_sent";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "our_method") return Strategy::kOurMethod;
  if (name == "rand_ent") return Strategy::kRandEnt;
  if (name == "rand_sent") return Strategy::kRandSent;
  throw InputError("unknown strategy \"" + std::string(name) +
                   "\" (expected our_method, rand_ent or rand_sent)");
}

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kTooShort: return "too_short";
    case RejectReason::kTooLong: return "too_long";
    case RejectReason::kMultiObject: return "multi_object";
    case RejectReason::kNoObject: return "no_object";
    case RejectReason::kNoEntities: return "no_entities";
    case RejectReason::kEmptyAnswer: return "empty_answer";
    case RejectReason::kLeakyQuestion: return "leaky_question";
    case RejectReason::kMaskInText: return "mask_in_text";
    case RejectReason::kDegenerateSpan: return "degenerate_span";
  }
  return "unknown";
}

void validate_mention(std::string_view text, const Mention& mention) {
  if (mention.span.start >= mention.span.end) {
    throw InputError("empty or inverted span " + describe(mention));
  }
  const auto begin = text::codepoint_to_byte(text, mention.span.start);
  const auto end = text::codepoint_to_byte(text, mention.span.end);
  if (!begin || !end) throw InputError("span out of bounds " + describe(mention));
  if (text.substr(*begin, *end - *begin) != mention.surface) {
    throw InputError("surface does not match text at " + describe(mention));
  }
}

void validate(const AlignedSentence& sentence) {
  if (sentence.subject) validate_mention(sentence.text, *sentence.subject);
  for (const Mention& m : sentence.objects) validate_mention(sentence.text, m);
  for (const Mention& m : sentence.entities) validate_mention(sentence.text, m);
}

AlignedSentence parse_aligned_sentence(std::string_view json_line) {
  const json j = json::parse(json_line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) throw InputError("not a JSON object");

  AlignedSentence s;
  const auto text = j.find("text");
  if (text == j.end() || !text->is_string()) throw InputError("missing string \"text\"");
  s.text = text->get<std::string>();

  if (const auto it = j.find("subject"); it != j.end() && !it->is_null()) {
    s.subject = parse_mention(*it, "subject");
  }
  if (const auto it = j.find("predicate"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw InputError("\"predicate\" must be a string");
    s.predicate = it->get<std::string>();
  }
  if (const auto it = j.find("object"); it != j.end() && !it->is_null()) {
    if (it->is_array()) {
      for (const json& m : *it) s.objects.push_back(parse_mention(m, "object"));
    } else {
      s.objects.push_back(parse_mention(*it, "object"));
    }
  }
  if (const auto it = j.find("entities"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw InputError("\"entities\" must be an array");
    for (const json& m : *it) s.entities.push_back(parse_mention(m, "entities"));
  }
  if (const auto it = j.find("doc_id"); it != j.end() && !it->is_null()) {
    if (it->is_string()) {
      s.doc_id = it->get<std::string>();
    } else if (it->is_number_integer()) {
      s.doc_id = it->dump();
    } else {
      throw InputError("\"doc_id\" must be a string or integer");
    }
  }
  validate(s);
  return s;
}

void SentenceFilterConfig::validate() const {
  if (min_chars > max_chars) {
    throw InputError("filter.min_chars must not exceed filter.max_chars");
  }
}

std::optional<RejectReason> filter_sentence(const AlignedSentence& sentence,
                                            const SentenceFilterConfig& config) {
  const std::size_t chars = text::codepoint_count(sentence.text);
  if (chars < config.min_chars) return RejectReason::kTooShort;
  if (chars > config.max_chars) return RejectReason::kTooLong;
  if (config.require_single_object && sentence.objects.size() > 1) {
    return RejectReason::kMultiObject;
  }
  return std::nullopt;
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

Rng Rng::for_line(std::uint64_t seed, std::uint64_t line) {
  return Rng(splitmix64(seed) ^ splitmix64(~line));
}

std::size_t Rng::uniform_index(std::size_t n) {
  if (n == 0) throw InputError("uniform_index: empty range");
  const std::uint64_t range = n;
  const std::uint64_t threshold = (0 - range) % range;
  std::uint64_t r = next();
  while (r < threshold) r = next();
  return static_cast<std::size_t>(r % range);
}

PairResult mask_answer(std::string_view text, const Mention& answer, std::size_t window_n,
                       Strategy strategy, std::string source_id) {
  if (window_n == 0) throw InputError("window size must be >= 1");
  validate_mention(text, answer);
  if (text.find(text::kMaskToken) != std::string_view::npos) {
    return RejectReason::kMaskInText;
  }
  const std::size_t begin = *text::codepoint_to_byte(text, answer.span.start);
  const std::size_t end = *text::codepoint_to_byte(text, answer.span.end);

  const text::TokenSeq answer_tokens = text::tokenize(answer.surface);
  if (answer_tokens.empty()) return RejectReason::kEmptyAnswer;

  std::string question;
  question.reserve(text.size() + text::kMaskToken.size());
  question.append(text.substr(0, begin));
  question.append(text::kMaskToken);
  question.append(text.substr(end));

  const text::TokenSeq question_tokens = text::tokenize(question);
  if (question_tokens.size() <= 1) return RejectReason::kDegenerateSpan;
  if (!text::contains_answer(question_tokens.tokens, answer_tokens.tokens).empty()) {
    return RejectReason::kLeakyQuestion;
  }

  const text::TokenSeq original = text::tokenize(text);
  const auto& offsets = original.offsets;
  const auto left_end = static_cast<std::size_t>(
      std::find_if(offsets.begin(), offsets.end(),
                   [begin](const text::ByteRange& r) { return r.end > begin; }) -
      offsets.begin());
  const auto right_begin = static_cast<std::size_t>(
      std::find_if(offsets.begin(), offsets.end(),
                   [end](const text::ByteRange& r) { return r.begin >= end; }) -
      offsets.begin());
  const std::size_t left_begin = left_end > window_n ? left_end - window_n : 0;
  const std::size_t right_end = std::min(original.size(), right_begin + window_n);

  QAPair pair;
  pair.question = std::move(question);
  pair.answer = answer.surface;
  pair.left_ctx.assign(original.tokens.begin() + left_begin,
                       original.tokens.begin() + left_end);
  pair.right_ctx.assign(original.tokens.begin() + right_begin,
                        original.tokens.begin() + right_end);
  pair.strategy = strategy;
  pair.source_id = std::move(source_id);
  return pair;
}

PairResult make_pair_object(const AlignedSentence& sentence, std::size_t window_n) {
  if (sentence.objects.empty()) return RejectReason::kNoObject;
  return mask_answer(sentence.text, sentence.objects.front(), window_n,
                     Strategy::kOurMethod, sentence.doc_id.value_or(""));
}

PairResult make_pair_rand_ent(const AlignedSentence& sentence, Rng& rng,
                              std::size_t window_n) {
  if (sentence.entities.empty()) return RejectReason::kNoEntities;
  const Mention& chosen = sentence.entities[rng.uniform_index(sentence.entities.size())];
  return mask_answer(sentence.text, chosen, window_n, Strategy::kRandEnt,
                     sentence.doc_id.value_or(""));
}

PairResult make_pair_rand_sent(std::string_view sentence, std::span<const Mention> entities,
                               Rng& rng, std::size_t window_n, std::string source_id) {
  for (const Mention& m : entities) validate_mention(sentence, m);
  if (entities.empty()) return RejectReason::kNoEntities;
  const Mention& chosen = entities[rng.uniform_index(entities.size())];
  return mask_answer(sentence, chosen, window_n, Strategy::kRandSent, std::move(source_id));
}

}  // namespace odqa::qagen
