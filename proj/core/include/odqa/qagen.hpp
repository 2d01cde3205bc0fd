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

#ifndef ODQA_QAGEN_HPP_
#define ODQA_QAGEN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace odqa::qagen {

enum class Strategy { kOurMethod, kRandEnt, kRandSent };

// "our_method", "rand_ent", "rand_sent".
std::string_view to_string(Strategy strategy);
// Throws InputError for an unknown name.
Strategy parse_strategy(std::string_view name);

// Half-open range of code points (not bytes) into a sentence.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const CharSpan&, const CharSpan&) = default;
};

struct Mention {
  std::string surface;
  CharSpan span;

  friend bool operator==(const Mention&, const Mention&) = default;
};

// A sentence aligned with a subject-predicate-object triple plus its named
// entity mentions. `objects` normally holds exactly one mention; records that
// align several objects are kept so the filter can reject them.
struct AlignedSentence {
  std::string text;
  std::optional<Mention> subject;
  std::string predicate;
  std::vector<Mention> objects;
  std::vector<Mention> entities;
  std::optional<std::string> doc_id;
};

// Throws InputError unless every mention lies inside `text` with a
// non-empty span and its surface equals the covered substring.
void validate_mention(std::string_view text, const Mention& mention);
void validate(const AlignedSentence& sentence);

// Parses one JSON Lines record:
//   {"text", "subject": {"surface","start","end"}, "predicate",
//    "object": {...} | [{...}, ...], "entities": [{...}], "doc_id"?}
// Only "text" is mandatory. Validates the result.
AlignedSentence parse_aligned_sentence(std::string_view json_line);

struct SentenceFilterConfig {
  std::size_t min_chars = 50;
  std::size_t max_chars = 250;
  bool require_single_object = true;

  void validate() const;
};

enum class RejectReason {
  kTooShort,
  kTooLong,
  kMultiObject,
  kNoObject,
  kNoEntities,
  kEmptyAnswer,      // the answer surface has no word tokens
  kLeakyQuestion,    // answer tokens still present after masking
  kMaskInText,       // the sentence already contains the mask literal
  kDegenerateSpan,   // nothing but the mask would remain
};

std::string_view to_string(RejectReason reason);

// Character-length bounds are inclusive. nullopt means accepted.
std::optional<RejectReason> filter_sentence(const AlignedSentence& sentence,
                                            const SentenceFilterConfig& config);

struct QAPair {
  std::string question;  // contains kMaskToken exactly once
  std::string answer;
  std::vector<std::string> left_ctx;   // up to n tokens before the answer
  std::vector<std::string> right_ctx;  // up to n tokens after the answer
  Strategy strategy = Strategy::kOurMethod;
  std::string source_id;

  friend bool operator==(const QAPair&, const QAPair&) = default;
};

using PairResult = std::variant<QAPair, RejectReason>;

// Deterministic generator. Streams derived for different line numbers are
// independent, so per-line draws do not depend on processing order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  static Rng for_line(std::uint64_t seed, std::uint64_t line);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n must be positive.
  std::size_t uniform_index(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// Replaces `answer_span` with the mask token. Contexts come from the
// unmasked sentence, strictly outside the span.
PairResult mask_answer(std::string_view text, const Mention& answer, std::size_t window_n,
                       Strategy strategy, std::string source_id);

// Masks the aligned object.
PairResult make_pair_object(const AlignedSentence& sentence, std::size_t window_n);

// Masks one entity drawn uniformly with `rng`.
PairResult make_pair_rand_ent(const AlignedSentence& sentence, Rng& rng,
                              std::size_t window_n);

// Same draw as make_pair_rand_ent for a bare sentence; no alignment needed.
// Throws InputError when an entity span is invalid for `sentence`.
PairResult make_pair_rand_sent(std::string_view sentence, std::span<const Mention> entities,
                               Rng& rng, std::size_t window_n,
                               std::string source_id = {});

}  // namespace odqa::qagen

#endif  // ODQA_QAGEN_HPP_
