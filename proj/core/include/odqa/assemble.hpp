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

#ifndef ODQA_ASSEMBLE_HPP_
#define ODQA_ASSEMBLE_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odqa/corpus.hpp"
#include "odqa/index.hpp"
#include "odqa/qagen.hpp"
#include "odqa/text.hpp"

namespace odqa::assemble {

struct AssemblyConfig {
  std::size_t k_retrieve = 100;
  std::size_t k_reader = 40;
  std::size_t window_n = 3;

  // Throws InputError unless 1 <= k_reader <= k_retrieve and window_n >= 1.
  void validate() const;
};

struct SamplePassage {
  corpus::PassageId passage_id = 0;
  std::string title;
  std::string text;
  bool is_positive = false;
  std::size_t retrieval_rank = 0;

  friend bool operator==(const SamplePassage&, const SamplePassage&) = default;
};

struct TrainingSample {
  std::string question;
  std::string answer;
  std::vector<SamplePassage> passages;  // exactly k_reader, reader order
  std::size_t n_positive = 0;

  friend bool operator==(const TrainingSample&, const TrainingSample&) = default;
};

enum class DiscardReason { kNoRetrieval, kNoPositive, kTooFewPassages };

std::string_view to_string(DiscardReason reason);

using SampleResult = std::variant<TrainingSample, DiscardReason>;

// An answer occurrence is a shortcut when its left n-gram equals the
// question's left context, or its right n-gram equals the question's right
// context. Contexts compare by length and tokens. An empty side only counts
// as a match when the other side matches as well, so an answer at a segment
// boundary is not filtered on the strength of two empty contexts alone.
bool occurrence_is_trivial(const qagen::QAPair& pair,
                           std::span<const std::string> passage_tokens, text::Span occurrence,
                           std::size_t n);

// Tokens searched for answer occurrences: the passage body, not the title.
text::TokenSeq passage_tokens(const corpus::Passage& passage);

struct LabeledPassage {
  index::RetrievedPassage retrieved;
  const corpus::Passage* passage = nullptr;
  bool is_positive = false;
};

// Positive iff the passage has at least one non-trivial answer occurrence.
// Passages whose occurrences are all trivial are dropped; the rest keep
// retrieval order. Throws NotFoundError if a retrieved id is not in `store`.
std::vector<LabeledPassage> label_passages(const qagen::QAPair& pair,
                                           std::span<const index::RetrievedPassage> retrieved,
                                           const corpus::PassageStore& store,
                                           const AssemblyConfig& config);

// Applies the reader-window rule to labeled survivors in rank order: keep
// the first k_reader; if none of them is positive, overwrite the last slot
// with the best-ranked positive beyond the window. Discards when no survivor
// is positive or fewer than k_reader survive.
SampleResult select_passages(const qagen::QAPair& pair,
                             std::span<const LabeledPassage> survivors,
                             const AssemblyConfig& config);

// Label and select an already retrieved list; discards an empty list as
// kNoRetrieval.
SampleResult assemble_from_retrieved(const qagen::QAPair& pair,
                                     std::span<const index::RetrievedPassage> retrieved,
                                     const corpus::PassageStore& store,
                                     const AssemblyConfig& config);

// Retrieve k_retrieve passages for the question, then assemble_from_retrieved.
SampleResult assemble_sample(const qagen::QAPair& pair, const index::InvertedIndex& index,
                             const corpus::PassageStore& store, const AssemblyConfig& config);

// One JSON Lines record:
// {"question", "answers": [answer], "ctxs": [{"id","title","text","is_positive","rank"}]}
std::string to_json_line(const TrainingSample& sample);

}  // namespace odqa::assemble

#endif  // ODQA_ASSEMBLE_HPP_
