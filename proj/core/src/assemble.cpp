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

#include "odqa/assemble.hpp"

#include <algorithm>

#include "json.hpp"
#include "odqa/error.hpp"

namespace odqa::assemble {

void AssemblyConfig::validate() const {
  if (k_reader < 1 || k_reader > k_retrieve) {
    throw InputError("assembly requires 1 <= k_reader <= k_retrieve");
  }
  if (window_n < 1) throw InputError("assembly.window_n must be >= 1");
}

std::string_view to_string(DiscardReason reason) {
  switch (reason) {
    case DiscardReason::kNoRetrieval: return "no_retrieval";
    case DiscardReason::kNoPositive: return "no_positive";
    case DiscardReason::kTooFewPassages: return "too_few_passages";
  }
  return "unknown";
}

bool occurrence_is_trivial(const qagen::QAPair& pair,
                           std::span<const std::string> passage_tokens,
                           text::Span occurrence, std::size_t n) {
  const text::ContextNgrams ctx = text::context_ngrams(passage_tokens, occurrence, n);
  const bool left_equal = ctx.left == pair.left_ctx;
  const bool right_equal = ctx.right == pair.right_ctx;
  return (left_equal && !pair.left_ctx.empty()) ||
         (right_equal && !pair.right_ctx.empty()) || (left_equal && right_equal);
}

text::TokenSeq passage_tokens(const corpus::Passage& passage) {
  return text::tokenize(passage.text);
}

std::vector<LabeledPassage> label_passages(const qagen::QAPair& pair,
                                           std::span<const index::RetrievedPassage> retrieved,
                                           const corpus::PassageStore& store,
                                           const AssemblyConfig& config) {
  const text::TokenSeq answer = text::tokenize(pair.answer);
  std::vector<LabeledPassage> out;
  out.reserve(retrieved.size());
  for (const index::RetrievedPassage& hit : retrieved) {
    const corpus::Passage& passage = store.get(hit.passage_id);
    const text::TokenSeq tokens = passage_tokens(passage);
    const auto occurrences = text::contains_answer(tokens.tokens, answer.tokens);
    if (occurrences.empty()) {
      out.push_back({hit, &passage, false});
      continue;
    }
    const bool any_real = std::any_of(
        occurrences.begin(), occurrences.end(), [&](const text::Span& occ) {
          return !occurrence_is_trivial(pair, tokens.tokens, occ, config.window_n);
        });
    if (any_real) out.push_back({hit, &passage, true});
  }
  return out;
}

SampleResult select_passages(const qagen::QAPair& pair,
                             std::span<const LabeledPassage> survivors,
                             const AssemblyConfig& config) {
  const auto positive = [](const LabeledPassage& p) { return p.is_positive; };
  if (std::none_of(survivors.begin(), survivors.end(), positive)) {
    return DiscardReason::kNoPositive;
  }
  if (survivors.size() < config.k_reader) return DiscardReason::kTooFewPassages;

  std::vector<const LabeledPassage*> window;
  window.reserve(config.k_reader);
  for (std::size_t i = 0; i < config.k_reader; ++i) window.push_back(&survivors[i]);
  if (std::none_of(window.begin(), window.end(),
                   [](const LabeledPassage* p) { return p->is_positive; })) {
    const auto rest = survivors.subspan(config.k_reader);
    window.back() = &*std::find_if(rest.begin(), rest.end(), positive);
  }

  TrainingSample sample;
  sample.question = pair.question;
  sample.answer = pair.answer;
  sample.passages.reserve(window.size());
  for (const LabeledPassage* p : window) {
    sample.passages.push_back({p->retrieved.passage_id, p->passage->title, p->passage->text,
                               p->is_positive, p->retrieved.rank});
    sample.n_positive += p->is_positive ? 1 : 0;
  }
  return sample;
}

SampleResult assemble_from_retrieved(const qagen::QAPair& pair,
                                     std::span<const index::RetrievedPassage> retrieved,
                                     const corpus::PassageStore& store,
                                     const AssemblyConfig& config) {
  config.validate();
  if (retrieved.empty()) return DiscardReason::kNoRetrieval;
  const auto survivors = label_passages(pair, retrieved, store, config);
  return select_passages(pair, survivors, config);
}

SampleResult assemble_sample(const qagen::QAPair& pair, const index::InvertedIndex& index,
                             const corpus::PassageStore& store,
                             const AssemblyConfig& config) {
  config.validate();
  const auto retrieved = index.retrieve(text::tokenize(pair.question), config.k_retrieve);
  return assemble_from_retrieved(pair, retrieved, store, config);
}

std::string to_json_line(const TrainingSample& sample) {
  nlohmann::ordered_json j;
  j["question"] = sample.question;
  j["answers"] = nlohmann::ordered_json::array({sample.answer});
  auto& ctxs = j["ctxs"] = nlohmann::ordered_json::array();
  for (const SamplePassage& p : sample.passages) {
    nlohmann::ordered_json c;
    c["id"] = p.passage_id;
    c["title"] = p.title;
    c["text"] = p.text;
    c["is_positive"] = p.is_positive;
    c["rank"] = p.retrieval_rank;
    ctxs.push_back(std::move(c));
  }
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

}  // namespace odqa::assemble
