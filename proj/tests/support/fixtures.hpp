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

// Deterministic synthetic corpora and sentence files for tests and
// benchmarks.

#ifndef ODQA_TESTS_SUPPORT_FIXTURES_HPP_
#define ODQA_TESTS_SUPPORT_FIXTURES_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "odqa/corpus.hpp"
#include "odqa/eval.hpp"
#include "odqa/index.hpp"
#include "odqa/qagen.hpp"
#include "oracles.hpp"

namespace odqa::testing {

class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(double p) { return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Capitalized pseudo-word, unique within the generator.
class NameGenerator {
 public:
  explicit NameGenerator(FixtureRng& rng) : rng_(rng) {}
  std::string next();

 private:
  FixtureRng& rng_;
  std::vector<std::string> used_;
};

// Lowercase content words plus a handful of stopwords.
const std::vector<std::string>& filler_vocabulary();
std::string filler(FixtureRng& rng, std::size_t words);

// {"surface": ..., "start": ..., "end": ...} for the `occurrence`-th (0-based)
// match of `surface` in `text`, with code point offsets.
std::string mention_json(std::string_view text, std::string_view surface,
                         std::size_t occurrence = 0);

struct SentenceSpec {
  std::string text;
  std::string subject;
  std::string predicate = "related_to";
  std::vector<std::string> objects;  // one normally
  std::size_t object_occurrence = 0;
  std::vector<std::string> entities;
  std::string doc_id;
};
std::string sentence_json(const SentenceSpec& spec);

struct Fact {
  std::string subject;
  std::string object;
  std::string extra;
  std::string category;  // normal, too_short, too_long, multi_object, leaky, absent, trivial_only
};

struct World {
  corpus::PassageStore store;
  std::vector<std::string> sentence_lines;  // aligned-sentence JSON Lines
  std::vector<Fact> facts;                  // parallel to sentence_lines
};

// A knowledge source of `passages` passages and `sentences` aligned
// sentences (at least 20). Most sentences have an answer that appears in
// two passages with fresh context and in one passage that copies the
// sentence verbatim; the rest exercise each rejection path.
World make_world(std::size_t passages = 1000, std::size_t sentences = 100,
                 std::uint64_t seed = 20240917);

std::string join_lines(const std::vector<std::string>& lines);

// Serializes a store in the tab-separated passage format.
std::string to_passage_tsv(const corpus::PassageStore& store);

// `words` random words separated by random runs of whitespace.
std::string random_document(FixtureRng& rng, std::size_t words);

// A pair whose answer is "zorbu" with contexts [played for the] / [in the final].
qagen::QAPair ranked_pair();

// Passages realizing the given labels for ranked_pair(), listed at ranks 1..n.
// Positive and trivial passages vary their occurrence layout with the rng.
struct RankedFixture {
  corpus::PassageStore store;
  std::vector<index::RetrievedPassage> retrieved;
};
RankedFixture ranked_fixture(std::span<const oracle::Label> labels, FixtureRng& rng);

// Twenty hand-labeled examples; exactly 13 predictions are exact-match hits.
struct EvalFixture {
  std::vector<eval::EvalExample> examples;
  eval::Predictions predictions;
  std::vector<bool> hits;  // hand label per example
};
EvalFixture em_fixture();

}  // namespace odqa::testing

#endif  // ODQA_TESTS_SUPPORT_FIXTURES_HPP_
