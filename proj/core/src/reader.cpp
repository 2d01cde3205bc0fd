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

#include "odqa/reader.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>
#include <unordered_set>

#include "odqa/text.hpp"

namespace odqa::reader {
namespace {

constexpr std::string_view kStopwords[] = {
    "a",       "about",    "above",   "after",   "again",   "against", "all",
    "also",    "am",       "among",   "an",      "and",     "any",     "are",
    "as",      "at",       "be",      "became",  "because", "been",    "before",
    "being",   "below",    "between", "both",    "but",     "by",      "can",
    "could",   "did",      "do",      "does",    "doing",   "down",    "during",
    "each",    "either",   "else",    "even",    "ever",    "every",   "few",
    "for",     "from",     "further", "had",     "has",     "have",    "having",
    "he",      "her",      "here",    "hers",    "herself", "him",     "himself",
    "his",     "how",      "however", "i",       "if",      "in",      "into",
    "is",      "it",       "its",     "itself",  "just",    "later",   "least",
    "less",    "many",     "may",     "me",      "might",   "more",    "most",
    "much",    "must",     "my",      "myself",  "neither", "no",      "nor",
    "not",     "now",      "of",      "off",     "often",   "on",      "once",
    "one",     "only",     "or",      "other",   "our",     "ours",    "ourselves",
    "out",     "over",     "own",     "same",    "shall",   "she",     "should",
    "since",   "so",       "some",    "such",    "than",    "that",    "the",
    "their",   "theirs",   "them",    "themselves", "then", "there",   "these",
    "they",    "this",     "those",   "through", "thus",    "to",      "too",
    "under",   "until",    "up",      "upon",    "us",      "very",    "was",
    "we",      "were",     "what",    "when",    "where",   "whether", "which",
    "while",   "who",      "whom",    "whose",   "why",     "will",    "with",
    "within",  "without",  "would",   "yet",     "you",     "your",    "yours",
    "yourself", "yourselves",
};

struct Entry {
  Candidate candidate;
  std::size_t first_passage = 0;
  std::size_t first_token = 0;
  std::size_t last_passage_seen = 0;
};

}  // namespace

std::span<const std::string_view> stopwords() { return kStopwords; }

bool is_stopword(std::string_view token) {
  return std::binary_search(std::begin(kStopwords), std::end(kStopwords), token);
}

std::vector<Candidate> rank_candidates(std::string_view question,
                                       std::span<const std::string> passages) {
  const text::TokenSeq question_tokens = text::tokenize(question);
  const std::unordered_set<std::string> in_question(question_tokens.tokens.begin(),
                                                    question_tokens.tokens.end());

  std::unordered_map<std::string, Entry> entries;
  for (std::size_t p = 0; p < passages.size(); ++p) {
    const text::TokenSeq seq = text::tokenize(passages[p]);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      std::string key;
      bool all_question = true;
      bool all_stop = true;
      for (std::size_t len = 1; len <= kMaxSpanTokens && i + len <= seq.size(); ++len) {
        const std::string& token = seq.tokens[i + len - 1];
        if (len > 1) key.push_back(' ');
        key.append(token);
        all_question = all_question && in_question.contains(token);
        all_stop = all_stop && is_stopword(token);
        if (all_question || all_stop) continue;

        auto [it, inserted] = entries.try_emplace(key);
        Entry& e = it->second;
        if (inserted) {
          const std::size_t begin = seq.offsets[i].begin;
          const std::size_t end = seq.offsets[i + len - 1].end;
          e.candidate.surface = passages[p].substr(begin, end - begin);
          e.candidate.frequency = 1;
          e.candidate.best_rank = p + 1;
          e.candidate.length = len;
          e.first_passage = p;
          e.first_token = i;
          e.last_passage_seen = p;
        } else if (e.last_passage_seen != p) {
          ++e.candidate.frequency;
          e.last_passage_seen = p;
        }
      }
    }
  }

  std::vector<Entry> ranked;
  ranked.reserve(entries.size());
  for (auto& [key, e] : entries) {
    e.candidate.score = static_cast<double>(e.candidate.frequency) +
                        1.0 / static_cast<double>(e.candidate.best_rank + 1);
    ranked.push_back(std::move(e));
  }
  std::sort(ranked.begin(), ranked.end(), [](const Entry& a, const Entry& b) {
    if (a.candidate.score != b.candidate.score) return a.candidate.score > b.candidate.score;
    if (a.candidate.length != b.candidate.length) return a.candidate.length < b.candidate.length;
    if (a.first_passage != b.first_passage) return a.first_passage < b.first_passage;
    return a.first_token < b.first_token;
  });

  std::vector<Candidate> out;
  out.reserve(ranked.size());
  for (auto& e : ranked) out.push_back(std::move(e.candidate));
  return out;
}

std::string predict(std::string_view question, std::span<const std::string> passages) {
  auto ranked = rank_candidates(question, passages);
  return ranked.empty() ? std::string() : std::move(ranked.front().surface);
}

}  // namespace odqa::reader
