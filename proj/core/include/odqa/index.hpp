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

#ifndef ODQA_INDEX_HPP_
#define ODQA_INDEX_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "odqa/corpus.hpp"
#include "odqa/text.hpp"

namespace odqa::index {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  // Throws InputError unless k1 >= 0 and 0 <= b <= 1.
  void validate() const;
  friend bool operator==(const Bm25Params&, const Bm25Params&) = default;
};

// ln(1 + (N - df + 0.5) / (df + 0.5)); always positive.
double bm25_idf(std::uint64_t doc_count, std::uint64_t doc_freq);

// Saturated, length-normalized term frequency component.
double bm25_tf(std::uint32_t tf, std::uint32_t doc_length, double avgdl,
               const Bm25Params& params);

// `doc` is an ordinal into the index's ascending passage-id order, so
// posting lists sorted by ordinal are also sorted by passage id.
struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t tf = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct RetrievedPassage {
  corpus::PassageId passage_id = 0;
  std::size_t rank = 0;  // 1-based
  double score = 0.0;

  friend bool operator==(const RetrievedPassage&, const RetrievedPassage&) = default;
};

// Distinct query terms in first-occurrence order, mask token removed.
std::vector<std::string> query_terms(const text::TokenSeq& query);

// Text indexed for a passage: title, a space, then body.
std::string indexed_text(const corpus::Passage& passage);

class InvertedIndex {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  InvertedIndex() = default;

  // Throws InputError for an empty store or invalid params. Tokenization is
  // spread over `workers` threads; the result does not depend on it.
  static InvertedIndex build(const corpus::PassageStore& store,
                             const Bm25Params& params = {}, unsigned workers = 1);

  std::size_t doc_count() const noexcept { return ids_.size(); }
  double avgdl() const noexcept;
  std::uint64_t total_length() const noexcept { return total_length_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  const Bm25Params& params() const noexcept { return params_; }
  // Scoring parameters are applied at query time, so they can be swapped
  // without rebuilding.
  void set_params(const Bm25Params& params);

  bool contains(corpus::PassageId id) const noexcept;
  // Throws NotFoundError for an unknown passage.
  std::uint32_t doc_length(corpus::PassageId id) const;

  // Empty span for an unknown term.
  std::span<const Posting> postings(std::string_view term) const;
  std::optional<std::uint64_t> doc_freq(std::string_view term) const;
  // Throws NotFoundError when the term does not occur in the index.
  double idf(std::string_view term) const;

  // BM25 score of one passage; 0 when it shares no term with the query.
  double score(const text::TokenSeq& query, corpus::PassageId id) const;

  // Passages with positive score, ordered by (score desc, passage id asc),
  // truncated to k.
  std::vector<RetrievedPassage> retrieve(const text::TokenSeq& query,
                                         std::size_t k) const;

  void save(std::ostream& out) const;
  static InvertedIndex load(std::istream& in);
  void save_file(const std::filesystem::path& path) const;
  static InvertedIndex load_file(const std::filesystem::path& path);

 private:
  std::optional<std::uint32_t> ordinal_of(corpus::PassageId id) const noexcept;
  const std::vector<Posting>* find_postings(std::string_view term) const;

  std::vector<corpus::PassageId> ids_;  // ascending
  std::vector<std::uint32_t> lengths_;  // token count per ordinal
  std::uint64_t total_length_ = 0;
  std::vector<std::string> terms_;      // lexicographic
  std::vector<std::vector<Posting>> postings_;
  std::unordered_map<std::string, std::uint32_t> term_ids_;
  Bm25Params params_;
};

}  // namespace odqa::index

#endif  // ODQA_INDEX_HPP_
