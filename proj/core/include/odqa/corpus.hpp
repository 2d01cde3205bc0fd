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

#ifndef ODQA_CORPUS_HPP_
#define ODQA_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace odqa::corpus {

using PassageId = std::uint64_t;

inline constexpr std::size_t kDefaultSegmentWords = 100;

// One retrieval unit of the knowledge source.
struct Passage {
  PassageId id = 0;
  std::string title;
  std::string text;
  std::size_t word_count = 0;  // whitespace-delimited words in `text`

  friend bool operator==(const Passage&, const Passage&) = default;
};

// Number of maximal runs of non-whitespace bytes.
std::size_t count_words(std::string_view text);

Passage make_passage(PassageId id, std::string title, std::string text);

// Immutable, insertion-ordered passage collection with O(1) lookup by id.
class PassageStore {
 public:
  PassageStore() = default;

  // Throws InputError on a duplicate id.
  static PassageStore from_passages(std::vector<Passage> passages);

  // Throws NotFoundError for an unknown id.
  const Passage& get(PassageId id) const;
  const Passage* find(PassageId id) const noexcept;

  std::span<const Passage> passages() const noexcept { return passages_; }
  std::size_t doc_count() const noexcept { return passages_.size(); }
  std::uint64_t total_words() const noexcept { return total_words_; }
  // Mean word count; 0 for an empty store.
  double avg_word_count() const noexcept;

  void save(std::ostream& out) const;
  static PassageStore load(std::istream& in);
  void save_file(const std::filesystem::path& path) const;
  static PassageStore load_file(const std::filesystem::path& path);

 private:
  std::vector<Passage> passages_;
  std::unordered_map<PassageId, std::size_t> by_id_;
  std::uint64_t total_words_ = 0;
};

// Splits `body` on whitespace into consecutive chunks of `segment_size`
// words (the last one possibly shorter), numbering them from `first_id`.
// Words inside each chunk are joined by single spaces.
std::vector<Passage> segment_document(std::string_view title,
                                      std::string_view body,
                                      std::size_t segment_size = kDefaultSegmentWords,
                                      PassageId first_id = 0);

struct IngestStats {
  std::size_t documents = 0;
  std::size_t empty_documents = 0;  // skipped, contributed no passage
  std::size_t passages = 0;
};

struct IngestResult {
  PassageStore store;
  IngestStats stats;
};

// Tab-separated passage file with header "id\ttext\ttitle". Fields may be
// wrapped in double quotes, with "" for a literal quote.
PassageStore ingest_passage_file(std::istream& in,
                                 const std::string& source = "<passages>");
PassageStore ingest_passage_file(const std::filesystem::path& path);

// JSON Lines, one {"title": ..., "text": ...} document per line. Passage
// ids are assigned consecutively from 0 in input order.
IngestResult ingest_document_file(std::istream& in,
                                  std::size_t segment_size = kDefaultSegmentWords,
                                  const std::string& source = "<documents>");
IngestResult ingest_document_file(const std::filesystem::path& path,
                                  std::size_t segment_size = kDefaultSegmentWords);

}  // namespace odqa::corpus

#endif  // ODQA_CORPUS_HPP_
