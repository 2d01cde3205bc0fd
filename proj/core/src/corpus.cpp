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

#include "odqa/corpus.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <utility>

#include "binary_io.hpp"
#include "json.hpp"
#include "odqa/error.hpp"

namespace odqa::corpus {
namespace {

constexpr std::string_view kStoreMagic = "ODQASTOR";
constexpr std::uint32_t kStoreVersion = 1;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' || c == '\r';
}

template <typename Fn>
void for_each_word(std::string_view text, Fn&& fn) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t begin = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > begin) fn(text.substr(begin, i - begin));
  }
}

// Splits one TSV line; nullopt when quoting is malformed.
std::optional<std::vector<std::string>> split_tsv(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (true) {
    std::string field;
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        field.push_back(line[i++]);
      }
      if (!closed || (i < line.size() && line[i] != '\t')) return std::nullopt;
    } else {
      const std::size_t tab = line.find('\t', i);
      const std::size_t end = tab == std::string_view::npos ? line.size() : tab;
      field.assign(line.substr(i, end - i));
      i = end;
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // tab
  }
  return fields;
}

std::istream& read_line(std::istream& in, std::string& line) {
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return in;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

std::size_t count_words(std::string_view text) {
  std::size_t n = 0;
  for_each_word(text, [&n](std::string_view) { ++n; });
  return n;
}

Passage make_passage(PassageId id, std::string title, std::string text) {
  const std::size_t words = count_words(text);
  return {id, std::move(title), std::move(text), words};
}

PassageStore PassageStore::from_passages(std::vector<Passage> passages) {
  PassageStore store;
  store.by_id_.reserve(passages.size());
  for (std::size_t i = 0; i < passages.size(); ++i) {
    if (!store.by_id_.emplace(passages[i].id, i).second) {
      throw InputError("duplicate passage id " + std::to_string(passages[i].id));
    }
    store.total_words_ += passages[i].word_count;
  }
  store.passages_ = std::move(passages);
  return store;
}

const Passage* PassageStore::find(PassageId id) const noexcept {
  const auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &passages_[it->second];
}

const Passage& PassageStore::get(PassageId id) const {
  if (const Passage* p = find(id)) return *p;
  throw NotFoundError("passage " + std::to_string(id) + " not found");
}

double PassageStore::avg_word_count() const noexcept {
  if (passages_.empty()) return 0.0;
  return static_cast<double>(total_words_) / static_cast<double>(passages_.size());
}

void PassageStore::save(std::ostream& out) const {
  detail::BinaryWriter w(out);
  w.bytes(kStoreMagic);
  w.u32(kStoreVersion);
  w.u64(passages_.size());
  for (const Passage& p : passages_) {
    w.u64(p.id);
    w.str(p.title);
    w.str(p.text);
  }
}

PassageStore PassageStore::load(std::istream& in) {
  detail::BinaryReader r(in, "passage store");
  if (r.bytes(kStoreMagic.size()) != kStoreMagic) r.fail("not a passage store file");
  if (const auto version = r.u32(); version != kStoreVersion) {
    r.fail("unsupported version " + std::to_string(version));
  }
  const std::uint64_t count = r.u64();
  std::vector<Passage> passages;
  for (std::uint64_t i = 0; i < count; ++i) {
    const PassageId id = r.u64();
    std::string title = r.str();
    std::string text = r.str();
    passages.push_back(make_passage(id, std::move(title), std::move(text)));
  }
  r.expect_end();
  return from_passages(std::move(passages));
}

void PassageStore::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  save(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

PassageStore PassageStore::load_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load(in);
}

std::vector<Passage> segment_document(std::string_view title, std::string_view body,
                                      std::size_t segment_size, PassageId first_id) {
  if (segment_size == 0) throw InputError("segment size must be >= 1");
  std::vector<Passage> out;
  std::string chunk;
  std::size_t words = 0;
  auto emit = [&] {
    out.push_back({first_id + out.size(), std::string(title), std::move(chunk), words});
    chunk.clear();
    words = 0;
  };
  for_each_word(body, [&](std::string_view word) {
    if (words > 0) chunk.push_back(' ');
    chunk.append(word);
    if (++words == segment_size) emit();
  });
  if (words > 0) emit();
  return out;
}

PassageStore ingest_passage_file(std::istream& in, const std::string& source) {
  std::string line;
  if (!read_line(in, line)) throw InputError(source, 1, "missing header row");
  const auto header = split_tsv(line);
  if (!header || *header != std::vector<std::string>{"id", "text", "title"}) {
    throw InputError(source, 1, "expected header \"id<TAB>text<TAB>title\"");
  }

  std::vector<Passage> passages;
  std::unordered_map<PassageId, std::size_t> seen;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_tsv(line);
    if (!fields) throw InputError(source, line_no, "malformed quoting");
    if (fields->size() != 3) {
      throw InputError(source, line_no,
                       "expected 3 fields, found " + std::to_string(fields->size()));
    }
    const std::string& id_field = (*fields)[0];
    PassageId id = 0;
    const auto [ptr, ec] =
        std::from_chars(id_field.data(), id_field.data() + id_field.size(), id);
    if (ec != std::errc() || ptr != id_field.data() + id_field.size() || id_field.empty()) {
      throw InputError(source, line_no, "invalid passage id \"" + id_field + "\"");
    }
    if (const auto [it, inserted] = seen.emplace(id, line_no); !inserted) {
      throw InputError(source, line_no,
                       "duplicate passage id " + id_field + " (first seen on line " +
                           std::to_string(it->second) + ")");
    }
    passages.push_back(make_passage(id, (*fields)[2], (*fields)[1]));
  }
  return PassageStore::from_passages(std::move(passages));
}

PassageStore ingest_passage_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return ingest_passage_file(in, path.string());
}

IngestResult ingest_document_file(std::istream& in, std::size_t segment_size,
                                  const std::string& source) {
  IngestResult result;
  std::vector<Passage> passages;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto doc = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded() || !doc.is_object()) {
      throw InputError(source, line_no, "not a JSON object");
    }
    const auto title = doc.find("title");
    const auto text = doc.find("text");
    if (title == doc.end() || !title->is_string() || text == doc.end() ||
        !text->is_string()) {
      throw InputError(source, line_no, "expected string fields \"title\" and \"text\"");
    }
    ++result.stats.documents;
    auto segments = segment_document(title->get_ref<const std::string&>(),
                                     text->get_ref<const std::string&>(), segment_size,
                                     passages.size());
    if (segments.empty()) {
      ++result.stats.empty_documents;
      continue;
    }
    for (auto& p : segments) passages.push_back(std::move(p));
  }
  result.stats.passages = passages.size();
  result.store = PassageStore::from_passages(std::move(passages));
  return result;
}

IngestResult ingest_document_file(const std::filesystem::path& path,
                                  std::size_t segment_size) {
  auto in = open_input(path);
  return ingest_document_file(in, segment_size, path.string());
}

}  // namespace odqa::corpus
