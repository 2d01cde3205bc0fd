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

#include "odqa/index.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <thread>
#include <unordered_set>
#include <utility>

#include "binary_io.hpp"
#include "odqa/error.hpp"

namespace odqa::index {
namespace {

constexpr std::string_view kIndexMagic = "ODQAINDX";

struct DocTerms {
  std::uint32_t length = 0;
  std::vector<std::pair<std::string, std::uint32_t>> counts;  // first-seen order
};

DocTerms count_terms(const corpus::Passage& passage) {
  DocTerms doc;
  const text::TokenSeq seq = text::tokenize(indexed_text(passage));
  doc.length = static_cast<std::uint32_t>(seq.size());
  std::unordered_map<std::string_view, std::size_t> slot;
  for (const std::string& token : seq.tokens) {
    const auto [it, inserted] = slot.emplace(token, doc.counts.size());
    if (inserted) {
      doc.counts.emplace_back(token, 1);
    } else {
      ++doc.counts[it->second].second;
    }
  }
  return doc;
}

}  // namespace

void Bm25Params::validate() const {
  if (!(k1 >= 0.0) || !std::isfinite(k1)) {
    throw InputError("bm25 k1 must be a finite value >= 0");
  }
  if (!(b >= 0.0 && b <= 1.0)) throw InputError("bm25 b must lie in [0, 1]");
}

double bm25_idf(std::uint64_t doc_count, std::uint64_t doc_freq) {
  const double n = static_cast<double>(doc_count);
  const double df = static_cast<double>(doc_freq);
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double bm25_tf(std::uint32_t tf, std::uint32_t doc_length, double avgdl,
               const Bm25Params& params) {
  const double f = static_cast<double>(tf);
  const double norm = 1.0 - params.b + params.b * static_cast<double>(doc_length) / avgdl;
  return f * (params.k1 + 1.0) / (f + params.k1 * norm);
}

std::vector<std::string> query_terms(const text::TokenSeq& query) {
  std::vector<std::string> terms;
  std::unordered_set<std::string_view> seen;
  for (const std::string& token : query.tokens) {
    if (token == text::kMaskToken) continue;
    if (seen.insert(token).second) terms.push_back(token);
  }
  return terms;
}

std::string indexed_text(const corpus::Passage& passage) {
  std::string s;
  s.reserve(passage.title.size() + 1 + passage.text.size());
  s.append(passage.title).push_back(' ');
  s.append(passage.text);
  return s;
}

InvertedIndex InvertedIndex::build(const corpus::PassageStore& store,
                                   const Bm25Params& params, unsigned workers) {
  if (store.doc_count() == 0) throw InputError("cannot index an empty passage store");
  if (store.doc_count() > std::numeric_limits<std::uint32_t>::max()) {
    throw InputError("passage store too large for a single index");
  }
  params.validate();

  InvertedIndex index;
  index.params_ = params;

  const auto passages = store.passages();
  std::vector<std::size_t> order(passages.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return passages[a].id < passages[b].id;
  });

  std::vector<DocTerms> docs(passages.size());
  const unsigned threads = std::max(1U, std::min<unsigned>(workers, passages.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < order.size(); i += threads) {
          docs[i] = count_terms(passages[order[i]]);
        }
      });
    }
  }

  std::unordered_map<std::string, std::vector<Posting>> merged;
  index.ids_.reserve(passages.size());
  index.lengths_.reserve(passages.size());
  for (std::size_t ord = 0; ord < docs.size(); ++ord) {
    index.ids_.push_back(passages[order[ord]].id);
    index.lengths_.push_back(docs[ord].length);
    index.total_length_ += docs[ord].length;
    for (auto& [term, tf] : docs[ord].counts) {
      merged[std::move(term)].push_back({static_cast<std::uint32_t>(ord), tf});
    }
    docs[ord] = {};
  }

  index.terms_.reserve(merged.size());
  for (const auto& entry : merged) index.terms_.push_back(entry.first);
  std::sort(index.terms_.begin(), index.terms_.end());
  index.postings_.reserve(index.terms_.size());
  for (std::uint32_t id = 0; id < index.terms_.size(); ++id) {
    index.postings_.push_back(std::move(merged[index.terms_[id]]));
    index.term_ids_.emplace(index.terms_[id], id);
  }
  return index;
}

double InvertedIndex::avgdl() const noexcept {
  if (ids_.empty()) return 0.0;
  return static_cast<double>(total_length_) / static_cast<double>(ids_.size());
}

void InvertedIndex::set_params(const Bm25Params& params) {
  params.validate();
  params_ = params;
}

std::optional<std::uint32_t> InvertedIndex::ordinal_of(corpus::PassageId id) const noexcept {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - ids_.begin());
}

bool InvertedIndex::contains(corpus::PassageId id) const noexcept {
  return ordinal_of(id).has_value();
}

std::uint32_t InvertedIndex::doc_length(corpus::PassageId id) const {
  const auto ord = ordinal_of(id);
  if (!ord) throw NotFoundError("passage " + std::to_string(id) + " not in index");
  return lengths_[*ord];
}

const std::vector<Posting>* InvertedIndex::find_postings(std::string_view term) const {
  const auto it = term_ids_.find(std::string(term));
  return it == term_ids_.end() ? nullptr : &postings_[it->second];
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
  const auto* list = find_postings(term);
  return list ? std::span<const Posting>(*list) : std::span<const Posting>();
}

std::optional<std::uint64_t> InvertedIndex::doc_freq(std::string_view term) const {
  const auto* list = find_postings(term);
  if (!list) return std::nullopt;
  return list->size();
}

double InvertedIndex::idf(std::string_view term) const {
  const auto df = doc_freq(term);
  if (!df) throw NotFoundError("term \"" + std::string(term) + "\" not in index");
  return bm25_idf(ids_.size(), *df);
}

double InvertedIndex::score(const text::TokenSeq& query, corpus::PassageId id) const {
  const auto ord = ordinal_of(id);
  if (!ord) throw NotFoundError("passage " + std::to_string(id) + " not in index");
  const double mean = avgdl();
  double total = 0.0;
  for (const std::string& term : query_terms(query)) {
    const auto* list = find_postings(term);
    if (!list) continue;
    const auto it = std::lower_bound(
        list->begin(), list->end(), *ord,
        [](const Posting& p, std::uint32_t doc) { return p.doc < doc; });
    if (it == list->end() || it->doc != *ord) continue;
    total += bm25_idf(ids_.size(), list->size()) *
             bm25_tf(it->tf, lengths_[*ord], mean, params_);
  }
  return total;
}

std::vector<RetrievedPassage> InvertedIndex::retrieve(const text::TokenSeq& query,
                                                      std::size_t k) const {
  if (k == 0) throw InputError("retrieve: k must be >= 1");
  struct Contribution {
    std::uint32_t doc;
    double weight;
  };
  // Appended term by term; the stable sort keeps that order per document,
  // so sums accumulate in the same order as score().
  std::vector<Contribution> contributions;
  const double mean = avgdl();
  for (const std::string& term : query_terms(query)) {
    const auto* list = find_postings(term);
    if (!list) continue;
    const double term_idf = bm25_idf(ids_.size(), list->size());
    for (const Posting& p : *list) {
      contributions.push_back({p.doc, term_idf * bm25_tf(p.tf, lengths_[p.doc], mean, params_)});
    }
  }
  std::stable_sort(contributions.begin(), contributions.end(),
                   [](const Contribution& a, const Contribution& b) { return a.doc < b.doc; });

  std::vector<RetrievedPassage> hits;
  for (std::size_t i = 0; i < contributions.size();) {
    const std::uint32_t doc = contributions[i].doc;
    double total = 0.0;
    for (; i < contributions.size() && contributions[i].doc == doc; ++i) {
      total += contributions[i].weight;
    }
    if (total > 0.0) hits.push_back({ids_[doc], 0, total});
  }

  const auto better = [](const RetrievedPassage& a, const RetrievedPassage& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.passage_id < b.passage_id;
  };
  const std::size_t keep = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(keep),
                    hits.end(), better);
  hits.resize(keep);
  for (std::size_t i = 0; i < hits.size(); ++i) hits[i].rank = i + 1;
  return hits;
}

void InvertedIndex::save(std::ostream& out) const {
  detail::BinaryWriter w(out);
  w.bytes(kIndexMagic);
  w.u32(kFormatVersion);
  w.f64(params_.k1);
  w.f64(params_.b);
  w.u64(ids_.size());
  for (const auto id : ids_) w.u64(id);
  for (const auto len : lengths_) w.u32(len);
  w.u64(terms_.size());
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    w.str(terms_[t]);
    w.u64(postings_[t].size());
    for (const Posting& p : postings_[t]) {
      w.u32(p.doc);
      w.u32(p.tf);
    }
  }
}

InvertedIndex InvertedIndex::load(std::istream& in) {
  detail::BinaryReader r(in, "index");
  if (r.bytes(kIndexMagic.size()) != kIndexMagic) r.fail("not an index file");
  if (const auto version = r.u32(); version != kFormatVersion) {
    r.fail("unsupported index version " + std::to_string(version));
  }
  InvertedIndex index;
  index.params_.k1 = r.f64();
  index.params_.b = r.f64();
  try {
    index.params_.validate();
  } catch (const InputError& e) {
    r.fail(e.what());
  }

  const std::uint64_t n = r.u64();
  if (n == 0 || n > std::numeric_limits<std::uint32_t>::max()) r.fail("bad document count");
  index.ids_.resize(n);
  for (auto& id : index.ids_) id = r.u64();
  if (std::adjacent_find(index.ids_.begin(), index.ids_.end(),
                         [](auto a, auto b) { return a >= b; }) != index.ids_.end()) {
    r.fail("passage ids not strictly ascending");
  }
  index.lengths_.resize(n);
  for (auto& len : index.lengths_) {
    len = r.u32();
    index.total_length_ += len;
  }

  const std::uint64_t term_count = r.u64();
  for (std::uint64_t t = 0; t < term_count; ++t) {
    std::string term = r.str();
    if (!index.terms_.empty() && !(index.terms_.back() < term)) {
      r.fail("terms not strictly sorted");
    }
    const std::uint64_t count = r.u64();
    if (count == 0 || count > n) r.fail("bad posting list length");
    std::vector<Posting> list(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      list[i].doc = r.u32();
      list[i].tf = r.u32();
      if (list[i].doc >= n || list[i].tf == 0 || (i > 0 && list[i].doc <= list[i - 1].doc)) {
        r.fail("corrupt posting list for \"" + term + "\"");
      }
    }
    index.term_ids_.emplace(term, static_cast<std::uint32_t>(index.terms_.size()));
    index.terms_.push_back(std::move(term));
    index.postings_.push_back(std::move(list));
  }
  r.expect_end();
  return index;
}

void InvertedIndex::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  save(out);
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

InvertedIndex InvertedIndex::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return load(in);
}

}  // namespace odqa::index
