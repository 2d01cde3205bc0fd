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

// odqa: builds reader training data from a passage corpus and
// triple-aligned sentences, and scores predictions by exact match.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "odqa/config.hpp"
#include "odqa/corpus.hpp"
#include "odqa/error.hpp"
#include "odqa/eval.hpp"
#include "odqa/index.hpp"
#include "odqa/pipeline.hpp"
#include "odqa/reader.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

// Writes to "<path>.partial" and renames on commit; an uncommitted file is
// removed on destruction so failed runs leave nothing behind.
class OutputFile {
 public:
  explicit OutputFile(fs::path path)
      : path_(std::move(path)), partial_(path_.string() + ".partial") {
    stream_.open(partial_, std::ios::binary | std::ios::trunc);
    if (!stream_) throw odqa::InputError("cannot write " + partial_.string());
  }
  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;
  ~OutputFile() {
    if (!committed_) {
      stream_.close();
      std::error_code ec;
      fs::remove(partial_, ec);
    }
  }

  std::ofstream& stream() { return stream_; }

  void commit() {
    stream_.flush();
    if (!stream_) throw std::runtime_error("write failed: " + partial_.string());
    stream_.close();
    fs::rename(partial_, path_);
    committed_ = true;
  }

 private:
  fs::path path_;
  fs::path partial_;
  std::ofstream stream_;
  bool committed_ = false;
};

struct GlobalOptions {
  std::string config_file;
  std::vector<std::string> overrides;
  unsigned workers = 1;
};

odqa::config::PipelineConfig load_config(const GlobalOptions& g) {
  odqa::config::PipelineConfig cfg;
  if (!g.config_file.empty()) odqa::config::load_file(cfg, g.config_file);
  for (const auto& o : g.overrides) odqa::config::apply_assignment(cfg, o);
  return cfg;
}

void print_error(std::string_view kind, const std::string& message,
                 const std::vector<std::string>* ids = nullptr) {
  ordered_json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  if (ids) j["error"]["missing_ids"] = *ids;
  std::cerr << j.dump(-1, ' ', false, ordered_json::error_handler_t::replace) << "\n";
}

// ---------------------------------------------------------------- commands

struct IngestArgs {
  std::string passages, docs, out;
  std::size_t segment_words = odqa::corpus::kDefaultSegmentWords;
};

void run_ingest(const IngestArgs& a) {
  ordered_json report;
  odqa::corpus::PassageStore store;
  if (!a.passages.empty()) {
    store = odqa::corpus::ingest_passage_file(fs::path(a.passages));
  } else {
    auto result = odqa::corpus::ingest_document_file(fs::path(a.docs), a.segment_words);
    report["documents"] = result.stats.documents;
    report["empty_documents"] = result.stats.empty_documents;
    store = std::move(result.store);
  }
  OutputFile out(a.out);
  store.save(out.stream());
  out.commit();
  report["passages"] = store.doc_count();
  report["avg_word_count"] = store.avg_word_count();
  std::cout << report.dump() << "\n";
}

struct IndexArgs {
  std::string store, out;
  std::optional<double> k1, b;
};

void run_index(const IndexArgs& a, const GlobalOptions& g) {
  auto cfg = load_config(g);
  if (a.k1) cfg.bm25.k1 = *a.k1;
  if (a.b) cfg.bm25.b = *a.b;
  cfg.bm25.validate();
  const auto store = odqa::corpus::PassageStore::load_file(a.store);
  const auto index = odqa::index::InvertedIndex::build(store, cfg.bm25, g.workers);
  OutputFile out(a.out);
  index.save(out.stream());
  out.commit();
  ordered_json report;
  report["passages"] = index.doc_count();
  report["terms"] = index.term_count();
  report["avgdl"] = index.avgdl();
  report["k1"] = index.params().k1;
  report["b"] = index.params().b;
  std::cout << report.dump() << "\n";
}

struct SynthesizeArgs {
  std::string index, store, sentences, out;
  std::optional<std::string> strategy;
  std::optional<std::uint64_t> seed;
};

void run_synthesize(const SynthesizeArgs& a, const GlobalOptions& g) {
  auto cfg = load_config(g);
  if (a.strategy) odqa::config::apply(cfg, "strategy", *a.strategy);
  if (a.seed) cfg.seed = *a.seed;
  cfg.validate();

  auto index = odqa::index::InvertedIndex::load_file(a.index);
  const auto store = odqa::corpus::PassageStore::load_file(a.store);
  const auto effective = odqa::pipeline::effective_config(cfg, index);
  index.set_params(effective.bm25);

  std::ifstream sentences(a.sentences, std::ios::binary);
  if (!sentences) throw odqa::InputError("cannot open " + a.sentences);

  OutputFile samples(a.out);
  OutputFile sidecar(a.out + ".stats.json");
  const auto stats = odqa::pipeline::synthesize(sentences, samples.stream(), index, store,
                                                effective, g.workers, a.sentences);
  const std::string stats_text = odqa::pipeline::stats_json(stats, effective);
  sidecar.stream() << stats_text;
  samples.commit();
  sidecar.commit();
  std::cout << stats_text;
}

struct EvaluateArgs {
  std::string gold, pred;
};

void run_evaluate(const EvaluateArgs& a) {
  const auto examples = odqa::eval::load_benchmark(fs::path(a.gold));
  const auto predictions = odqa::eval::load_predictions(fs::path(a.pred));
  const auto result = odqa::eval::evaluate(predictions, examples);
  std::cout << odqa::eval::result_json(result) << "\n";
}

struct RetrieveArgs {
  std::string index, query, store;
  std::size_t k = 10;
};

void run_retrieve(const RetrieveArgs& a, const GlobalOptions& g) {
  auto index = odqa::index::InvertedIndex::load_file(a.index);
  const auto cfg = load_config(g);
  if (cfg.bm25_explicit) index.set_params(cfg.bm25);
  std::optional<odqa::corpus::PassageStore> store;
  if (!a.store.empty()) store = odqa::corpus::PassageStore::load_file(a.store);

  for (const auto& hit : index.retrieve(odqa::text::tokenize(a.query), a.k)) {
    ordered_json j;
    j["rank"] = hit.rank;
    j["id"] = hit.passage_id;
    j["score"] = hit.score;
    if (store) j["title"] = store->get(hit.passage_id).title;
    std::cout << j.dump(-1, ' ', false, ordered_json::error_handler_t::replace) << "\n";
  }
}

struct StatsArgs {
  std::string store, index;
};

void run_stats(const StatsArgs& a) {
  ordered_json j;
  const auto store = odqa::corpus::PassageStore::load_file(a.store);
  j["store"]["doc_count"] = store.doc_count();
  j["store"]["total_words"] = store.total_words();
  j["store"]["avg_word_count"] = store.avg_word_count();
  if (!a.index.empty()) {
    const auto index = odqa::index::InvertedIndex::load_file(a.index);
    j["index"]["version"] = odqa::index::InvertedIndex::kFormatVersion;
    j["index"]["doc_count"] = index.doc_count();
    j["index"]["terms"] = index.term_count();
    j["index"]["total_tokens"] = index.total_length();
    j["index"]["avgdl"] = index.avgdl();
    j["index"]["k1"] = index.params().k1;
    j["index"]["b"] = index.params().b;
  }
  std::cout << j.dump(2) << "\n";
}

struct PredictArgs {
  std::string samples, out;
};

void run_predict(const PredictArgs& a) {
  std::ifstream in(a.samples, std::ios::binary);
  if (!in) throw odqa::InputError("cannot open " + a.samples);
  OutputFile out(a.out);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("question") ||
        !j["question"].is_string() || !j.contains("ctxs") || !j["ctxs"].is_array()) {
      throw odqa::InputError(a.samples, line_no, "expected a sample with question and ctxs");
    }
    std::vector<std::string> passages;
    for (const auto& ctx : j["ctxs"]) {
      if (!ctx.is_object() || !ctx.contains("text") || !ctx["text"].is_string()) {
        throw odqa::InputError(a.samples, line_no, "ctx without string \"text\"");
      }
      passages.push_back(ctx["text"].get<std::string>());
    }
    std::string id = std::to_string(line_no);
    if (j.contains("id")) id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    const std::string answer =
        odqa::reader::predict(j["question"].get<std::string>(), passages);
    out.stream() << odqa::eval::prediction_json_line(id, answer) << "\n";
  }
  out.commit();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"odqa: cloze-question training data for open-domain QA readers"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--config", global.config_file,
                 "key = value config file, or a synthesis .stats.json sidecar")
      ->check(CLI::ExistingFile);
  app.add_option("--set", global.overrides, "Override one config key (key=value)");
  app.add_option("--workers", global.workers, "Worker threads")->check(CLI::PositiveNumber);

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Build a passage store");
  auto* passages_opt = ingest_cmd->add_option("--passages", ingest.passages,
                                              "TSV passage file (id, text, title)");
  auto* docs_opt = ingest_cmd->add_option("--docs", ingest.docs,
                                          "JSON Lines documents to split into passages");
  passages_opt->excludes(docs_opt);
  ingest_cmd->add_option("--out", ingest.out, "Store file to write")->required();
  ingest_cmd->add_option("--segment-words", ingest.segment_words, "Words per passage")
      ->check(CLI::PositiveNumber);

  IndexArgs index_args;
  auto* index_cmd = app.add_subcommand("index", "Build a BM25 index over a store");
  index_cmd->add_option("--store", index_args.store)->required();
  index_cmd->add_option("--out", index_args.out)->required();
  index_cmd->add_option("--k1", index_args.k1);
  index_cmd->add_option("--b", index_args.b);

  SynthesizeArgs synth;
  auto* synth_cmd = app.add_subcommand("synthesize", "Generate reader training samples");
  synth_cmd->add_option("--index", synth.index)->required();
  synth_cmd->add_option("--store", synth.store)->required();
  synth_cmd->add_option("--sentences", synth.sentences, "Aligned-sentence JSON Lines")
      ->required();
  synth_cmd->add_option("--out", synth.out, "Sample JSON Lines to write")->required();
  synth_cmd->add_option("--strategy", synth.strategy, "our_method | rand_ent | rand_sent");
  synth_cmd->add_option("--seed", synth.seed);

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Exact-match score of predictions");
  eval_cmd->add_option("--gold", eval_args.gold)->required();
  eval_cmd->add_option("--pred", eval_args.pred)->required();

  RetrieveArgs retrieve;
  auto* retrieve_cmd = app.add_subcommand("retrieve", "Top-k BM25 passages for a query");
  retrieve_cmd->add_option("--index", retrieve.index)->required();
  retrieve_cmd->add_option("--query", retrieve.query)->required();
  retrieve_cmd->add_option("--k", retrieve.k)->check(CLI::PositiveNumber);
  retrieve_cmd->add_option("--store", retrieve.store, "Add passage titles to the output");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Summarize a store and optionally an index");
  stats_cmd->add_option("--store", stats.store)->required();
  stats_cmd->add_option("--index", stats.index);

  PredictArgs predict;
  auto* predict_cmd =
      app.add_subcommand("predict", "Answer samples with the frequency baseline reader");
  predict_cmd->add_option("--samples", predict.samples)->required();
  predict_cmd->add_option("--out", predict.out, "Prediction JSON Lines to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("input", e.what());
    return kExitInput;
  }

  try {
    if (*ingest_cmd) {
      if (ingest.passages.empty() == ingest.docs.empty()) {
        throw odqa::InputError("ingest needs exactly one of --passages or --docs");
      }
      run_ingest(ingest);
    } else if (*index_cmd) {
      run_index(index_args, global);
    } else if (*synth_cmd) {
      run_synthesize(synth, global);
    } else if (*eval_cmd) {
      run_evaluate(eval_args);
    } else if (*retrieve_cmd) {
      run_retrieve(retrieve, global);
    } else if (*stats_cmd) {
      run_stats(stats);
    } else if (*predict_cmd) {
      run_predict(predict);
    }
  } catch (const odqa::eval::MissingPredictionError& e) {
    print_error("input", e.what(), &e.ids());
    return kExitInput;
  } catch (const odqa::InputError& e) {
    print_error("input", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitInternal;
  }
  return 0;
}
