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

#include <sstream>
#include <string>

#include "benchmark/benchmark.h"
#include "fixtures.hpp"
#include "odqa/assemble.hpp"
#include "odqa/index.hpp"
#include "odqa/pipeline.hpp"
#include "odqa/qagen.hpp"
#include "odqa/text.hpp"

namespace {

using namespace odqa;

const testing::World& world() {
  static const testing::World w = testing::make_world(5000, 200, 1);
  return w;
}

const index::InvertedIndex& shared_index() {
  static const index::InvertedIndex idx = index::InvertedIndex::build(world().store);
  return idx;
}

void BM_Tokenize(benchmark::State& state) {
  const auto& passages = world().store.passages();
  std::size_t bytes = 0;
  for (auto _ : state) {
    for (const auto& p : passages) {
      benchmark::DoNotOptimize(text::tokenize(p.text));
      bytes += p.text.size();
    }
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Tokenize)->Unit(benchmark::kMillisecond);

void BM_BuildIndex(benchmark::State& state) {
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(index::InvertedIndex::build(world().store, {}, workers));
  }
}
BENCHMARK(BM_BuildIndex)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Retrieve(benchmark::State& state) {
  const auto& idx = shared_index();
  std::vector<text::TokenSeq> queries;
  for (const auto& line : world().sentence_lines) {
    queries.push_back(text::tokenize(qagen::parse_aligned_sentence(line).text));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(idx.retrieve(queries[i++ % queries.size()], 100));
  }
}
BENCHMARK(BM_Retrieve);

void BM_Synthesize(benchmark::State& state) {
  const auto& idx = shared_index();
  const std::string input = testing::join_lines(world().sentence_lines);
  const auto config = pipeline::effective_config({}, idx);
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    std::istringstream in(input);
    std::ostringstream out;
    benchmark::DoNotOptimize(pipeline::synthesize(in, out, idx, world().store, config, workers));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(world().sentence_lines.size()));
}
BENCHMARK(BM_Synthesize)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
