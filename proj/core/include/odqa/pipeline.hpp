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

#ifndef ODQA_PIPELINE_HPP_
#define ODQA_PIPELINE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>

#include "odqa/assemble.hpp"
#include "odqa/config.hpp"
#include "odqa/corpus.hpp"
#include "odqa/index.hpp"
#include "odqa/qagen.hpp"

namespace odqa::pipeline {

struct SynthesisStats {
  std::size_t input = 0;
  std::size_t emitted = 0;
  std::map<std::string, std::size_t> discarded;  // by reason name

  std::size_t discarded_total() const;
};

// A sample, or the name of the reason the sentence produced none.
using Outcome = std::variant<assemble::TrainingSample, std::string>;

// Question generation under config.strategy followed by assembly. The
// random stream is derived from (config.seed, line), so results do not
// depend on which worker handles the line.
Outcome process_sentence(const qagen::AlignedSentence& sentence, std::uint64_t line,
                         const index::InvertedIndex& index, const corpus::PassageStore& store,
                         const config::PipelineConfig& config);

// The configuration a synthesis run actually uses: bm25 parameters come
// from the index unless the config set them.
config::PipelineConfig effective_config(const config::PipelineConfig& config,
                                        const index::InvertedIndex& index);

// Reads aligned-sentence JSON Lines and writes one training sample per
// line that survives, in input order. The index must already carry the
// effective bm25 parameters. Output is identical for any worker count.
SynthesisStats synthesize(std::istream& sentences, std::ostream& samples,
                          const index::InvertedIndex& index, const corpus::PassageStore& store,
                          const config::PipelineConfig& config, unsigned workers = 1,
                          const std::string& source = "<sentences>");

// {"input", "emitted", "discarded": {...}, "config": {...}}
std::string stats_json(const SynthesisStats& stats, const config::PipelineConfig& config);

}  // namespace odqa::pipeline

#endif  // ODQA_PIPELINE_HPP_
