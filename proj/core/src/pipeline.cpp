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

#include "odqa/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <istream>
#include <ostream>
#include <thread>
#include <vector>

#include "json.hpp"
#include "odqa/error.hpp"

namespace odqa::pipeline {
namespace {

constexpr std::size_t kBatchLines = 2048;

struct Job {
  std::uint64_t line = 0;
  qagen::AlignedSentence sentence;
  Outcome outcome;
  std::exception_ptr error;
};

void run_jobs(std::vector<Job>& jobs, const index::InvertedIndex& index,
              const corpus::PassageStore& store, const config::PipelineConfig& config,
              unsigned workers) {
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < jobs.size(); i += stride) {
      try {
        jobs[i].outcome = process_sentence(jobs[i].sentence, jobs[i].line, index, store, config);
      } catch (...) {
        jobs[i].error = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(std::max(1U, workers), jobs.size());
  if (threads <= 1) {
    work(0, 1);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
}

}  // namespace

std::size_t SynthesisStats::discarded_total() const {
  std::size_t total = 0;
  for (const auto& [reason, count] : discarded) total += count;
  return total;
}

Outcome process_sentence(const qagen::AlignedSentence& sentence, std::uint64_t line,
                         const index::InvertedIndex& index, const corpus::PassageStore& store,
                         const config::PipelineConfig& config) {
  const std::size_t n = config.assembly.window_n;
  qagen::PairResult made;
  switch (config.strategy) {
    case qagen::Strategy::kOurMethod:
      if (const auto reject = qagen::filter_sentence(sentence, config.filter)) {
        return std::string(qagen::to_string(*reject));
      }
      made = qagen::make_pair_object(sentence, n);
      break;
    case qagen::Strategy::kRandEnt: {
      if (const auto reject = qagen::filter_sentence(sentence, config.filter)) {
        return std::string(qagen::to_string(*reject));
      }
      qagen::Rng rng = qagen::Rng::for_line(config.seed, line);
      made = qagen::make_pair_rand_ent(sentence, rng, n);
      break;
    }
    case qagen::Strategy::kRandSent: {
      qagen::Rng rng = qagen::Rng::for_line(config.seed, line);
      made = qagen::make_pair_rand_sent(sentence.text, sentence.entities, rng, n);
      break;
    }
  }
  if (const auto* reject = std::get_if<qagen::RejectReason>(&made)) {
    return std::string(qagen::to_string(*reject));
  }
  auto& pair = std::get<qagen::QAPair>(made);
  pair.source_id = sentence.doc_id.value_or("line:" + std::to_string(line));

  auto assembled = assemble::assemble_sample(pair, index, store, config.assembly);
  if (const auto* discard = std::get_if<assemble::DiscardReason>(&assembled)) {
    return std::string(assemble::to_string(*discard));
  }
  return std::move(std::get<assemble::TrainingSample>(assembled));
}

config::PipelineConfig effective_config(const config::PipelineConfig& config,
                                        const index::InvertedIndex& index) {
  config::PipelineConfig effective = config;
  if (!effective.bm25_explicit) {
    effective.bm25 = index.params();
    effective.bm25_explicit = true;
  }
  return effective;
}

SynthesisStats synthesize(std::istream& sentences, std::ostream& samples,
                          const index::InvertedIndex& index, const corpus::PassageStore& store,
                          const config::PipelineConfig& config, unsigned workers,
                          const std::string& source) {
  config.validate();
  if (config.bm25_explicit && !(config.bm25 == index.params())) {
    throw std::logic_error("synthesize: index bm25 parameters differ from the config");
  }

  SynthesisStats stats;
  std::vector<Job> batch;
  std::string line;
  std::uint64_t line_no = 0;

  auto flush = [&] {
    run_jobs(batch, index, store, config, workers);
    for (Job& job : batch) {
      if (job.error) {
        try {
          std::rethrow_exception(job.error);
        } catch (const InputError& e) {
          throw InputError(source, job.line, e.what());
        }
      }
      ++stats.input;
      if (auto* sample = std::get_if<assemble::TrainingSample>(&job.outcome)) {
        samples << assemble::to_json_line(*sample) << '\n';
        ++stats.emitted;
      } else {
        ++stats.discarded[std::get<std::string>(job.outcome)];
      }
    }
    batch.clear();
    if (!samples) throw std::runtime_error("failed writing samples");
  };

  while (std::getline(sentences, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Job job;
    job.line = line_no;
    try {
      job.sentence = qagen::parse_aligned_sentence(line);
    } catch (const InputError& e) {
      throw InputError(source, line_no, e.what());
    }
    batch.push_back(std::move(job));
    if (batch.size() == kBatchLines) flush();
  }
  flush();
  return stats;
}

std::string stats_json(const SynthesisStats& stats, const config::PipelineConfig& config) {
  nlohmann::ordered_json j;
  j["input"] = stats.input;
  j["emitted"] = stats.emitted;
  j["discarded_total"] = stats.discarded_total();
  j["discarded"] = nlohmann::ordered_json::object();
  for (const auto& [reason, count] : stats.discarded) j["discarded"][reason] = count;
  j["config"] = nlohmann::ordered_json::parse(config::to_json(config));
  return j.dump(2) + "\n";
}

}  // namespace odqa::pipeline
