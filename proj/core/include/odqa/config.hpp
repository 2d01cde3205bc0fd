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

#ifndef ODQA_CONFIG_HPP_
#define ODQA_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "odqa/assemble.hpp"
#include "odqa/index.hpp"
#include "odqa/qagen.hpp"

namespace odqa::config {

// Every tunable constant of the pipeline.
//
// Text grammar, one setting per line:
//
//   # comment
//   key = value
//
// Blank lines and lines starting with '#' are ignored; whitespace around
// keys and values is trimmed. Keys:
//
//   bm25.k1                      real >= 0            (1.2)
//   bm25.b                       real in [0, 1]       (0.75)
//   filter.min_chars             integer              (50)
//   filter.max_chars             integer              (250)
//   filter.require_single_object true | false        (true)
//   assembly.k_retrieve          integer              (100)
//   assembly.k_reader            integer              (40)
//   assembly.window_n            integer              (3)
//   strategy                     our_method | rand_ent | rand_sent
//   seed                         unsigned integer     (0)
//
// Unknown keys and malformed values are errors.
struct PipelineConfig {
  index::Bm25Params bm25;
  // False until a bm25.* key is set; synthesis then uses the parameters the
  // index was built with.
  bool bm25_explicit = false;
  qagen::SentenceFilterConfig filter;
  assemble::AssemblyConfig assembly;
  qagen::Strategy strategy = qagen::Strategy::kOurMethod;
  std::uint64_t seed = 0;

  void validate() const;
};

// Throws InputError for an unknown key or a bad value.
void apply(PipelineConfig& config, std::string_view key, std::string_view value);
// Parses "key=value".
void apply_assignment(PipelineConfig& config, std::string_view assignment);

// Applies a key-value file on top of `config`. Also accepts a synthesis
// stats sidecar (a JSON object with a "config" member), so a run can be
// repeated from its own output.
void load(PipelineConfig& config, std::istream& in, const std::string& source = "<config>");
void load_file(PipelineConfig& config, const std::filesystem::path& path);

// Canonical text form; load() of this text reproduces `config` with all
// bm25 keys explicit.
std::string to_text(const PipelineConfig& config);

// Flat {"key": "value"} object with the same keys and value spellings.
std::string to_json(const PipelineConfig& config);

}  // namespace odqa::config

#endif  // ODQA_CONFIG_HPP_
