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

#ifndef ODQA_EVAL_HPP_
#define ODQA_EVAL_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "odqa/error.hpp"

namespace odqa::eval {

struct EvalExample {
  std::string id;
  std::string question;
  std::vector<std::string> gold_answers;  // never empty
};

struct EvalResult {
  std::size_t n_total = 0;
  std::size_t n_positive = 0;
  double em = 0.0;  // n_positive / n_total
};

using Predictions = std::unordered_map<std::string, std::string>;

class MissingPredictionError : public InputError {
 public:
  explicit MissingPredictionError(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const noexcept { return ids_; }

 private:
  std::vector<std::string> ids_;
};

// True iff the canonicalized prediction equals some canonicalized gold.
// Throws InputError when `golds` is empty.
bool exact_match(std::string_view prediction, std::span<const std::string> golds);

// Throws MissingPredictionError naming every example without a prediction,
// InputError when `examples` is empty.
EvalResult evaluate(const Predictions& predictions, std::span<const EvalExample> examples);

// {"question": str, "answers": [str, ...], "id"?: str|int} per line. Lines
// without an id get their 1-based line number.
std::vector<EvalExample> load_benchmark(std::istream& in,
                                        const std::string& source = "<benchmark>");
std::vector<EvalExample> load_benchmark(const std::filesystem::path& path);

// {"id": str|int, "prediction": str} per line.
Predictions load_predictions(std::istream& in, const std::string& source = "<predictions>");
Predictions load_predictions(const std::filesystem::path& path);

std::string prediction_json_line(std::string_view id, std::string_view prediction);
std::string result_json(const EvalResult& result);

}  // namespace odqa::eval

#endif  // ODQA_EVAL_HPP_
