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

#include "odqa/eval.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include "json.hpp"
#include "odqa/text.hpp"

namespace odqa::eval {
namespace {

using nlohmann::json;

std::string join_ids(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) {
    if (!s.empty()) s += ", ";
    s += id;
  }
  return s;
}

// Calls fn(parsed_object, line_no) for each non-blank line.
template <typename Fn>
void for_each_json_line(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object()) {
      throw InputError(source, line_no, "not a JSON object");
    }
    fn(j, line_no);
  }
}

std::optional<std::string> id_field(const json& j, const std::string& source,
                                    std::size_t line_no) {
  const auto it = j.find("id");
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return it->dump();
  throw InputError(source, line_no, "\"id\" must be a string or integer");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

}  // namespace

MissingPredictionError::MissingPredictionError(std::vector<std::string> ids)
    : InputError("missing predictions for ids: " + join_ids(ids)), ids_(std::move(ids)) {}

bool exact_match(std::string_view prediction, std::span<const std::string> golds) {
  if (golds.empty()) throw InputError("exact_match: empty gold answer list");
  const std::string canonical = text::em_canonicalize(prediction);
  return std::any_of(golds.begin(), golds.end(), [&](const std::string& gold) {
    return text::em_canonicalize(gold) == canonical;
  });
}

EvalResult evaluate(const Predictions& predictions, std::span<const EvalExample> examples) {
  if (examples.empty()) throw InputError("evaluate: no examples");
  std::vector<std::string> missing;
  for (const EvalExample& ex : examples) {
    if (!predictions.contains(ex.id)) missing.push_back(ex.id);
  }
  if (!missing.empty()) throw MissingPredictionError(std::move(missing));

  EvalResult result;
  result.n_total = examples.size();
  for (const EvalExample& ex : examples) {
    if (exact_match(predictions.at(ex.id), ex.gold_answers)) ++result.n_positive;
  }
  result.em = static_cast<double>(result.n_positive) / static_cast<double>(result.n_total);
  return result;
}

std::vector<EvalExample> load_benchmark(std::istream& in, const std::string& source) {
  std::vector<EvalExample> examples;
  std::unordered_set<std::string> ids;
  for_each_json_line(in, source, [&](const json& j, std::size_t line_no) {
    const auto question = j.find("question");
    if (question == j.end() || !question->is_string()) {
      throw InputError(source, line_no, "missing string \"question\"");
    }
    const auto answers = j.find("answers");
    if (answers == j.end() || !answers->is_array() || answers->empty()) {
      throw InputError(source, line_no, "\"answers\" must be a non-empty array");
    }
    EvalExample ex;
    ex.id = id_field(j, source, line_no).value_or(std::to_string(line_no));
    ex.question = question->get<std::string>();
    for (const json& a : *answers) {
      if (!a.is_string()) throw InputError(source, line_no, "answers must be strings");
      ex.gold_answers.push_back(a.get<std::string>());
    }
    if (!ids.insert(ex.id).second) {
      throw InputError(source, line_no, "duplicate id \"" + ex.id + "\"");
    }
    examples.push_back(std::move(ex));
  });
  return examples;
}

std::vector<EvalExample> load_benchmark(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_benchmark(in, path.string());
}

Predictions load_predictions(std::istream& in, const std::string& source) {
  Predictions predictions;
  for_each_json_line(in, source, [&](const json& j, std::size_t line_no) {
    const auto id = id_field(j, source, line_no);
    if (!id) throw InputError(source, line_no, "missing \"id\"");
    const auto prediction = j.find("prediction");
    if (prediction == j.end() || !prediction->is_string()) {
      throw InputError(source, line_no, "missing string \"prediction\"");
    }
    if (!predictions.emplace(*id, prediction->get<std::string>()).second) {
      throw InputError(source, line_no, "duplicate id \"" + *id + "\"");
    }
  });
  return predictions;
}

Predictions load_predictions(const std::filesystem::path& path) {
  auto in = open_input(path);
  return load_predictions(in, path.string());
}

std::string prediction_json_line(std::string_view id, std::string_view prediction) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["prediction"] = prediction;
  return j.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::string result_json(const EvalResult& result) {
  nlohmann::ordered_json j;
  j["n"] = result.n_total;
  j["n_positive"] = result.n_positive;
  j["em"] = result.em;
  return j.dump();
}

}  // namespace odqa::eval
