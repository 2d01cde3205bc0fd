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

#include "odqa/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "odqa/error.hpp"

namespace odqa::config {
namespace {

std::string_view trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw InputError("config: " + std::string(key) + " = \"" + std::string(value) +
                   "\": expected " + std::string(expected));
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    bad_value(key, value, "an unsigned integer");
  }
  return v;
}

double parse_real(std::string_view key, std::string_view value) {
  // std::from_chars for double is not available on every toolchain we target.
  const std::string copy(value);
  char* end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(v)) {
    bad_value(key, value, "a real number");
  }
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  bad_value(key, value, "true or false");
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest spelling that still round-trips.
  for (int precision = 1; precision <= 17; ++precision) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", precision, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

std::vector<std::pair<std::string, std::string>> entries(const PipelineConfig& c) {
  return {
      {"bm25.k1", format_real(c.bm25.k1)},
      {"bm25.b", format_real(c.bm25.b)},
      {"filter.min_chars", std::to_string(c.filter.min_chars)},
      {"filter.max_chars", std::to_string(c.filter.max_chars)},
      {"filter.require_single_object", c.filter.require_single_object ? "true" : "false"},
      {"assembly.k_retrieve", std::to_string(c.assembly.k_retrieve)},
      {"assembly.k_reader", std::to_string(c.assembly.k_reader)},
      {"assembly.window_n", std::to_string(c.assembly.window_n)},
      {"strategy", std::string(qagen::to_string(c.strategy))},
      {"seed", std::to_string(c.seed)},
  };
}

}  // namespace

void PipelineConfig::validate() const {
  bm25.validate();
  filter.validate();
  assembly.validate();
}

void apply(PipelineConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "bm25.k1") {
    c.bm25.k1 = parse_real(key, value);
    c.bm25_explicit = true;
  } else if (key == "bm25.b") {
    c.bm25.b = parse_real(key, value);
    c.bm25_explicit = true;
  } else if (key == "filter.min_chars") {
    c.filter.min_chars = parse_unsigned(key, value);
  } else if (key == "filter.max_chars") {
    c.filter.max_chars = parse_unsigned(key, value);
  } else if (key == "filter.require_single_object") {
    c.filter.require_single_object = parse_bool(key, value);
  } else if (key == "assembly.k_retrieve") {
    c.assembly.k_retrieve = parse_unsigned(key, value);
  } else if (key == "assembly.k_reader") {
    c.assembly.k_reader = parse_unsigned(key, value);
  } else if (key == "assembly.window_n") {
    c.assembly.window_n = parse_unsigned(key, value);
  } else if (key == "strategy") {
    c.strategy = qagen::parse_strategy(value);
  } else if (key == "seed") {
    c.seed = parse_unsigned(key, value);
  } else {
    throw InputError("config: unknown key \"" + std::string(key) + "\"");
  }
}

void apply_assignment(PipelineConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw InputError("config: expected key=value, got \"" + std::string(assignment) + "\"");
  }
  apply(config, assignment.substr(0, eq), assignment.substr(eq + 1));
}

void load(PipelineConfig& config, std::istream& in, const std::string& source) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  if (trim(content).starts_with("{")) {
    const auto j = nlohmann::json::parse(content, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("config") ||
        !j["config"].is_object()) {
      throw InputError(source + ": JSON config must be an object with a \"config\" member");
    }
    for (const auto& [key, value] : j["config"].items()) {
      apply(config, key, value.is_string() ? value.get<std::string>() : value.dump());
    }
    return;
  }

  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      apply_assignment(config, t);
    } catch (const InputError& e) {
      throw InputError(source, line_no, e.what());
    }
  }
}

void load_file(PipelineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  load(config, in, path.string());
}

std::string to_text(const PipelineConfig& config) {
  std::string out;
  for (const auto& [key, value] : entries(config)) out += key + " = " + value + "\n";
  return out;
}

std::string to_json(const PipelineConfig& config) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [key, value] : entries(config)) j[key] = value;
  return j.dump();
}

}  // namespace odqa::config
