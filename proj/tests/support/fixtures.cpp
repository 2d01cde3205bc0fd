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

#include "fixtures.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "odqa/text.hpp"

namespace odqa::testing {
namespace {

const std::vector<std::string> kSyllables = {
    "ka", "lo", "ven", "tri", "mor", "sa", "del", "qui", "ran", "bo", "zel", "fa",
    "nu", "pir", "gan", "to", "shi", "xe", "lum", "dra", "vor", "ith", "pel", "ush"};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

std::string quote_tsv(const std::string& field) {
  if (field.find_first_of("\t\"") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

nlohmann::ordered_json mention(std::string_view text, std::string_view surface,
                       std::size_t occurrence) {
  std::size_t pos = text.find(surface);
  for (std::size_t k = 0; k < occurrence && pos != std::string_view::npos; ++k) {
    pos = text.find(surface, pos + 1);
  }
  if (pos == std::string_view::npos) {
    throw std::logic_error("fixture: \"" + std::string(surface) + "\" not in \"" +
                           std::string(text) + "\"");
  }
  const std::size_t start = text::codepoint_count(text.substr(0, pos));
  return {{"surface", surface},
          {"start", start},
          {"end", start + text::codepoint_count(surface)}};
}

struct Templates {
  // {S} subject, {O} object, {E} extra entity.
  std::string sentence;
  std::string positive_a;
  std::string positive_b;
};

const std::vector<Templates> kTemplates = {
    {"{S} is a former lord mayor of {O} and a prominent businessman in {E}.",
     "local newspapers reported that in {O} , {S} opened a small workshop",
     "{S} later returned to {O} where the family kept an orchard"},
    {"{S} was born in {O}, a market town in the northern part of {E}.",
     "according to the parish register the town of {O} recorded {S} among its children",
     "the young {S} left {O} for the capital at sixteen"},
    {"{S} studied painting at the academy of {O} before moving to {E} in middle age.",
     "several canvases by {S} still hang in {O} today",
     "teachers from {O} praised {S} for patient brushwork"},
    {"The poet {S} spent most winters in {O} writing letters to friends in {E}.",
     "a collection of letters sent from {O} by {S} was published later",
     "{S} described {O} as quiet and cold"},
};

std::string fill(std::string t, const Fact& f) {
  for (const auto& [key, value] :
       {std::pair<std::string, std::string>{"{S}", f.subject}, {"{O}", f.object},
        {"{E}", f.extra}}) {
    for (std::size_t pos = t.find(key); pos != std::string::npos; pos = t.find(key, pos)) {
      t.replace(pos, key.size(), value);
      pos += value.size();
    }
  }
  return t;
}

}  // namespace

std::string NameGenerator::next() {
  while (true) {
    std::string name;
    const std::size_t parts = 2 + rng_.below(2);
    for (std::size_t i = 0; i < parts; ++i) name += rng_.pick(kSyllables);
    name = capitalize(name);
    if (std::find(used_.begin(), used_.end(), name) == used_.end()) {
      used_.push_back(name);
      return name;
    }
  }
}

const std::vector<std::string>& filler_vocabulary() {
  static const std::vector<std::string> words = {
      "river",   "market",  "season",  "village", "harbor",  "bridge",  "winter",
      "garden",  "library", "council", "railway", "factory", "meadow",  "stone",
      "castle",  "valley",  "forest",  "chapel",  "merchant", "farmer", "lantern",
      "window",  "street",  "tower",   "coast",   "island",  "mill",    "wool",
      "grain",   "copper",  "silver",  "timber",  "canal",   "school",  "choir",
      "festival", "harvest", "journey", "storm",  "signal",  "engine",  "ledger",
      "painting", "sailor", "soldier", "teacher", "doctor",  "treaty",  "census",
      "border",  "province", "record", "archive", "estate",  "orchard", "quarry",
      "the",     "the",     "of",      "of",      "and",     "a",       "to",
      "with",    "on",      "for",
  };
  return words;
}

std::string filler(FixtureRng& rng, std::size_t words) {
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i > 0) out.push_back(' ');
    out += rng.pick(filler_vocabulary());
  }
  return out;
}

std::string mention_json(std::string_view text, std::string_view surface,
                         std::size_t occurrence) {
  return mention(text, surface, occurrence).dump();
}

std::string sentence_json(const SentenceSpec& spec) {
  nlohmann::ordered_json j;
  j["text"] = spec.text;
  if (!spec.subject.empty()) j["subject"] = mention(spec.text, spec.subject, 0);
  j["predicate"] = spec.predicate;
  if (spec.objects.size() == 1) {
    j["object"] = mention(spec.text, spec.objects[0], spec.object_occurrence);
  } else if (!spec.objects.empty()) {
    auto& arr = j["object"] = nlohmann::ordered_json::array();
    for (const auto& o : spec.objects) arr.push_back(mention(spec.text, o, 0));
  }
  auto& ents = j["entities"] = nlohmann::ordered_json::array();
  for (const auto& e : spec.entities) ents.push_back(mention(spec.text, e, 0));
  if (!spec.doc_id.empty()) j["doc_id"] = spec.doc_id;
  return j.dump();
}

World make_world(std::size_t passages, std::size_t sentences, std::uint64_t seed) {
  if (sentences < 20) throw std::invalid_argument("make_world needs >= 20 sentences");
  FixtureRng rng(seed);
  NameGenerator names(rng);

  std::vector<std::string> categories;
  for (const auto& [category, count] :
       {std::pair<std::string, std::size_t>{"too_short", 4}, {"too_long", 3},
        {"multi_object", 3}, {"leaky", 3}, {"absent", 4}, {"trivial_only", 3}}) {
    categories.insert(categories.end(), count, category);
  }
  categories.resize(sentences, "normal");
  std::shuffle(categories.begin(), categories.end(), rng.engine());

  World world;
  std::vector<std::pair<std::string, std::string>> docs;  // title, text
  auto padded = [&](const std::string& core) {
    return filler(rng, 15 + rng.below(25)) + " " + core + " " + filler(rng, 15 + rng.below(25));
  };

  for (std::size_t i = 0; i < sentences; ++i) {
    Fact f;
    f.subject = names.next() + " " + names.next();
    f.object = names.next();
    f.extra = names.next();
    f.category = categories[i];
    const Templates& t = kTemplates[i % kTemplates.size()];

    SentenceSpec spec;
    spec.subject = f.subject;
    spec.objects = {f.object};
    spec.entities = {f.subject, f.object, f.extra};
    spec.doc_id = "s" + std::to_string(i);
    if (f.category == "too_short") {
      spec.text = f.subject + " visited " + f.object + ".";
      spec.entities = {f.subject, f.object};
    } else if (f.category == "too_long") {
      spec.text = fill(t.sentence, f);
      spec.text.pop_back();
      while (spec.text.size() <= 260) spec.text += " and the " + filler(rng, 3);
      spec.text += ".";
    } else if (f.category == "multi_object") {
      spec.text = fill(t.sentence, f);
      spec.objects = {f.object, f.extra};
    } else if (f.category == "leaky") {
      spec.text = fill("{O} native {S} returned to {O} after many years abroad in {E}.", f);
      spec.object_occurrence = 1;
    } else {
      spec.text = fill(t.sentence, f);
    }
    world.sentence_lines.push_back(sentence_json(spec));

    const std::string sentence = fill(t.sentence, f);
    if (f.category == "normal" || f.category == "too_short" || f.category == "too_long" ||
        f.category == "multi_object" || f.category == "leaky") {
      docs.emplace_back(f.subject, padded(fill(t.positive_a, f)));
    }
    if (f.category == "normal") {
      docs.emplace_back(f.subject, padded(fill(t.positive_b, f)));
    }
    if (f.category == "normal" || f.category == "trivial_only") {
      docs.emplace_back(f.subject, padded(sentence));
    }
    docs.emplace_back(f.subject, padded(fill("{S} corresponded with scholars in {E}", f)));
    world.facts.push_back(std::move(f));
  }

  if (docs.size() > passages) throw std::invalid_argument("make_world: too few passages");
  while (docs.size() < passages) {
    std::string body = filler(rng, 60 + rng.below(40));
    if (rng.chance(0.3)) body += " " + rng.pick(world.facts).subject + " " + filler(rng, 5);
    docs.emplace_back(names.next() + " " + names.next(), std::move(body));
  }

  std::vector<corpus::PassageId> ids(docs.size());
  std::iota(ids.begin(), ids.end(), corpus::PassageId{0});
  std::shuffle(ids.begin(), ids.end(), rng.engine());
  std::vector<corpus::Passage> out(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    out[ids[i]] = corpus::make_passage(ids[i], docs[i].first, docs[i].second);
  }
  world.store = corpus::PassageStore::from_passages(std::move(out));
  return world;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) out += line + "\n";
  return out;
}

std::string to_passage_tsv(const corpus::PassageStore& store) {
  std::string out = "id\ttext\ttitle\n";
  for (const auto& p : store.passages()) {
    out += std::to_string(p.id) + "\t" + quote_tsv(p.text) + "\t" + quote_tsv(p.title) + "\n";
  }
  return out;
}

std::string random_document(FixtureRng& rng, std::size_t words) {
  static const std::vector<std::string> gaps = {" ", " ", " ", "  ", "\t", "\n", " \n  "};
  std::string out;
  if (rng.chance(0.5)) out += rng.pick(gaps);
  for (std::size_t i = 0; i < words; ++i) {
    if (i > 0) out += rng.pick(gaps);
    out += rng.pick(filler_vocabulary());
    if (rng.chance(0.1)) out += ",";
  }
  if (rng.chance(0.5)) out += rng.pick(gaps);
  return out;
}

qagen::QAPair ranked_pair() {
  qagen::QAPair pair;
  pair.question = "He played for the [MASK] in the final.";
  pair.answer = "Zorbu";
  pair.left_ctx = {"played", "for", "the"};
  pair.right_ctx = {"in", "the", "final"};
  return pair;
}

RankedFixture ranked_fixture(std::span<const oracle::Label> labels, FixtureRng& rng) {
  static const std::vector<std::string> positive = {
      "critics said zorbu was the best side that year",
      "zorbu won the league title again",
      "a history of the club known as zorbu",
      "they played for the zorbu in the final but zorbu also toured abroad",
  };
  static const std::vector<std::string> trivial = {
      "he played for the zorbu before retiring",
      "the cup went to zorbu in the final",
      "played for the zorbu in the final",
      "she played for the zorbu and then zorbu in the final",
  };
  static const std::vector<std::string> negative = {
      "the final was played in the rain", "nothing about the club appears here",
      "zorb and bu are unrelated words",
  };
  RankedFixture out;
  std::vector<corpus::Passage> passages;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& pool = labels[i] == oracle::Label::kPositive  ? positive
                       : labels[i] == oracle::Label::kTrivial ? trivial
                                                              : negative;
    const auto id = static_cast<corpus::PassageId>(1000 + i);
    passages.push_back(corpus::make_passage(id, "Title " + std::to_string(i), rng.pick(pool)));
    out.retrieved.push_back({id, i + 1, static_cast<double>(labels.size() - i)});
  }
  out.store = corpus::PassageStore::from_passages(std::move(passages));
  return out;
}

EvalFixture em_fixture() {
  struct Row {
    const char* prediction;
    std::vector<std::string> golds;
    bool hit;
  };
  const std::vector<Row> rows = {
      {"Melbourne", {"Melbourne"}, true},
      {"The Melbourne", {"Melbourne"}, true},
      {"Melbourne, Australia", {"Melbourne"}, false},
      {"route 9", {"Route 9", "NH Route 9"}, true},
      {"NH Route 9", {"Route 9", "NH Route 9"}, true},
      {"Route 99", {"Route 9"}, false},
      {"1999", {"1999"}, true},
      {"1999.", {"1999"}, true},
      {"1998", {"1999"}, false},
      {"daphnella", {"Daphnella"}, true},
      {"Daphnella stiphra", {"Daphnella"}, false},
      {"a Houston Rockets", {"the Houston Rockets"}, true},
      {"Houston", {"Houston Rockets"}, false},
      {"U.S.", {"US", "United States"}, true},
      {"United  States", {"US", "United States"}, true},
      {"", {"Lakers"}, false},
      {"Los Angeles Lakers", {"Lakers", "Los Angeles Lakers"}, true},
      {"Raphitomidae", {"Raphitomidae"}, true},
      {"Italy", {"Italia"}, false},
      {"Ron Walker", {"Ronald Walker", "Ron Walker"}, true},
  };
  EvalFixture out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string id = "q" + std::to_string(i + 1);
    out.examples.push_back({id, "question " + std::to_string(i + 1), rows[i].golds});
    out.predictions[id] = rows[i].prediction;
    out.hits.push_back(rows[i].hit);
  }
  return out;
}

}  // namespace odqa::testing
