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

#include "odqa/reader.hpp"

#include <algorithm>

#include "gtest/gtest.h"
#include "odqa/text.hpp"

namespace odqa::reader {
namespace {

using Passages = std::vector<std::string>;

// "Melbourne" occurs in six passages; every other span occurs in at most two.
Passages melbourne_fixture() {
  return {
      "Ron Walker was Lord Mayor of Melbourne for many years.",
      "Melbourne hosts a famous cricket ground.",
      "The city council of Melbourne met in spring.",
      "Trams run across Melbourne daily.",
      "A Walker foundation funds local arts.",
      "Critics praised Melbourne restaurants.",
      "Tourists visit Melbourne often.",
      "The foundation later moved offices.",
  };
}

TEST(PredictTest, MostFrequentCandidate) {
  const Passages passages = melbourne_fixture();
  const std::string question =
      "Ronald Joseph Walker is a former Lord Mayor of [MASK] and prominent businessman.";
  EXPECT_EQ(predict(question, passages), "Melbourne");
  const auto ranked = rank_candidates(question, passages);
  ASSERT_FALSE(ranked.empty());
  EXPECT_EQ(ranked[0].frequency, 6u);
  EXPECT_EQ(ranked[0].best_rank, 1u);
  EXPECT_DOUBLE_EQ(ranked[0].score, 6.0 + 1.0 / 2.0);
  for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_LE(ranked[i].frequency, 2u);
}

TEST(PredictTest, NoCandidates) {
  EXPECT_EQ(predict("the houston rockets", Passages{"The Houston Rockets!", "the the of"}), "");
  EXPECT_EQ(predict("q", Passages{}), "");
}

TEST(PredictTest, TieBrokenByRank) {
  const Passages passages = {"alpha", "beta", "gamma beta alpha"};
  // alpha and beta both appear twice; alpha's best rank is 1.
  EXPECT_EQ(predict("question", passages), "alpha");
  const Passages swapped = {"beta", "alpha", "gamma beta alpha"};
  EXPECT_EQ(predict("question", swapped), "beta");
}

TEST(PredictTest, ShorterSpanWinsFullTie) {
  EXPECT_EQ(predict("q", Passages{"Zorbu Club"}), "Zorbu");
}

TEST(PredictTest, KeepsOriginalCasingOfEarliestOccurrence) {
  EXPECT_EQ(predict("q", Passages{"visit MELBOURNE today", "melbourne again", "Melbourne"}),
            "MELBOURNE");
}

TEST(PredictProperty, SurfaceOccursInPassageAndNotInQuestion) {
  const Passages passages = melbourne_fixture();
  for (std::size_t drop = 0; drop < passages.size(); ++drop) {
    Passages subset = passages;
    subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(drop));
    const std::string question = "Who walked in [MASK] with the foundation?";
    const std::string answer = predict(question, subset);
    ASSERT_FALSE(answer.empty());
    EXPECT_TRUE(std::any_of(subset.begin(), subset.end(), [&](const std::string& p) {
      return p.find(answer) != std::string::npos;
    }));
    const auto q = text::tokenize(question).tokens;
    const auto a = text::tokenize(answer).tokens;
    EXPECT_TRUE(text::contains_answer(q, a).empty());
    EXPECT_EQ(predict(question, subset), answer);
  }
}

TEST(StopwordsTest, SortedAndUnique) {
  const auto words = stopwords();
  EXPECT_TRUE(std::is_sorted(words.begin(), words.end()));
  EXPECT_EQ(std::adjacent_find(words.begin(), words.end()), words.end());
  EXPECT_TRUE(is_stopword("the"));
  EXPECT_TRUE(is_stopword("of"));
  EXPECT_FALSE(is_stopword("melbourne"));
}

}  // namespace
}  // namespace odqa::reader
