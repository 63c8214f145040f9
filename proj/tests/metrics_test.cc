// Copyright 2026 The AlgoLisp Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "algolisp/error.h"
#include "algolisp/metrics.h"
#include "algolisp/text.h"
#include "doctest.h"
#include "support/edit_space.h"

namespace algolisp {
namespace {

const std::string kFixtures = ALGOLISP_FIXTURE_DIR;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

TEST_CASE("token levenshtein examples") {
  const Tokens abc{"a", "b", "c"};
  CHECK(TokenLevenshtein(abc, abc) == 0);
  CHECK(TokenLevenshtein(abc, {}) == 3);
  CHECK(TokenLevenshtein({}, abc) == 3);
  CHECK(TokenLevenshtein(TokenizeText("what is reverse of elements"),
                         TokenizeText("what equals reverse of elements")) == 1);
  // Token-level, not character-level.
  CHECK(TokenLevenshtein({"kitten"}, {"sitting"}) == 1);
}

TEST_CASE("token levenshtein equals exhaustive shortest edit paths") {
  const testing::EditSpace space;
  REQUIRE(space.seqs.size() == 3280);
  std::size_t mismatches = 0, pairs = 0;
  for (std::size_t a = 0; a < space.seqs.size(); ++a) {
    const auto dist = space.Bfs(static_cast<int>(a));
    for (std::size_t b = 0; b < space.seqs.size(); ++b) {
      ++pairs;
      if (TokenLevenshtein(space.seqs[a], space.seqs[b]) != dist[b]) ++mismatches;
    }
  }
  CHECK(pairs == 3280u * 3280u);
  CHECK(mismatches == 0);
}

Tokens RandomTokens(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), sym(0, 4);
  Tokens t(static_cast<std::size_t>(len(rng)));
  for (auto& s : t) s = "w" + std::to_string(sym(rng));
  return t;
}

TEST_CASE("property: token levenshtein is a metric") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Tokens a = RandomTokens(rng, 12), b = RandomTokens(rng, 12),
                 c = RandomTokens(rng, 12);
    const int ab = TokenLevenshtein(a, b);
    REQUIRE(ab == TokenLevenshtein(b, a));
    REQUIRE((ab == 0) == (a == b));
    REQUIRE(TokenLevenshtein(a, c) <= ab + TokenLevenshtein(b, c));
    const int diff = static_cast<int>(a.size()) - static_cast<int>(b.size());
    REQUIRE(ab >= std::abs(diff));
    REQUIRE(ab <= static_cast<int>(std::max(a.size(), b.size())));
  }
}

TEST_CASE("lev ratio") {
  Tokens thirty_three(33, "w");
  Tokens one_off = thirty_three;
  one_off[5] = "v";
  CHECK(LevRatio(thirty_three, one_off) == doctest::Approx(1.0 / 33));
  CHECK(LevRatio(thirty_three, one_off) == doctest::Approx(0.0303).epsilon(1e-3));
  CHECK(LevRatio({"a", "b"}, {"a", "b"}) == 0.0);
  CHECK(LevRatio({"a", "b", "c", "d"}, {"a", "b"}) == 0.5);
  CHECK(CodeOf([] { LevRatio({}, {"a"}); }) == ErrorCode::kEmptyOriginal);

  const DistanceReport r = MeasureDistance({"a", "b", "c", "d"}, {"a", "x"});
  CHECK(r.lev == 3);
  CHECK(r.lev_ratio == 0.75);
  CHECK_FALSE(r.embedding_distance.has_value());
  CHECK(DistanceFromJson(DistanceToJson(r)) == r);
}

TEST_CASE("embedding distance with fixture vectors") {
  auto provider = FixtureEmbeddings::FromFile(kFixtures + "/embeddings.json");
  const std::string a = "Given a string a, what is the length of a.";
  const std::string b = "Given a string b, what is the length of b.";
  CHECK(provider->Embed(a).size() == 768);
  CHECK(EmbeddingDistance(a, a, *provider) == 0.0);
  CHECK(EmbeddingDistance(a, b, *provider) == doctest::Approx(0.005).epsilon(1e-9));
  CHECK(EmbeddingDistance(a, b, *provider) == EmbeddingDistance(b, a, *provider));
  CHECK(EmbeddingDistance("what is reverse of elements",
                          "what equals reverse of elements", *provider) ==
        doctest::Approx(1.0));
  CHECK(CodeOf([&] { EmbeddingDistance(a, "zero", *provider); }) ==
        ErrorCode::kZeroVector);
  CHECK(CodeOf([&] { EmbeddingDistance(a, "short", *provider); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(CodeOf([&] { EmbeddingDistance(a, "unknown text", *provider); }) ==
        ErrorCode::kProviderUnavailable);

  const DistanceReport r =
      MeasureDistance(TokenizeText(a), TokenizeText(b), provider.get());
  CHECK(r.lev == 2);
  REQUIRE(r.embedding_distance.has_value());
  CHECK(*r.embedding_distance == doctest::Approx(0.005).epsilon(1e-9));
}

TEST_CASE("property: cosine distance is symmetric and bounded") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> u(16), v(16);
    for (auto& x : u) x = g(rng);
    for (auto& x : v) x = g(rng);
    const double d = CosineDistance(u, v);
    REQUIRE(d == CosineDistance(v, u));
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 2.0);
    REQUIRE(CosineDistance(u, u) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("confusion percentage") {
  CHECK(ConfusionPct(4.20, 4.25) == doctest::Approx(99.0).epsilon(1e-12));
  CHECK(ConfusionPct(4.20, 3.60) == doctest::Approx(88.0).epsilon(1e-12));
  CHECK(ConfusionPct(3.70, 3.50) == doctest::Approx(96.0).epsilon(1e-12));
  CHECK(ConfusionPct(3.95, 3.85) == doctest::Approx(98.0).epsilon(1e-12));
  CHECK(ConfusionPct(4.15, 3.60) == doctest::Approx(89.0).epsilon(1e-12));
  CHECK(ConfusionPct(3.45, 3.60) == doctest::Approx(97.0).epsilon(1e-12));
  CHECK(ConfusionPct(2.5, 2.5) == 100.0);
  CHECK(ConfusionPct(1, 5) == doctest::Approx(20.0));
  CHECK(CodeOf([] { ConfusionPct(0.5, 3); }) == ErrorCode::kOutOfRange);
  CHECK(CodeOf([] { ConfusionPct(3, 5.01); }) == ErrorCode::kOutOfRange);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> score(1.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double x = score(rng), y = score(rng);
    REQUIRE(ConfusionPct(x, y) == ConfusionPct(y, x));
    REQUIRE(ConfusionPct(x, y) >= 20.0);
    REQUIRE(ConfusionPct(x, y) <= 100.0);
  }
}

}  // namespace
}  // namespace algolisp
