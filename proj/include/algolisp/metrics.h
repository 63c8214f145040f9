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

#ifndef ALGOLISP_METRICS_H_
#define ALGOLISP_METRICS_H_

#include <optional>
#include <string>
#include <vector>

#include "algolisp/corpus.h"
#include "algolisp/providers.h"
#include "json.hpp"

namespace algolisp {

// Minimum number of token deletions, insertions and substitutions turning
// `a` into `b`.
int TokenLevenshtein(const Tokens& a, const Tokens& b);

// TokenLevenshtein(a, b) / |a|. Throws Error(kEmptyOriginal) for empty `a`.
double LevRatio(const Tokens& a, const Tokens& b);

// 1 - cosine similarity of the two texts' embeddings, in [0, 2]. Throws
// Error(kDimensionMismatch), Error(kZeroVector) or the provider's error.
double EmbeddingDistance(const std::string& a, const std::string& b,
                         EmbeddingProvider& provider);
double CosineDistance(const std::vector<double>& u, const std::vector<double>& v);

// Share of human raters' agreement: (1 - |orig - adv| / 5) * 100. Scores must
// lie in [1, 5], else Error(kOutOfRange).
double ConfusionPct(double original_score, double adversarial_score);

struct DistanceReport {
  int lev = 0;
  double lev_ratio = 0;
  std::optional<double> embedding_distance;

  friend bool operator==(const DistanceReport&, const DistanceReport&) = default;
};

// Token distances, plus the embedding distance when `provider` is given.
DistanceReport MeasureDistance(const Tokens& original, const Tokens& perturbed,
                               EmbeddingProvider* provider = nullptr);

nlohmann::ordered_json DistanceToJson(const DistanceReport& report);
DistanceReport DistanceFromJson(const nlohmann::ordered_json& j);

}  // namespace algolisp

#endif  // ALGOLISP_METRICS_H_
