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

#include "algolisp/metrics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "algolisp/error.h"
#include "algolisp/text.h"

namespace algolisp {

int TokenLevenshtein(const Tokens& a, const Tokens& b) {
  // Two-row dynamic program over prefixes.
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double LevRatio(const Tokens& a, const Tokens& b) {
  if (a.empty()) {
    throw Error(ErrorCode::kEmptyOriginal,
                "LevR is undefined for an empty original sentence");
  }
  return static_cast<double>(TokenLevenshtein(a, b)) /
         static_cast<double>(a.size());
}

double CosineDistance(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size() || u.empty()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "embedding sizes " + std::to_string(u.size()) + " and " +
                    std::to_string(v.size()));
  }
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0 || nv == 0) {
    throw Error(ErrorCode::kZeroVector, "cosine of a zero embedding");
  }
  const double cos = std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
  return 1.0 - cos;
}

double EmbeddingDistance(const std::string& a, const std::string& b,
                         EmbeddingProvider& provider) {
  if (a == b) {
    // Exactly zero, after the same availability and zero-vector checks.
    const auto u = provider.Embed(a);
    CosineDistance(u, u);
    return 0.0;
  }
  return CosineDistance(provider.Embed(a), provider.Embed(b));
}

double ConfusionPct(double original_score, double adversarial_score) {
  for (double s : {original_score, adversarial_score}) {
    if (!(s >= 1.0 && s <= 5.0)) {
      throw Error(ErrorCode::kOutOfRange,
                  "human scores must lie in [1, 5], got " + std::to_string(s));
    }
  }
  return (1.0 - std::fabs(original_score - adversarial_score) / 5.0) * 100.0;
}

DistanceReport MeasureDistance(const Tokens& original, const Tokens& perturbed,
                               EmbeddingProvider* provider) {
  DistanceReport r;
  r.lev = TokenLevenshtein(original, perturbed);
  r.lev_ratio = LevRatio(original, perturbed);
  if (provider != nullptr) {
    r.embedding_distance = EmbeddingDistance(DetokenizeText(original),
                                             DetokenizeText(perturbed), *provider);
  }
  return r;
}

nlohmann::ordered_json DistanceToJson(const DistanceReport& report) {
  nlohmann::ordered_json j;
  j["lev"] = report.lev;
  j["lev_ratio"] = report.lev_ratio;
  if (report.embedding_distance) {
    j["embedding_distance"] = *report.embedding_distance;
  }
  return j;
}

DistanceReport DistanceFromJson(const nlohmann::ordered_json& j) {
  DistanceReport r;
  try {
    r.lev = j.at("lev").get<int>();
    r.lev_ratio = j.at("lev_ratio").get<double>();
    if (j.contains("embedding_distance") && !j["embedding_distance"].is_null()) {
      r.embedding_distance = j["embedding_distance"].get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("distance: ") + e.what());
  }
  return r;
}

}  // namespace algolisp
