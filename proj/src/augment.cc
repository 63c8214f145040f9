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

#include "algolisp/augment.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "algolisp/attention.h"
#include "algolisp/digest.h"
#include "algolisp/error.h"
#include "algolisp/parallel.h"
#include "algolisp/text.h"

namespace algolisp {

namespace {

void CheckProbability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must lie in [0, 1]");
  }
}

void CheckSigma(const std::array<double, 3>& sigma, const char* name) {
  double sum = 0;
  for (double p : sigma) {
    CheckProbability(p, name);
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must sum to 1");
  }
}

bool IsProtectedWord(std::string_view token, const AugmentConfig& cfg,
                     const std::vector<std::string>& extra) {
  if (IsPunctuation(token) || IsNumeral(token)) return true;
  if (token == kMaskToken) return true;
  const std::string lower = Lower(token);
  if (cfg.non_editable != nullptr && cfg.non_editable->count(lower) > 0) {
    return true;
  }
  return std::find(extra.begin(), extra.end(), token) != extra.end();
}

// k distinct entries of `pool` in draw order (partial Fisher-Yates).
std::vector<std::size_t> Sample(std::vector<std::size_t> pool, std::size_t k,
                                std::mt19937_64& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

Tokens CheckedFill(MaskFiller& filler, const Tokens& masked,
                   std::mt19937_64& rng) {
  Tokens filled = filler.Fill(masked, rng);
  if (filled.size() != masked.size()) {
    throw Error(ErrorCode::kProviderUnavailable,
                filler.name() + " changed the sequence length");
  }
  for (std::size_t i = 0; i < masked.size(); ++i) {
    if (masked[i] == kMaskToken) {
      if (filled[i].empty() || filled[i] == kMaskToken) {
        throw Error(ErrorCode::kProviderUnavailable,
                    filler.name() + " left a mask unfilled");
      }
    } else if (filled[i] != masked[i]) {
      throw Error(ErrorCode::kProviderUnavailable,
                  filler.name() + " changed an unmasked token");
    }
  }
  return filled;
}

constexpr int kFillRetries = 8;

std::size_t EditCount(const Tokens& desc, const AugmentConfig& cfg) {
  return static_cast<std::size_t>(
      std::floor(cfg.alpha * static_cast<double>(desc.size()) + 1e-9));
}

}  // namespace

void AugmentConfig::Validate() const {
  CheckProbability(alpha, "alpha");
  CheckProbability(rho_edit, "rho_edit");
  CheckProbability(rho_back_translate, "rho_back_translate");
  CheckProbability(rho_attention, "rho_attention");
  CheckSigma(sigma_long, "sigma_long");
  CheckSigma(sigma_short, "sigma_short");
  if (pivot.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "pivot language is empty");
  }
}

std::string_view EditOpName(EditOp op) {
  switch (op) {
    case EditOp::kDelete:
      return "RD";
    case EditOp::kInsert:
      return "RI";
    case EditOp::kSubstitute:
      return "RS";
  }
  return "?";
}

std::vector<std::size_t> EditablePositions(
    const Tokens& desc, const AugmentConfig& cfg,
    const std::vector<std::string>& extra_protected) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < desc.size(); ++i) {
    if (IsProtectedWord(desc[i], cfg, extra_protected)) continue;
    if (IsVariableAt(desc, i, extra_protected)) continue;
    out.push_back(i);
  }
  return out;
}

EditResult BasicEdit(const Tokens& desc, EditOp op, const AugmentConfig& cfg,
                     MaskFiller& filler, std::mt19937_64& rng,
                     const std::vector<std::string>& extra_protected) {
  if (desc.empty()) {
    throw Error(ErrorCode::kNoEditableTokens, "empty description");
  }
  EditResult result;
  const std::size_t k = EditCount(desc, cfg);
  result.edits = static_cast<int>(k);
  if (k == 0) {
    result.tokens = desc;
    result.no_op = true;
    return result;
  }

  if (op == EditOp::kInsert) {
    Tokens masked = desc;
    for (std::size_t n = 0; n < k; ++n) {
      std::uniform_int_distribution<std::size_t> at(0, masked.size());
      const std::size_t pos = at(rng);
      masked.insert(masked.begin() + static_cast<std::ptrdiff_t>(pos),
                    std::string(kMaskToken));
    }
    for (std::size_t i = 0; i < masked.size(); ++i) {
      if (masked[i] == kMaskToken) result.positions.push_back(i);
    }
    result.tokens = CheckedFill(filler, masked, rng);
    return result;
  }

  const auto editable = EditablePositions(desc, cfg, extra_protected);
  if (editable.size() < k) {
    throw Error(ErrorCode::kNoEditableTokens,
                std::to_string(editable.size()) + " editable token(s), need " +
                    std::to_string(k));
  }
  result.positions = Sample(editable, k, rng);
  std::sort(result.positions.begin(), result.positions.end());

  if (op == EditOp::kDelete) {
    std::set<std::size_t> drop(result.positions.begin(), result.positions.end());
    for (std::size_t i = 0; i < desc.size(); ++i) {
      if (drop.count(i) == 0) result.tokens.push_back(desc[i]);
    }
    return result;
  }

  Tokens current = desc;
  std::vector<std::size_t> pending = result.positions;
  for (int attempt = 0; attempt < kFillRetries && !pending.empty(); ++attempt) {
    Tokens masked = current;
    for (std::size_t p : pending) masked[p] = std::string(kMaskToken);
    current = CheckedFill(filler, masked, rng);
    std::vector<std::size_t> same;
    for (std::size_t p : pending) {
      if (Lower(current[p]) == Lower(desc[p])) same.push_back(p);
    }
    pending = std::move(same);
  }
  if (!pending.empty()) {
    throw Error(ErrorCode::kDegenerateFill,
                "filler kept the original word '" + desc[pending.front()] +
                    "'");
  }
  for (std::size_t p : result.positions) {
    if (IsCapitalized(desc[p])) current[p] = Capitalize(current[p]);
  }
  result.tokens = std::move(current);
  return result;
}

BackTranslation BackTranslate(const std::string& text, Translator& translator,
                              const std::string& pivot) {
  if (text.empty()) {
    throw Error(ErrorCode::kEmptyTranslation, "nothing to translate");
  }
  const std::string there = translator.Translate(text, "en", pivot);
  if (there.empty()) {
    throw Error(ErrorCode::kEmptyTranslation,
                translator.name() + " returned an empty en>" + pivot +
                    " translation");
  }
  BackTranslation out;
  out.text = translator.Translate(there, pivot, "en");
  if (out.text.empty()) {
    throw Error(ErrorCode::kEmptyTranslation,
                translator.name() + " returned an empty " + pivot +
                    ">en translation");
  }
  out.degenerate = out.text == text;
  return out;
}

Replacement AttentionReplace(const Tokens& desc, AttentionSource& attention,
                             const std::vector<std::string>& vocabulary,
                             const AugmentConfig& cfg, std::mt19937_64& rng,
                             const std::vector<std::string>& extra_protected) {
  const auto editable = EditablePositions(desc, cfg, extra_protected);
  if (editable.empty()) {
    throw Error(ErrorCode::kNoEditableTokens, "no editable token");
  }
  const std::vector<double> w = attention.Weights(desc);
  if (w.size() != desc.size()) {
    throw Error(ErrorCode::kProviderUnavailable,
                attention.name() + " returned " + std::to_string(w.size()) +
                    " weights for " + std::to_string(desc.size()) + " tokens");
  }
  double sum = 0;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0) {
      throw Error(ErrorCode::kProviderUnavailable,
                  attention.name() + " returned an invalid weight");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw Error(ErrorCode::kProviderUnavailable,
                attention.name() + " weights do not sum to 1");
  }

  std::size_t best = editable.front();
  for (std::size_t p : editable) {
    if (w[p] > w[best]) best = p;
  }

  const std::string original = Lower(desc[best]);
  std::vector<const std::string*> candidates;
  for (const auto& word : vocabulary) {
    if (Lower(word) == original) continue;
    if (IsProtectedWord(word, cfg, extra_protected)) continue;
    if (word.size() == 1) continue;
    candidates.push_back(&word);
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kNoEditableTokens, "no replacement word available");
  }
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  Replacement out;
  out.tokens = desc;
  out.position = best;
  out.replaced = desc[best];
  out.replacement = *candidates[pick(rng)];
  if (IsCapitalized(desc[best])) out.replacement = Capitalize(out.replacement);
  out.tokens[best] = out.replacement;
  return out;
}

SelfAttentionSource::SelfAttentionSource(std::uint64_t seed, std::size_t dim)
    : seed_(seed), dim_(dim) {
  if (dim_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "embedding dimension must be > 0");
  }
}

std::vector<double> SelfAttentionSource::Weights(const Tokens& tokens) {
  if (tokens.empty()) return {};
  const double bound = 1.0 / std::sqrt(static_cast<double>(dim_));
  DenseMatrix x(tokens.size(), dim_);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::mt19937_64 rng(DeriveSeed(seed_, "embedding", Lower(tokens[i])));
    std::uniform_real_distribution<double> u(-bound, bound);
    for (std::size_t c = 0; c < dim_; ++c) x(i, c) = u(rng);
  }
  const DenseMatrix a = AttentionWeights(x, x);
  std::vector<double> w(tokens.size(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) w[c] += a(r, c);
  }
  for (double& v : w) v /= static_cast<double>(a.rows());
  return w;
}

std::vector<std::string> EditableVocabulary(
    const std::vector<ProblemInstance>& corpus, const AugmentConfig& cfg) {
  std::set<std::string> words;
  for (const auto& inst : corpus) {
    const auto args = ArgNames(inst);
    for (std::size_t i = 0; i < inst.text.size(); ++i) {
      const std::string& t = inst.text[i];
      if (t.size() <= 1 || IsProtectedWord(t, cfg, args)) continue;
      words.insert(Lower(t));
    }
  }
  return {words.begin(), words.end()};
}

namespace {

ProblemInstance MakeVariant(const ProblemInstance& source, std::string suffix,
                            Tokens text, nlohmann::ordered_json meta) {
  ProblemInstance v = source;
  v.id = source.id + "#" + suffix;
  v.text = std::move(text);
  nlohmann::ordered_json m = nlohmann::ordered_json::object();
  m["source"] = source.id;
  for (auto it = meta.begin(); it != meta.end(); ++it) m[it.key()] = it.value();
  v.meta = std::move(m);
  return v;
}

struct InstanceOutput {
  std::vector<ProblemInstance> variants;
  std::vector<AuditRecord> audit;
};

InstanceOutput AugmentOne(const ProblemInstance& inst, double avg_len,
                          const AugmentConfig& cfg,
                          const AugmentProviders& providers) {
  InstanceOutput out;
  std::mt19937_64 rng(DeriveSeed(cfg.seed, inst.id, "augment"));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const bool do_edit = coin(rng) < cfg.rho_edit;
  const bool do_bt = coin(rng) < cfg.rho_back_translate;
  const bool do_ar = coin(rng) < cfg.rho_attention;
  const std::vector<std::string> args = ArgNames(inst);

  if (do_edit) {
    const bool long_text = static_cast<double>(inst.text.size()) > avg_len;
    const auto& sigma = long_text ? cfg.sigma_long : cfg.sigma_short;
    std::discrete_distribution<int> pick_op(sigma.begin(), sigma.end());
    const auto op = static_cast<EditOp>(pick_op(rng));
    AuditRecord rec;
    rec.source_id = inst.id;
    rec.op = std::string(EditOpName(op));
    rec.sigma = long_text ? "long" : "short";
    rec.variant_id = inst.id + "#be-" + Lower(rec.op);
    rec.provider = op == EditOp::kDelete || providers.filler == nullptr
                       ? "none"
                       : providers.filler->name();
    std::mt19937_64 edit_rng(DeriveSeed(cfg.seed, inst.id, "be"));
    try {
      if (op != EditOp::kDelete && providers.filler == nullptr) {
        throw Error(ErrorCode::kProviderUnavailable, "no mask filler configured");
      }
      EditResult r = BasicEdit(inst.text, op, cfg, *providers.filler, edit_rng,
                               args);
      rec.edits = r.edits;
      rec.cache_hit = op != EditOp::kDelete && LastCallWasCacheHit();
      rec.status = r.no_op ? "no_op" : "ok";
      nlohmann::ordered_json meta;
      meta["op"] = rec.op;
      meta["sigma"] = rec.sigma;
      meta["edits"] = r.edits;
      meta["bt"] = false;
      if (r.no_op) meta["no_op"] = true;
      out.variants.push_back(MakeVariant(inst, "be-" + Lower(rec.op),
                                         std::move(r.tokens), std::move(meta)));
    } catch (const Error& e) {
      rec.status = "skipped";
      rec.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
    }
    out.audit.push_back(std::move(rec));
  }

  if (do_bt) {
    AuditRecord rec;
    rec.source_id = inst.id;
    rec.op = "BT";
    rec.variant_id = inst.id + "#bt";
    rec.provider =
        providers.translator == nullptr ? "none" : providers.translator->name();
    try {
      if (providers.translator == nullptr) {
        throw Error(ErrorCode::kProviderUnavailable, "no translator configured");
      }
      BackTranslation bt = BackTranslate(DetokenizeText(inst.text),
                                         *providers.translator, cfg.pivot);
      rec.cache_hit = LastCallWasCacheHit();
      Tokens text = TokenizeText(bt.text);
      rec.edits = 0;
      rec.status = bt.degenerate ? "degenerate" : "ok";
      nlohmann::ordered_json meta;
      meta["op"] = "BT";
      meta["pivot"] = cfg.pivot;
      meta["bt"] = true;
      if (bt.degenerate) meta["degenerate"] = true;
      out.variants.push_back(
          MakeVariant(inst, "bt", std::move(text), std::move(meta)));
    } catch (const Error& e) {
      rec.status = "skipped";
      rec.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
    }
    out.audit.push_back(std::move(rec));
  }

  if (do_ar) {
    AuditRecord rec;
    rec.source_id = inst.id;
    rec.op = "AR";
    rec.variant_id = inst.id + "#ar";
    rec.provider =
        providers.attention == nullptr ? "none" : providers.attention->name();
    std::mt19937_64 ar_rng(DeriveSeed(cfg.seed, inst.id, "ar"));
    try {
      if (providers.attention == nullptr) {
        throw Error(ErrorCode::kProviderUnavailable,
                    "no attention source configured");
      }
      Replacement r = AttentionReplace(inst.text, *providers.attention,
                                       providers.vocabulary, cfg, ar_rng, args);
      rec.cache_hit = LastCallWasCacheHit();
      rec.edits = 1;
      rec.status = "ok";
      nlohmann::ordered_json meta;
      meta["op"] = "AR";
      meta["position"] = r.position;
      meta["replaced"] = r.replaced;
      meta["replacement"] = r.replacement;
      meta["bt"] = false;
      out.variants.push_back(
          MakeVariant(inst, "ar", std::move(r.tokens), std::move(meta)));
    } catch (const Error& e) {
      rec.status = "skipped";
      rec.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
    }
    out.audit.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

AugmentResult RunPipeline(const std::vector<ProblemInstance>& corpus,
                          const AugmentConfig& cfg, AugmentProviders providers,
                          int jobs) {
  cfg.Validate();
  AugmentResult result;
  if (corpus.empty()) return result;
  if (providers.vocabulary.empty()) {
    providers.vocabulary = EditableVocabulary(corpus, cfg);
  }
  double total = 0;
  for (const auto& inst : corpus) total += static_cast<double>(inst.text.size());
  const double avg_len = total / static_cast<double>(corpus.size());

  std::vector<InstanceOutput> per(corpus.size());
  ParallelFor(corpus.size(), jobs, [&](std::size_t i) {
    per[i] = AugmentOne(corpus[i], avg_len, cfg, providers);
  });
  for (auto& o : per) {
    result.variants += o.variants.size();
    for (auto& v : o.variants) result.corpus.push_back(std::move(v));
    for (auto& a : o.audit) result.audit.push_back(std::move(a));
  }
  result.corpus.insert(result.corpus.end(), corpus.begin(), corpus.end());
  return result;
}

nlohmann::ordered_json AuditToJson(const AuditRecord& r) {
  nlohmann::ordered_json j;
  j["variant_id"] = r.variant_id;
  j["source_id"] = r.source_id;
  j["op"] = r.op;
  if (!r.sigma.empty()) j["sigma"] = r.sigma;
  j["edits"] = r.edits;
  j["provider"] = r.provider;
  j["cache_hit"] = r.cache_hit;
  j["status"] = r.status;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

void WriteAudit(const std::vector<AuditRecord>& audit, std::ostream& out) {
  for (const auto& r : audit) out << AuditToJson(r).dump() << '\n';
}

}  // namespace algolisp
