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

#ifndef ALGOLISP_AUGMENT_H_
#define ALGOLISP_AUGMENT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "algolisp/corpus.h"
#include "algolisp/lexicon.h"
#include "algolisp/providers.h"
#include "json.hpp"

namespace algolisp {

// Description-only augmentation: basic token edits (delete, insert,
// substitute), back translation through a pivot language and
// attention-based replacement. Programs, args and tests are never touched.

struct AugmentConfig {
  double alpha = 0.1;  // fraction of tokens edited: floor(alpha * L)
  double rho_edit = 0.5;
  double rho_back_translate = 0.2;
  double rho_attention = 0.1;
  // (delete, insert, substitute) probabilities for descriptions longer than
  // the corpus mean, and for the others.
  std::array<double, 3> sigma_long{0.5, 0.25, 0.25};
  std::array<double, 3> sigma_short{0.2, 0.4, 0.4};
  std::uint64_t seed = 42;
  std::string pivot = "de";
  const WordSet* non_editable = &NonEditableWords();

  // Throws Error(kInvalidArgument) for probabilities outside [0, 1] or sigma
  // triples that do not sum to 1.
  void Validate() const;
};

enum class EditOp { kDelete, kInsert, kSubstitute };

std::string_view EditOpName(EditOp op);  // "RD", "RI", "RS"

struct EditResult {
  Tokens tokens;
  int edits = 0;       // floor(alpha * L)
  bool no_op = false;  // floor(alpha * L) == 0
  std::vector<std::size_t> positions;  // edited positions in the source
};

// Positions that edits may touch: not punctuation, numerals, non-editable
// words, variables or `extra_protected` words.
std::vector<std::size_t> EditablePositions(
    const Tokens& desc, const AugmentConfig& cfg,
    const std::vector<std::string>& extra_protected = {});

// Throws Error(kNoEditableTokens) when RD or RS lacks floor(alpha * L)
// editable tokens (or the description is empty), Error(kDegenerateFill) when
// the filler keeps returning the original word for a substituted position,
// and provider errors.
EditResult BasicEdit(const Tokens& desc, EditOp op, const AugmentConfig& cfg,
                     MaskFiller& filler, std::mt19937_64& rng,
                     const std::vector<std::string>& extra_protected = {});

struct BackTranslation {
  std::string text;
  bool degenerate = false;  // the round trip returned the input unchanged
};

// English -> pivot -> English. Throws Error(kEmptyTranslation) for empty
// input or output, and provider errors.
BackTranslation BackTranslate(const std::string& text, Translator& translator,
                              const std::string& pivot = "de");

struct Replacement {
  Tokens tokens;
  std::size_t position = 0;
  std::string replaced;
  std::string replacement;
};

// Replaces the editable token with the highest attention weight (lowest
// index on ties) by a uniformly drawn `vocabulary` word that is editable
// and differs from it. Throws Error(kNoEditableTokens) and, for malformed
// weights, Error(kProviderUnavailable).
Replacement AttentionReplace(const Tokens& desc, AttentionSource& attention,
                             const std::vector<std::string>& vocabulary,
                             const AugmentConfig& cfg, std::mt19937_64& rng,
                             const std::vector<std::string>& extra_protected = {});

// Self-attention over seeded random token embeddings; the weight of token j
// is the mean over query rows of column j of the attention matrix.
class SelfAttentionSource : public AttentionSource {
 public:
  explicit SelfAttentionSource(std::uint64_t seed, std::size_t dim = 16);
  std::vector<double> Weights(const Tokens& tokens) override;
  std::string name() const override { return "self-attention"; }

 private:
  std::uint64_t seed_;
  std::size_t dim_;
};

// Editable corpus words (lower-cased, sorted) used as replacement candidates.
std::vector<std::string> EditableVocabulary(
    const std::vector<ProblemInstance>& corpus, const AugmentConfig& cfg);

struct AugmentProviders {
  MaskFiller* filler = nullptr;
  Translator* translator = nullptr;
  AttentionSource* attention = nullptr;
  // Replacement words for attention replace; built from the corpus if empty.
  std::vector<std::string> vocabulary;
};

// One line of the audit log per attempted variant.
struct AuditRecord {
  std::string variant_id;
  std::string source_id;
  std::string op;     // RD, RI, RS, BT, AR
  std::string sigma;  // "long" / "short" for basic edits
  int edits = 0;
  std::string provider;
  bool cache_hit = false;
  std::string status;  // ok, no_op, degenerate, skipped
  std::string error;
};

struct AugmentResult {
  // Variants of each source in input order (edit, back translation,
  // attention), followed by every original.
  std::vector<ProblemInstance> corpus;
  std::vector<AuditRecord> audit;
  std::size_t variants = 0;
};

// Each instance independently gets an edit variant with probability
// rho_edit, a back translation with rho_back_translate and an attention
// replacement with rho_attention, using an RNG seeded from (seed, id).
// Provider failures skip the variant and are logged; they never abort the
// run. Variant ids are "<id>#be-rd", "<id>#bt", "<id>#ar"; variant meta
// records the source, operation and flags ("bt": true for translations).
AugmentResult RunPipeline(const std::vector<ProblemInstance>& corpus,
                          const AugmentConfig& cfg, AugmentProviders providers,
                          int jobs = 1);

nlohmann::ordered_json AuditToJson(const AuditRecord& record);
void WriteAudit(const std::vector<AuditRecord>& audit, std::ostream& out);

}  // namespace algolisp

#endif  // ALGOLISP_AUGMENT_H_
