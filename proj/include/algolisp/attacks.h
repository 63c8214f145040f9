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

#ifndef ALGOLISP_ATTACKS_H_
#define ALGOLISP_ATTACKS_H_

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "algolisp/corpus.h"
#include "algolisp/lexicon.h"
#include "algolisp/metrics.h"

namespace algolisp {

// Black-box perturbations of problem descriptions.
//
// Invariance attacks (RR, SR, VoC) keep the original program correct, so the
// program and tests are copied unchanged. Directional attacks (VC, VI) change
// which program is correct: the stored ground truth and the tests are
// transformed along with the description.
enum class AttackClass { kVC, kRR, kSR, kVoC, kVI };
enum class AttackCategory { kInvariance, kDirectional };

inline constexpr std::array<AttackClass, 5> kAllAttackClasses = {
    AttackClass::kVC, AttackClass::kRR, AttackClass::kSR, AttackClass::kVoC,
    AttackClass::kVI};

AttackCategory CategoryOf(AttackClass c);
std::string_view AttackClassName(AttackClass c);          // "VC", "VoC", ...
std::string_view AttackCategoryName(AttackCategory c);    // "invariance", ...
// Case-insensitive; throws Error(kInvalidArgument).
AttackClass ParseAttackClass(std::string_view name);

struct AdversarialInstance {
  AttackClass attack = AttackClass::kVC;
  std::string original_id;
  // Perturbed description, args, ground-truth program and tests. Its id is
  // "<original id>#<class>".
  ProblemInstance instance;
  DistanceReport distance;
};

// Renames one program argument to the shortest name unused by the
// description, the program and the registry (b, c, ..., z, aa, ab, ...).
// Throws Error(kInvalidArgument) without arguments, Error(kNoFreshName).
AdversarialInstance GenVc(const ProblemInstance& instance, std::mt19937_64& rng,
                          const OpRegistry& registry = OpRegistry::Builtin());

// Drops k stopwords, k uniform in [1, max(1, floor(0.1 L))] and capped by the
// number of removable words. Variables and non-editable words stay. Throws
// Error(kNoRemovableToken).
AdversarialInstance GenRr(const ProblemInstance& instance, std::mt19937_64& rng,
                          const WordSet& stopwords = Stopwords());

// Replaces exactly one word by a lexicon synonym. Throws
// Error(kNoSynonymAvailable).
AdversarialInstance GenSr(const ProblemInstance& instance, std::mt19937_64& rng,
                          const SynonymLexicon& lexicon = DefaultSynonyms());

// "Given X , Y" becomes "Y , given X"; a sentence already in that order is
// turned back, so applying GenVoc twice restores the description. Throws
// Error(kNoRuleMatch).
AdversarialInstance GenVoc(const ProblemInstance& instance);

// Reorders the description clauses without building an instance. Returns
// nullopt when no rule applies.
std::optional<Tokens> ReorderClauses(const Tokens& text);

// Swaps two description variables everywhere: description, args, program
// identifiers and test keys. Pairs whose swap leaves the program unchanged
// are never chosen. Throws Error(kTooFewVariables).
AdversarialInstance GenVi(const ProblemInstance& instance, std::mt19937_64& rng,
                          const OpRegistry& registry = OpRegistry::Builtin());

struct AttackOptions {
  const WordSet* stopwords = &Stopwords();
  const SynonymLexicon* lexicon = &DefaultSynonyms();
  const OpRegistry* registry = &OpRegistry::Builtin();
  Limits limits;
};

AdversarialInstance Generate(AttackClass attack, const ProblemInstance& instance,
                             std::mt19937_64& rng,
                             const AttackOptions& options = {});

// Checks the class contract against the source instance: the source program
// solves the source tests; for invariance classes program and tests are
// unchanged; for directional classes the new ground truth passes every new
// test, differs from the original program, and the original program no longer
// solves them. Returns the first violated condition.
std::optional<std::string> ValidateAdversarial(
    const AdversarialInstance& adv, const ProblemInstance& source,
    const AttackOptions& options = {});

// Builds `per_class` validated instances for each class. Candidates are
// visited in a per-class seeded order; each uses an RNG seeded from
// (seed, instance id, class), so the suite does not depend on `jobs`.
// Invalid candidates are discarded. Throws
// Error(kInsufficientEligibleInstances) naming every short class.
std::vector<AdversarialInstance> BuildSuite(
    const std::vector<ProblemInstance>& corpus, std::size_t per_class,
    std::uint64_t seed,
    const std::vector<AttackClass>& classes = {kAllAttackClasses.begin(),
                                               kAllAttackClasses.end()},
    const AttackOptions& options = {}, int jobs = 1);

// One JSON object per line: {"class", "category", "original_id",
// "instance": <canonical instance>, "distance": {...}}.
nlohmann::ordered_json AdversarialToJson(const AdversarialInstance& adv);
AdversarialInstance AdversarialFromJson(
    const nlohmann::ordered_json& j,
    const OpRegistry& registry = OpRegistry::Builtin());
void WriteSuite(const std::vector<AdversarialInstance>& suite, std::ostream& out);
std::vector<AdversarialInstance> LoadSuite(
    std::istream& in, const OpRegistry& registry = OpRegistry::Builtin());
std::vector<AdversarialInstance> LoadSuiteFile(
    const std::string& path,
    const OpRegistry& registry = OpRegistry::Builtin());

}  // namespace algolisp

#endif  // ALGOLISP_ATTACKS_H_
