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

#include "algolisp/attacks.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>

#include "algolisp/digest.h"
#include "algolisp/error.h"
#include "algolisp/judge.h"
#include "algolisp/parallel.h"
#include "algolisp/text.h"

namespace algolisp {
namespace {

using nlohmann::ordered_json;

std::size_t Uniform(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

void RequireParsed(const ProblemInstance& instance) {
  if (!instance.parsed()) {
    throw Error(ErrorCode::kInvalidArgument,
                "instance " + instance.id + " has no parsed program");
  }
}

std::string LowerClassName(AttackClass c) { return Lower(AttackClassName(c)); }

AdversarialInstance Wrap(AttackClass c, const ProblemInstance& source,
                         ProblemInstance perturbed) {
  AdversarialInstance adv;
  adv.attack = c;
  adv.original_id = source.id;
  perturbed.id = source.id + "#" + LowerClassName(c);
  adv.distance = MeasureDistance(source.text, perturbed.text);
  adv.instance = std::move(perturbed);
  return adv;
}

// Applies an identifier substitution to every place a variable name lives.
ProblemInstance RenameInstance(const ProblemInstance& source, const VarMap& map) {
  const auto arg_names = ArgNames(source);
  ProblemInstance out = source;
  for (std::size_t i = 0; i < out.text.size(); ++i) {
    if (!IsVariableAt(source.text, i, arg_names)) continue;
    if (const std::string* to = map.Lookup(source.text[i])) out.text[i] = *to;
  }
  for (auto& [name, type] : out.args) {
    if (const std::string* to = map.Lookup(name)) name = *to;
  }
  out.SetProgram(RenameIdentifiers(*source.program, map));
  for (auto& test : out.tests) {
    std::map<std::string, Value, std::less<>> input;
    for (auto& [name, value] : test.input) {
      const std::string* to = map.Lookup(name);
      input.emplace(to ? *to : name, std::move(value));
    }
    test.input = std::move(input);
  }
  return out;
}

std::string NthCandidateName(std::size_t n) {
  if (n < 26) return std::string(1, static_cast<char>('a' + n));
  n -= 26;
  return std::string{static_cast<char>('a' + n / 26),
                     static_cast<char>('a' + n % 26)};
}

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

AttackCategory CategoryOf(AttackClass c) {
  return c == AttackClass::kVC || c == AttackClass::kVI
             ? AttackCategory::kDirectional
             : AttackCategory::kInvariance;
}

std::string_view AttackClassName(AttackClass c) {
  switch (c) {
    case AttackClass::kVC: return "VC";
    case AttackClass::kRR: return "RR";
    case AttackClass::kSR: return "SR";
    case AttackClass::kVoC: return "VoC";
    case AttackClass::kVI: return "VI";
  }
  return "?";
}

std::string_view AttackCategoryName(AttackCategory c) {
  return c == AttackCategory::kDirectional ? "directional" : "invariance";
}

AttackClass ParseAttackClass(std::string_view name) {
  const std::string lower = Lower(name);
  for (AttackClass c : kAllAttackClasses) {
    if (LowerClassName(c) == lower) return c;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown attack class '" + std::string(name) + "'");
}

AdversarialInstance GenVc(const ProblemInstance& instance, std::mt19937_64& rng,
                          const OpRegistry& registry) {
  if (instance.args.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "variable change needs at least one argument");
  }
  RequireParsed(instance);
  const auto arg_names = ArgNames(instance);
  const auto used = FreeIdentifiers(*instance.program, registry);
  const auto mentioned = DescriptionVariables(instance.text, arg_names);

  std::vector<std::string> preferred, in_program;
  for (const auto& name : arg_names) {
    if (!Contains(used, name)) continue;
    in_program.push_back(name);
    if (Contains(mentioned, name)) preferred.push_back(name);
  }
  const auto& pool = !preferred.empty()    ? preferred
                     : !in_program.empty() ? in_program
                                           : arg_names;
  const std::string from = pool[Uniform(rng, pool.size())];

  std::set<std::string, std::less<>> taken(arg_names.begin(), arg_names.end());
  taken.insert(used.begin(), used.end());
  for (const auto& t : instance.text) taken.insert(Lower(t));
  std::string fresh;
  for (std::size_t n = 0; n < 26 + 26 * 26; ++n) {
    std::string candidate = NthCandidateName(n);
    if (taken.count(candidate) == 0 && !registry.IsReserved(candidate)) {
      fresh = std::move(candidate);
      break;
    }
  }
  if (fresh.empty()) {
    throw Error(ErrorCode::kNoFreshName,
                "every candidate name is already used by " + instance.id);
  }
  return Wrap(AttackClass::kVC, instance,
              RenameInstance(instance, VarMap{{from, fresh}}));
}

AdversarialInstance GenRr(const ProblemInstance& instance, std::mt19937_64& rng,
                          const WordSet& stopwords) {
  const auto arg_names = ArgNames(instance);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < instance.text.size(); ++i) {
    const std::string w = Lower(instance.text[i]);
    if (stopwords.count(w) == 0 || NonEditableWords().count(w) > 0) continue;
    if (Contains(arg_names, instance.text[i]) ||
        IsVariableAt(instance.text, i, arg_names)) {
      continue;
    }
    eligible.push_back(i);
  }
  if (eligible.empty()) {
    throw Error(ErrorCode::kNoRemovableToken,
                "no removable stopword in " + instance.id);
  }
  const std::size_t max_k = std::max<std::size_t>(1, instance.text.size() / 10);
  const std::size_t k = std::min(
      eligible.size(),
      std::uniform_int_distribution<std::size_t>(1, max_k)(rng));
  // Partial Fisher-Yates: the first k slots become the removed positions.
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(eligible[i], eligible[i + Uniform(rng, eligible.size() - i)]);
  }
  std::vector<bool> drop(instance.text.size(), false);
  for (std::size_t i = 0; i < k; ++i) drop[eligible[i]] = true;

  ProblemInstance out = instance;
  out.text.clear();
  for (std::size_t i = 0; i < instance.text.size(); ++i) {
    if (!drop[i]) out.text.push_back(instance.text[i]);
  }
  return Wrap(AttackClass::kRR, instance, std::move(out));
}

AdversarialInstance GenSr(const ProblemInstance& instance, std::mt19937_64& rng,
                          const SynonymLexicon& lexicon) {
  const auto arg_names = ArgNames(instance);
  struct Option {
    std::size_t position;
    std::vector<std::string> synonyms;
  };
  std::vector<Option> options;
  for (std::size_t i = 0; i < instance.text.size(); ++i) {
    const std::string w = Lower(instance.text[i]);
    if (NonEditableWords().count(w) || IsVariableAt(instance.text, i, arg_names)) {
      continue;
    }
    auto it = lexicon.find(w);
    if (it == lexicon.end()) continue;
    Option opt{i, {}};
    for (const auto& s : it->second) {
      if (Lower(s) != w && !Contains(opt.synonyms, s)) opt.synonyms.push_back(s);
    }
    if (!opt.synonyms.empty()) options.push_back(std::move(opt));
  }
  if (options.empty()) {
    throw Error(ErrorCode::kNoSynonymAvailable,
                "no word of " + instance.id + " has a usable synonym");
  }
  const Option& pick = options[Uniform(rng, options.size())];
  std::string replacement = pick.synonyms[Uniform(rng, pick.synonyms.size())];
  if (IsCapitalized(instance.text[pick.position])) {
    replacement = Capitalize(replacement);
  }
  ProblemInstance out = instance;
  out.text[pick.position] = replacement;
  return Wrap(AttackClass::kSR, instance, std::move(out));
}

namespace {

bool StartsWithAt(const Tokens& text, std::size_t at,
                  const std::vector<std::string>& words) {
  if (at + words.size() > text.size()) return false;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (Lower(text[at + i]) != words[i]) return false;
  }
  return true;
}

bool IsFinalPunctuation(const std::string& t) {
  return t == "." || t == "?" || t == "!";
}

// "P X , Y" -> "Y , P X".
std::optional<Tokens> MoveLeadingClause(const Tokens& body, bool capitalized) {
  for (const auto& prefix : VoiceClausePrefixes()) {
    if (!StartsWithAt(body, 0, prefix)) continue;
    for (std::size_t i = prefix.size() + 1; i + 1 < body.size(); ++i) {
      if (body[i] != "," || ClauseOpeners().count(Lower(body[i + 1])) == 0) {
        continue;
      }
      Tokens out(body.begin() + static_cast<std::ptrdiff_t>(i + 1), body.end());
      out.push_back(",");
      out.insert(out.end(), body.begin(),
                 body.begin() + static_cast<std::ptrdiff_t>(i));
      if (capitalized) {
        out[0] = Capitalize(out[0]);
        const std::size_t p = body.size() - i;
        out[p] = Lower(out[p]);
      }
      return out;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

// "Y , P X" -> "P X , Y", splitting at the last ", P".
std::optional<Tokens> MoveTrailingClause(const Tokens& body, bool capitalized) {
  for (std::size_t i = body.size(); i-- > 1;) {
    if (body[i] != ",") continue;
    for (const auto& prefix : VoiceClausePrefixes()) {
      if (!StartsWithAt(body, i + 1, prefix) ||
          i + 1 + prefix.size() >= body.size()) {
        continue;
      }
      Tokens out(body.begin() + static_cast<std::ptrdiff_t>(i + 1), body.end());
      out.push_back(",");
      out.insert(out.end(), body.begin(),
                 body.begin() + static_cast<std::ptrdiff_t>(i));
      if (capitalized) {
        out[0] = Capitalize(out[0]);
        const std::size_t y = body.size() - i;
        out[y] = Lower(out[y]);
      }
      return out;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Tokens> ReorderClauses(const Tokens& text) {
  if (text.empty()) return std::nullopt;
  Tokens body = text;
  std::optional<std::string> final_punct;
  if (IsFinalPunctuation(body.back())) {
    final_punct = body.back();
    body.pop_back();
  }
  const bool capitalized = !body.empty() && IsCapitalized(body[0]);
  auto finish = [&](Tokens out) {
    if (final_punct) out.push_back(*final_punct);
    return out;
  };
  // Each direction is accepted only if the other one undoes it, which keeps
  // the rule an involution even on unusual sentences.
  if (auto fwd = MoveLeadingClause(body, capitalized)) {
    auto back = MoveTrailingClause(*fwd, IsCapitalized((*fwd)[0]));
    if (back && *back == body) return finish(std::move(*fwd));
  }
  if (auto inv = MoveTrailingClause(body, capitalized)) {
    auto back = MoveLeadingClause(*inv, IsCapitalized((*inv)[0]));
    if (back && *back == body) return finish(std::move(*inv));
  }
  return std::nullopt;
}

AdversarialInstance GenVoc(const ProblemInstance& instance) {
  auto reordered = ReorderClauses(instance.text);
  if (!reordered) {
    throw Error(ErrorCode::kNoRuleMatch,
                "no clause-reordering rule matches " + instance.id);
  }
  ProblemInstance out = instance;
  out.text = std::move(*reordered);
  return Wrap(AttackClass::kVoC, instance, std::move(out));
}

AdversarialInstance GenVi(const ProblemInstance& instance, std::mt19937_64& rng,
                          const OpRegistry& registry) {
  RequireParsed(instance);
  const auto vars = DescriptionVariables(instance.text, ArgNames(instance));
  if (vars.size() < 2) {
    throw Error(ErrorCode::kTooFewVariables,
                instance.id + " mentions fewer than two variables");
  }
  const auto used = FreeIdentifiers(*instance.program, registry);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (registry.IsReserved(vars[i]) || registry.IsReserved(vars[j])) continue;
      if (Contains(used, vars[i]) || Contains(used, vars[j])) {
        pairs.emplace_back(vars[i], vars[j]);
      }
    }
  }
  if (pairs.empty()) {
    throw Error(ErrorCode::kTooFewVariables,
                "no variable swap in " + instance.id + " changes its program");
  }
  const auto& [x, y] = pairs[Uniform(rng, pairs.size())];
  return Wrap(AttackClass::kVI, instance,
              RenameInstance(instance, VarMap::Swap(x, y)));
}

AdversarialInstance Generate(AttackClass attack, const ProblemInstance& instance,
                             std::mt19937_64& rng, const AttackOptions& options) {
  switch (attack) {
    case AttackClass::kVC: return GenVc(instance, rng, *options.registry);
    case AttackClass::kRR: return GenRr(instance, rng, *options.stopwords);
    case AttackClass::kSR: return GenSr(instance, rng, *options.lexicon);
    case AttackClass::kVoC: return GenVoc(instance);
    case AttackClass::kVI: return GenVi(instance, rng, *options.registry);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown attack class");
}

std::optional<std::string> ValidateAdversarial(const AdversarialInstance& adv,
                                               const ProblemInstance& source,
                                               const AttackOptions& options) {
  const ProblemInstance& out = adv.instance;
  const Limits& limits = options.limits;
  const OpRegistry& registry = *options.registry;
  try {
    if (!source.parsed() || !out.parsed()) return "program does not parse";
    if (!IsSolution(*source.program, source.tests, limits, registry)) {
      return "source program fails its own tests";
    }
    if (out.text == source.text) return "description unchanged";
    if (adv.distance.lev != TokenLevenshtein(source.text, out.text)) {
      return "stale distance report";
    }
    if (adv.attack == AttackClass::kSR && adv.distance.lev != 1) {
      return "synonym replacement must edit exactly one token";
    }
    if (CategoryOf(adv.attack) == AttackCategory::kInvariance) {
      if (out.program_tokens != source.program_tokens) return "program changed";
      if (out.tests != source.tests) return "tests changed";
      if (out.args != source.args) return "args changed";
      return std::nullopt;
    }
    if (*out.program == *source.program) return "program unchanged";
    if (!IsSolution(*out.program, out.tests, limits, registry)) {
      return "ground truth fails the transformed tests";
    }
    if (IsSolution(*source.program, out.tests, limits, registry)) {
      return "original program still solves the transformed tests";
    }
  } catch (const Error& e) {
    return std::string(ErrorCodeName(e.code())) + ": " + e.what();
  }
  return std::nullopt;
}

std::vector<AdversarialInstance> BuildSuite(
    const std::vector<ProblemInstance>& corpus, std::size_t per_class,
    std::uint64_t seed, const std::vector<AttackClass>& classes,
    const AttackOptions& options, int jobs) {
  std::vector<AdversarialInstance> suite;
  if (per_class == 0) return suite;
  std::string shortfall;
  for (AttackClass c : classes) {
    const std::string name(AttackClassName(c));
    std::vector<std::size_t> order(corpus.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 order_rng(DeriveSeed(seed, "order", name));
    std::shuffle(order.begin(), order.end(), order_rng);

    std::size_t taken = 0, next = 0;
    while (taken < per_class && next < order.size()) {
      const std::size_t need = per_class - taken;
      const std::size_t batch =
          std::min(order.size() - next, std::max<std::size_t>(64, 2 * need));
      std::vector<std::optional<AdversarialInstance>> results(batch);
      ParallelFor(batch, jobs, [&](std::size_t k) {
        const ProblemInstance& source = corpus[order[next + k]];
        std::mt19937_64 rng(DeriveSeed(seed, source.id, name));
        try {
          AdversarialInstance adv = Generate(c, source, rng, options);
          if (!ValidateAdversarial(adv, source, options)) {
            results[k] = std::move(adv);
          }
        } catch (const Error&) {
          // Ineligible for this class.
        }
      });
      for (auto& r : results) {
        if (r && taken < per_class) {
          suite.push_back(std::move(*r));
          ++taken;
        }
      }
      next += batch;
    }
    if (taken < per_class) {
      shortfall += (shortfall.empty() ? "" : ", ") + name + ": " +
                   std::to_string(taken) + " of " + std::to_string(per_class);
    }
  }
  if (!shortfall.empty()) {
    throw Error(ErrorCode::kInsufficientEligibleInstances,
                "not enough eligible instances (" + shortfall + ")");
  }
  return suite;
}

ordered_json AdversarialToJson(const AdversarialInstance& adv) {
  ordered_json j;
  j["class"] = AttackClassName(adv.attack);
  j["category"] = AttackCategoryName(CategoryOf(adv.attack));
  j["original_id"] = adv.original_id;
  j["instance"] = InstanceToJson(adv.instance);
  j["distance"] = DistanceToJson(adv.distance);
  return j;
}

AdversarialInstance AdversarialFromJson(const ordered_json& j,
                                        const OpRegistry& registry) {
  AdversarialInstance adv;
  try {
    adv.attack = ParseAttackClass(j.at("class").get<std::string>());
    adv.original_id = j.at("original_id").get<std::string>();
    adv.instance = InstanceFromJson(j.at("instance"), registry);
    adv.distance = DistanceFromJson(j.at("distance"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("suite entry: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kParseError, std::string("suite entry: ") + e.what());
  }
  return adv;
}

void WriteSuite(const std::vector<AdversarialInstance>& suite, std::ostream& out) {
  for (const auto& adv : suite) out << AdversarialToJson(adv).dump() << '\n';
}

std::vector<AdversarialInstance> LoadSuite(std::istream& in,
                                           const OpRegistry& registry) {
  std::vector<AdversarialInstance> suite;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      suite.push_back(AdversarialFromJson(ordered_json::parse(line), registry));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return suite;
}

std::vector<AdversarialInstance> LoadSuiteFile(const std::string& path,
                                               const OpRegistry& registry) {
  if (path == "-") return LoadSuite(std::cin, registry);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return LoadSuite(in, registry);
}

}  // namespace algolisp
