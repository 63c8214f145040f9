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

#ifndef ALGOLISP_AST_H_
#define ALGOLISP_AST_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algolisp/registry.h"

namespace algolisp {

// A DSL program tree. Applications carry their operator symbol and ordered
// children; leaves are identifiers (including operator names passed as
// function arguments, e.g. the `+` in `( reduce a 0 + )`), integer literals
// or string literals.
class ProgramAst {
 public:
  enum class Kind { kApply, kIdentifier, kInt, kString };

  ProgramAst() = default;

  static ProgramAst Apply(std::string op, std::vector<ProgramAst> children);
  static ProgramAst Identifier(std::string name);
  static ProgramAst Int(std::int64_t value);
  static ProgramAst String(std::string value);

  Kind kind() const { return kind_; }
  bool is_apply() const { return kind_ == Kind::kApply; }
  bool is_identifier() const { return kind_ == Kind::kIdentifier; }

  // Operator for applications, name for identifiers, contents for strings.
  const std::string& symbol() const { return symbol_; }
  std::int64_t int_value() const { return int_value_; }
  const std::vector<ProgramAst>& children() const { return children_; }

  // Index of the token this node was parsed from; -1 when built directly.
  int position() const { return position_; }
  void set_position(int p) { position_ = p; }

  // Structural equality; positions are ignored.
  friend bool operator==(const ProgramAst& a, const ProgramAst& b);

 private:
  Kind kind_ = Kind::kIdentifier;
  std::string symbol_;
  std::int64_t int_value_ = 0;
  std::vector<ProgramAst> children_;
  int position_ = -1;
};

// Parses a whitespace-tokenized S-expression. Throws Error with
// kUnbalancedParens, kUnknownToken, kUnknownOp (an unregistered symbol in
// operator position) or kArityMismatch; messages include the token index.
ProgramAst ParseProgram(std::span<const std::string> tokens,
                        const OpRegistry& registry = OpRegistry::Builtin());
ProgramAst ParseProgram(std::string_view text,
                        const OpRegistry& registry = OpRegistry::Builtin());

// Structural parse that accepts any symbol in operator position and skips
// arity checks. Used for statistics over programs with unregistered ops.
ProgramAst ParseProgramUnchecked(std::span<const std::string> tokens);

// Canonical form: every application parenthesized, single spaces.
std::vector<std::string> Serialize(const ProgramAst& ast);
std::string SerializeToString(const ProgramAst& ast);

std::vector<std::string> SplitTokens(std::string_view text);
std::string JoinTokens(std::span<const std::string> tokens);

int TreeDepth(const ProgramAst& ast);

// Tokens of the canonical serialization. Parentheses are excluded unless
// `count_parens` is set.
int CodeLength(const ProgramAst& ast, bool count_parens = false);

// Identifier leaves that are not reserved registry symbols, in first
// occurrence order.
std::vector<std::string> FreeIdentifiers(
    const ProgramAst& ast, const OpRegistry& registry = OpRegistry::Builtin());

// An injective identifier substitution, kept in insertion order.
class VarMap {
 public:
  VarMap() = default;
  VarMap(std::initializer_list<std::pair<std::string, std::string>> pairs);

  // Throws Error(kCollision) if `to` is already the image of another name.
  void Add(std::string from, std::string to);

  // Both directions of a swap.
  static VarMap Swap(const std::string& x, const std::string& y);

  const std::string* Lookup(std::string_view name) const;
  bool empty() const { return pairs_.empty(); }
  const std::vector<std::pair<std::string, std::string>>& pairs() const {
    return pairs_;
  }

  // Returns the map x -> outer(this(x)), extended with outer's entries on
  // names this map does not touch.
  VarMap Then(const VarMap& outer) const;

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
};

// Replaces every identifier leaf in the map's domain. Throws Error(kCollision)
// when a new name equals an unmapped identifier already present in the tree.
ProgramAst RenameIdentifiers(const ProgramAst& ast, const VarMap& map);

}  // namespace algolisp

#endif  // ALGOLISP_AST_H_
