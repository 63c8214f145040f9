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

#include "algolisp/ast.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "algolisp/error.h"

namespace algolisp {
namespace {

bool IsIntegerToken(std::string_view t) {
  std::size_t i = (t.size() > 1 && t[0] == '-') ? 1 : 0;
  if (i == t.size()) return false;
  return std::all_of(t.begin() + i, t.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

bool IsIdentifierToken(std::string_view t) {
  if (t.empty()) return false;
  const unsigned char first = t[0];
  if (!std::isalpha(first) && first != '_') return false;
  return std::all_of(t.begin(), t.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

bool IsStringToken(std::string_view t) {
  return t.size() >= 2 && t.front() == '"' && t.back() == '"' &&
         t.substr(1, t.size() - 2).find('"') == std::string_view::npos;
}

std::string At(std::size_t pos) {
  return " at token " + std::to_string(pos);
}

class Parser {
 public:
  Parser(std::span<const std::string> tokens, const OpRegistry& registry,
         bool checked)
      : tokens_(tokens), registry_(registry), checked_(checked) {}

  ProgramAst ParseAll() {
    if (tokens_.empty()) {
      throw Error(ErrorCode::kUnbalancedParens, "empty program");
    }
    ProgramAst root = ParseExpr();
    if (pos_ != tokens_.size()) {
      if (tokens_[pos_] == ")") {
        throw Error(ErrorCode::kUnbalancedParens, "unmatched ')'" + At(pos_));
      }
      throw Error(ErrorCode::kUnbalancedParens,
                  "trailing tokens after program" + At(pos_));
    }
    return root;
  }

 private:
  ProgramAst ParseExpr() {
    if (pos_ >= tokens_.size()) {
      throw Error(ErrorCode::kUnbalancedParens,
                  "unexpected end of program, missing ')'");
    }
    const std::size_t start = pos_;
    const std::string& tok = tokens_[pos_++];
    if (tok == ")") {
      throw Error(ErrorCode::kUnbalancedParens, "unmatched ')'" + At(start));
    }
    if (tok != "(") {
      ProgramAst leaf = ParseLeaf(tok, start);
      leaf.set_position(static_cast<int>(start));
      return leaf;
    }
    if (pos_ >= tokens_.size()) {
      throw Error(ErrorCode::kUnbalancedParens,
                  "unexpected end of program after '('" + At(start));
    }
    const std::size_t op_pos = pos_;
    const std::string& op = tokens_[pos_++];
    if (op == "(" || op == ")") {
      throw Error(ErrorCode::kUnknownToken,
                  "expected operator after '('" + At(op_pos));
    }
    const OpSpec* spec = registry_.Find(op);
    if (spec == nullptr && !checked_) {
      std::vector<ProgramAst> children;
      while (pos_ < tokens_.size() && tokens_[pos_] != ")") {
        children.push_back(ParseExpr());
      }
      if (pos_ >= tokens_.size()) {
        throw Error(ErrorCode::kUnbalancedParens,
                    "missing ')' for '(' " + At(start));
      }
      ++pos_;
      ProgramAst node = ProgramAst::Apply(op, std::move(children));
      node.set_position(static_cast<int>(start));
      return node;
    }
    if (spec == nullptr) {
      if (IsIdentifierToken(op)) {
        throw Error(ErrorCode::kUnknownOp,
                    "unregistered operator '" + op + "'" + At(op_pos));
      }
      throw Error(ErrorCode::kUnknownToken,
                  "unknown token '" + op + "'" + At(op_pos));
    }
    std::vector<ProgramAst> children;
    while (true) {
      if (pos_ >= tokens_.size()) {
        throw Error(ErrorCode::kUnbalancedParens,
                    "missing ')' for '(' " + At(start));
      }
      if (tokens_[pos_] == ")") {
        ++pos_;
        break;
      }
      children.push_back(ParseExpr());
    }
    const int n = static_cast<int>(children.size());
    if (checked_ && !spec->AcceptsArity(n)) {
      throw Error(ErrorCode::kArityMismatch,
                  "'" + op + "' applied to " + std::to_string(n) +
                      " argument(s)" + At(op_pos));
    }
    ProgramAst node = ProgramAst::Apply(op, std::move(children));
    node.set_position(static_cast<int>(start));
    return node;
  }

  ProgramAst ParseLeaf(const std::string& tok, std::size_t pos) {
    if (IsIntegerToken(tok)) {
      std::int64_t v = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc()) {
        throw Error(ErrorCode::kUnknownToken,
                    "integer literal out of range '" + tok + "'" + At(pos));
      }
      return ProgramAst::Int(v);
    }
    if (IsStringToken(tok)) {
      return ProgramAst::String(tok.substr(1, tok.size() - 2));
    }
    if (IsIdentifierToken(tok) || registry_.IsReserved(tok) || !checked_) {
      return ProgramAst::Identifier(tok);
    }
    throw Error(ErrorCode::kUnknownToken,
                "unknown token '" + tok + "'" + At(pos));
  }

  std::span<const std::string> tokens_;
  const OpRegistry& registry_;
  bool checked_;
  std::size_t pos_ = 0;
};

void SerializeInto(const ProgramAst& ast, std::vector<std::string>& out) {
  switch (ast.kind()) {
    case ProgramAst::Kind::kApply:
      out.emplace_back("(");
      out.push_back(ast.symbol());
      for (const auto& c : ast.children()) SerializeInto(c, out);
      out.emplace_back(")");
      return;
    case ProgramAst::Kind::kIdentifier:
      out.push_back(ast.symbol());
      return;
    case ProgramAst::Kind::kInt:
      out.push_back(std::to_string(ast.int_value()));
      return;
    case ProgramAst::Kind::kString:
      out.push_back("\"" + ast.symbol() + "\"");
      return;
  }
}

void CollectIdentifiers(const ProgramAst& ast, const OpRegistry& registry,
                        std::vector<std::string>& out) {
  if (ast.is_identifier()) {
    if (!registry.IsReserved(ast.symbol()) &&
        std::find(out.begin(), out.end(), ast.symbol()) == out.end()) {
      out.push_back(ast.symbol());
    }
    return;
  }
  for (const auto& c : ast.children()) CollectIdentifiers(c, registry, out);
}

bool ContainsIdentifier(const ProgramAst& ast, std::string_view name) {
  if (ast.is_identifier()) return ast.symbol() == name;
  return std::any_of(
      ast.children().begin(), ast.children().end(),
      [&](const ProgramAst& c) { return ContainsIdentifier(c, name); });
}

ProgramAst RenameUnchecked(const ProgramAst& ast, const VarMap& map) {
  if (ast.is_identifier()) {
    const std::string* to = map.Lookup(ast.symbol());
    if (to == nullptr) return ast;
    ProgramAst leaf = ProgramAst::Identifier(*to);
    leaf.set_position(ast.position());
    return leaf;
  }
  if (!ast.is_apply()) return ast;
  std::vector<ProgramAst> children;
  children.reserve(ast.children().size());
  for (const auto& c : ast.children()) {
    children.push_back(RenameUnchecked(c, map));
  }
  ProgramAst node = ProgramAst::Apply(ast.symbol(), std::move(children));
  node.set_position(ast.position());
  return node;
}

}  // namespace

ProgramAst ProgramAst::Apply(std::string op, std::vector<ProgramAst> children) {
  ProgramAst n;
  n.kind_ = Kind::kApply;
  n.symbol_ = std::move(op);
  n.children_ = std::move(children);
  return n;
}

ProgramAst ProgramAst::Identifier(std::string name) {
  ProgramAst n;
  n.kind_ = Kind::kIdentifier;
  n.symbol_ = std::move(name);
  return n;
}

ProgramAst ProgramAst::Int(std::int64_t value) {
  ProgramAst n;
  n.kind_ = Kind::kInt;
  n.int_value_ = value;
  return n;
}

ProgramAst ProgramAst::String(std::string value) {
  ProgramAst n;
  n.kind_ = Kind::kString;
  n.symbol_ = std::move(value);
  return n;
}

bool operator==(const ProgramAst& a, const ProgramAst& b) {
  return a.kind_ == b.kind_ && a.symbol_ == b.symbol_ &&
         a.int_value_ == b.int_value_ && a.children_ == b.children_;
}

ProgramAst ParseProgram(std::span<const std::string> tokens,
                        const OpRegistry& registry) {
  return Parser(tokens, registry, /*checked=*/true).ParseAll();
}

ProgramAst ParseProgramUnchecked(std::span<const std::string> tokens) {
  return Parser(tokens, OpRegistry::Builtin(), /*checked=*/false).ParseAll();
}

ProgramAst ParseProgram(std::string_view text, const OpRegistry& registry) {
  const std::vector<std::string> tokens = SplitTokens(text);
  return ParseProgram(tokens, registry);
}

std::vector<std::string> Serialize(const ProgramAst& ast) {
  std::vector<std::string> out;
  SerializeInto(ast, out);
  return out;
}

std::string SerializeToString(const ProgramAst& ast) {
  return JoinTokens(Serialize(ast));
}

std::vector<std::string> SplitTokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string JoinTokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

int TreeDepth(const ProgramAst& ast) {
  int deepest = 0;
  for (const auto& c : ast.children()) deepest = std::max(deepest, TreeDepth(c));
  return 1 + deepest;
}

int CodeLength(const ProgramAst& ast, bool count_parens) {
  if (!ast.is_apply()) return 1;
  int n = count_parens ? 3 : 1;  // operator, plus '(' and ')'
  for (const auto& c : ast.children()) n += CodeLength(c, count_parens);
  return n;
}

std::vector<std::string> FreeIdentifiers(const ProgramAst& ast,
                                         const OpRegistry& registry) {
  std::vector<std::string> out;
  CollectIdentifiers(ast, registry, out);
  return out;
}

VarMap::VarMap(
    std::initializer_list<std::pair<std::string, std::string>> pairs) {
  for (const auto& [from, to] : pairs) Add(from, to);
}

void VarMap::Add(std::string from, std::string to) {
  for (auto& [f, t] : pairs_) {
    if (f == from) {
      throw Error(ErrorCode::kInvalidArgument,
                  "'" + from + "' mapped twice");
    }
    if (t == to) {
      throw Error(ErrorCode::kCollision, "'" + f + "' and '" + from +
                                             "' both map to '" + to + "'");
    }
  }
  pairs_.emplace_back(std::move(from), std::move(to));
}

VarMap VarMap::Swap(const std::string& x, const std::string& y) {
  VarMap m;
  m.Add(x, y);
  m.Add(y, x);
  return m;
}

const std::string* VarMap::Lookup(std::string_view name) const {
  for (const auto& [from, to] : pairs_) {
    if (from == name) return &to;
  }
  return nullptr;
}

VarMap VarMap::Then(const VarMap& outer) const {
  VarMap out;
  for (const auto& [from, to] : pairs_) {
    const std::string* next = outer.Lookup(to);
    const std::string& image = next ? *next : to;
    if (image != from) out.pairs_.emplace_back(from, image);
  }
  for (const auto& [from, to] : outer.pairs_) {
    if (Lookup(from) == nullptr) out.pairs_.emplace_back(from, to);
  }
  return out;
}

ProgramAst RenameIdentifiers(const ProgramAst& ast, const VarMap& map) {
  for (const auto& [from, to] : map.pairs()) {
    if (map.Lookup(to) == nullptr && ContainsIdentifier(ast, to)) {
      throw Error(ErrorCode::kCollision,
                  "renaming '" + from + "' to '" + to +
                      "' collides with an existing identifier");
    }
  }
  return RenameUnchecked(ast, map);
}

}  // namespace algolisp
