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

#include "algolisp/text.h"

#include <algorithm>
#include <cctype>
#include <set>

namespace algolisp {
namespace {

bool IsPunctChar(char c) {
  return c == ',' || c == '.' || c == '?' || c == '!' || c == ';' ||
         c == ':' || c == '(' || c == ')';
}

bool AttachesLeft(std::string_view t) {
  return t == "," || t == "." || t == "?" || t == "!" || t == ";" || t == ":";
}

const std::set<std::string, std::less<>>& NounPhraseWords() {
  static const std::set<std::string, std::less<>> kWords = {
      "number",   "numbers",  "string",   "strings",  "array",    "arrays",
      "list",     "lists",    "value",    "values",   "character",
      "characters", "digit",  "digits",   "sequence", "matrix",   "word",
      "words",    "new",      "positive", "negative", "non",      "single",
      "given",    "function", "lambda",   "boolean",  "integer",  "integers",
      "pair",     "set",      "sorted",   "random",   "valid",    "prime",
      "subarray", "sentence", "letter",   "position", "element",  "variable",
      "counter",  "total",    "result",   "copy",     "range",    "large",
      "small",    "few",      "lot",      "third",    "second",   "first",
      "last",     "half",     "product",  "sum",
  };
  return kWords;
}

}  // namespace

Tokens TokenizeText(std::string_view text) {
  Tokens out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (IsPunctChar(c)) {
      flush();
      out.emplace_back(1, c);
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

std::string DetokenizeText(const Tokens& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty() && !AttachesLeft(t)) out.push_back(' ');
    out += t;
  }
  return out;
}

bool IsPunctuation(std::string_view token) {
  return token.size() == 1 && IsPunctChar(token[0]);
}

bool IsNumeral(std::string_view token) {
  if (token.empty()) return false;
  std::size_t i = token[0] == '-' ? 1 : 0;
  if (i == token.size()) return false;
  return std::all_of(token.begin() + static_cast<std::ptrdiff_t>(i),
                     token.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool IsArticleAt(const Tokens& text, std::size_t index) {
  if (Lower(text[index]) != "a") return false;
  if (index + 1 >= text.size()) return false;
  return NounPhraseWords().count(Lower(text[index + 1])) > 0;
}

bool IsVariableAt(const Tokens& text, std::size_t index,
                  const std::vector<std::string>& arg_names) {
  const std::string& t = text[index];
  const bool is_arg =
      std::find(arg_names.begin(), arg_names.end(), t) != arg_names.end();
  const bool single_letter =
      t.size() == 1 && std::islower(static_cast<unsigned char>(t[0]));
  if (!is_arg && !single_letter) return false;
  return !IsArticleAt(text, index);
}

std::vector<std::string> DescriptionVariables(
    const Tokens& text, const std::vector<std::string>& arg_names) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (IsVariableAt(text, i, arg_names) &&
        std::find(out.begin(), out.end(), text[i]) == out.end()) {
      out.push_back(text[i]);
    }
  }
  return out;
}

std::vector<std::string> ArgNames(const ProblemInstance& instance) {
  std::vector<std::string> names;
  names.reserve(instance.args.size());
  for (const auto& [name, type] : instance.args) names.push_back(name);
  return names;
}

std::string Lower(std::string_view token) {
  std::string out(token);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool IsCapitalized(std::string_view token) {
  return !token.empty() && std::isupper(static_cast<unsigned char>(token[0]));
}

std::string Capitalize(std::string_view token) {
  std::string out(token);
  if (!out.empty()) {
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  }
  return out;
}

}  // namespace algolisp
