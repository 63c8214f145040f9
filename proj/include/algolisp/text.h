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

#ifndef ALGOLISP_TEXT_H_
#define ALGOLISP_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

#include "algolisp/corpus.h"

namespace algolisp {

// Splits raw prose into word and punctuation tokens:
// "Given a string a, what is it?" -> Given a string a , what is it ?
Tokens TokenizeText(std::string_view text);

// Joins tokens with single spaces, attaching , . ? ! ; : to the left.
std::string DetokenizeText(const Tokens& tokens);

bool IsPunctuation(std::string_view token);
bool IsNumeral(std::string_view token);

// True when the single letter "a" at `index` reads as an article, i.e. it
// is followed by a noun-phrase word such as "number" or "string".
bool IsArticleAt(const Tokens& text, std::size_t index);

// True when the token at `index` refers to a variable: a single-letter word
// or one of `arg_names`, excluding the article use of "a".
bool IsVariableAt(const Tokens& text, std::size_t index,
                  const std::vector<std::string>& arg_names);

// Distinct variable names mentioned in the description, in first-mention
// order.
std::vector<std::string> DescriptionVariables(
    const Tokens& text, const std::vector<std::string>& arg_names);

std::vector<std::string> ArgNames(const ProblemInstance& instance);

// Lower-cased copy of an ASCII token.
std::string Lower(std::string_view token);
bool IsCapitalized(std::string_view token);
std::string Capitalize(std::string_view token);

}  // namespace algolisp

#endif  // ALGOLISP_TEXT_H_
