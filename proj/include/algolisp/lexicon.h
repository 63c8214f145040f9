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

#ifndef ALGOLISP_LEXICON_H_
#define ALGOLISP_LEXICON_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace algolisp {

using WordSet = std::set<std::string, std::less<>>;

// English stopwords (the common NLTK list).
const WordSet& Stopwords();

// Words that carry program semantics ("sum", "prime", "not", ...). Never
// deleted or substituted by attacks or augmentation.
const WordSet& NonEditableWords();

// Word -> same-part-of-speech replacements, curated for the templated
// problem-description language.
using SynonymLexicon = std::map<std::string, std::vector<std::string>, std::less<>>;

const SynonymLexicon& DefaultSynonyms();

// Reads "word<TAB>syn1,syn2,..." lines; '#' starts a comment. Throws
// Error(kIoError) or Error(kParseError).
SynonymLexicon LoadSynonymsTsv(const std::string& path);

// Leading clauses that voice conversion moves ("given", "you are given",
// "consider"), each as a token sequence.
const std::vector<std::vector<std::string>>& VoiceClausePrefixes();

// First words of a main clause: "your", "what", "find", ...
const WordSet& ClauseOpeners();

}  // namespace algolisp

#endif  // ALGOLISP_LEXICON_H_
