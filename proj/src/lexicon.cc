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

#include "algolisp/lexicon.h"

#include <fstream>
#include <sstream>

#include "algolisp/error.h"

namespace algolisp {

const WordSet& Stopwords() {
  static const WordSet kWords = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
      "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
      "she", "her", "hers", "herself", "it", "its", "itself", "they", "them",
      "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
      "that", "these", "those", "am", "is", "are", "was", "were", "be", "been",
      "being", "have", "has", "had", "having", "do", "does", "did", "doing",
      "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
      "while", "of", "at", "by", "for", "with", "about", "against", "between",
      "into", "through", "during", "before", "after", "above", "below", "to",
      "from", "up", "down", "in", "out", "on", "off", "over", "under", "again",
      "further", "then", "once", "here", "there", "when", "where", "why",
      "how", "all", "any", "both", "each", "few", "more", "most", "other",
      "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than",
      "too", "very", "s", "t", "can", "will", "just", "don", "should", "now",
  };
  return kWords;
}

const WordSet& NonEditableWords() {
  static const WordSet kWords = {
      // Operation names.
      "times", "sum", "digits", "digit", "maximum", "minimum", "max", "min",
      "prime", "last", "first", "concatenation", "concatenate", "product",
      "reverse", "reversed", "sorted", "sort", "length", "half", "odd", "even",
      "factorial", "difference", "median", "average", "divisible", "multiply",
      "divide", "remainder", "square", "increasing", "decreasing", "count",
      "slice", "position", "based", "plus", "minus",
      // Comparison, negation and direction words whose removal flips meaning.
      "not", "no", "nor", "only", "same", "than", "greater", "less", "larger",
      "smaller", "bigger", "equal", "more", "most", "few", "both", "each",
      "after", "before", "above", "below", "over", "under", "between", "up",
      "down", "off", "out", "ends", "starting", "ending", "if", "or",
  };
  return kWords;
}

const SynonymLexicon& DefaultSynonyms() {
  static const SynonymLexicon kLexicon = {
      {"is", {"equals"}},
      {"compute", {"calculate", "determine"}},
      {"find", {"determine", "compute"}},
      {"output", {"return", "print"}},
      {"elements", {"items", "entries"}},
      {"element", {"item", "entry"}},
      {"numbers", {"integers"}},
      {"number", {"integer"}},
      {"task", {"job", "assignment"}},
      {"given", {"provided"}},
      {"consider", {"take"}},
      {"keeping", {"retaining"}},
      {"values", {"elements", "numbers"}},
      {"appears", {"occurs"}},
      {"define", {"denote"}},
      {"array", {"list", "sequence"}},
      {"arrays", {"lists", "sequences"}},
      {"string", {"text"}},
      {"reads", {"looks"}},
      {"get", {"obtain"}},
      {"return", {"output"}},
      {"calculate", {"compute"}},
      {"what", {"which"}},
      {"keep", {"retain"}},
  };
  return kLexicon;
}

SynonymLexicon LoadSynonymsTsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open lexicon '" + path + "'");
  SynonymLexicon lexicon;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorCode::kParseError,
                  path + " line " + std::to_string(line_no) +
                      ": expected word<TAB>synonyms");
    }
    std::vector<std::string> syns;
    std::stringstream rest(line.substr(tab + 1));
    std::string s;
    while (std::getline(rest, s, ',')) {
      if (!s.empty()) syns.push_back(s);
    }
    auto& slot = lexicon[line.substr(0, tab)];
    slot.insert(slot.end(), syns.begin(), syns.end());
  }
  return lexicon;
}

const std::vector<std::vector<std::string>>& VoiceClausePrefixes() {
  static const std::vector<std::vector<std::string>> kPrefixes = {
      {"you", "are", "given"}, {"given"}, {"consider"}};
  return kPrefixes;
}

const WordSet& ClauseOpeners() {
  static const WordSet kWords = {
      "your", "what", "find", "compute", "return", "output", "define",
      "determine", "calculate", "check", "how", "is", "get", "count", "let",
  };
  return kWords;
}

}  // namespace algolisp
