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

#ifndef ALGOLISP_CORPUS_H_
#define ALGOLISP_CORPUS_H_

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "algolisp/ast.h"
#include "algolisp/error.h"
#include "algolisp/interp.h"
#include "json.hpp"

namespace algolisp {

using Tokens = std::vector<std::string>;

// One problem: description, signature, ground-truth program and I/O tests.
//
// `program_tokens` is the source of truth for the program. `program` holds its
// parse; it is empty when parsing failed (typically an operator missing from
// the registry), in which case `parse_error` says why and the instance is
// kept so statistics still account for it.
struct ProblemInstance {
  std::string id;
  Tokens text;
  std::vector<std::pair<std::string, std::string>> args;  // name, type
  std::string return_type;
  Tokens program_tokens;
  std::optional<ProgramAst> program;
  std::optional<ErrorCode> parse_error_code;
  std::string parse_error;
  std::vector<IoPair> tests;
  // Free-form annotations (augmentation provenance and the like). Null when
  // absent; round-trips through the canonical format.
  nlohmann::ordered_json meta;

  bool parsed() const { return program.has_value(); }

  // Replaces the program, keeping tokens and parse in sync.
  void SetProgram(const ProgramAst& ast);
  // Re-parses `program_tokens` against `registry`.
  void Reparse(const OpRegistry& registry = OpRegistry::Builtin());

  // Compares every serialized field; the parse cache is ignored.
  friend bool operator==(const ProblemInstance& a, const ProblemInstance& b);
};

enum class CorpusFormat { kCanonicalJsonl, kOfficialJson };

CorpusFormat ParseCorpusFormat(const std::string& name);

// Canonical JSONL, one object per line:
//   {"id", "text": "tok tok", "args": [["a","int[]"]], "return_type",
//    "program": "( tok ... )", "tests": [{"input": {...}, "output": ...}],
//    "meta"?: {...}}
// The official format is the upstream dataset's JSON lines (text as a token
// list, program as the nested "short_tree" list, args as an object); a whole
// file holding one JSON array is also accepted. Missing ids are assigned from
// the record index. Throws Error(kParseError) naming the line.
std::vector<ProblemInstance> LoadCorpus(
    std::istream& in, CorpusFormat format,
    const OpRegistry& registry = OpRegistry::Builtin());
std::vector<ProblemInstance> LoadCorpusFile(
    const std::string& path, CorpusFormat format,
    const OpRegistry& registry = OpRegistry::Builtin());

nlohmann::ordered_json InstanceToJson(const ProblemInstance& instance);
ProblemInstance InstanceFromJson(const nlohmann::ordered_json& j,
                                 const OpRegistry& registry =
                                     OpRegistry::Builtin());

void WriteCorpus(const std::vector<ProblemInstance>& instances,
                 std::ostream& out);
// "-" writes to stdout.
void WriteCorpusFile(const std::vector<ProblemInstance>& instances,
                     const std::string& path);

struct Rejection {
  ProblemInstance instance;
  std::vector<std::string> reasons;
};

struct FilterResult {
  std::vector<ProblemInstance> kept;
  std::vector<Rejection> rejected;
};

// Keeps the instances whose ground-truth program passes every test. Unparsed
// programs and empty test suites are rejected with a reason.
FilterResult FilterValid(const std::vector<ProblemInstance>& instances,
                         const Limits& limits = {}, int jobs = 1,
                         const OpRegistry& registry = OpRegistry::Builtin());

struct DatasetStats {
  std::size_t instances = 0;
  double avg_text_length = 0;
  double avg_code_depth = 0;
  double avg_code_length = 0;
  std::size_t vocabulary_size = 0;
};

// Throws Error(kEmptyCorpus) for an empty input. Programs with unregistered
// operators are measured from their structural parse.
DatasetStats ComputeStats(const std::vector<ProblemInstance>& instances,
                          bool count_parens = false);

nlohmann::ordered_json StatsToJson(const DatasetStats& stats);
// Two-column text table shaped like the usual dataset summary.
std::string StatsTable(const DatasetStats& stats, const std::string& label);

}  // namespace algolisp

#endif  // ALGOLISP_CORPUS_H_
