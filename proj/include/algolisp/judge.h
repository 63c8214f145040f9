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

#ifndef ALGOLISP_JUDGE_H_
#define ALGOLISP_JUDGE_H_

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "algolisp/corpus.h"
#include "algolisp/interp.h"
#include "json.hpp"

namespace algolisp {

// True iff the program passes every test. Throws Error(kEmptyTestSuite) for
// an empty suite.
bool IsSolution(const ProgramAst& program, const std::vector<IoPair>& tests,
                const Limits& limits = {},
                const OpRegistry& registry = OpRegistry::Builtin());

// Attacker's success criterion: the model output is not a solution. A single
// failing test is enough, which is how accuracy is counted in practice; the
// stricter "fails every test" reading is not used.
bool IsAdversarialFailure(const ProgramAst& program,
                          const std::vector<IoPair>& tests,
                          const Limits& limits = {},
                          const OpRegistry& registry = OpRegistry::Builtin());

struct InstanceVerdict {
  std::string id;
  bool passed = false;
  std::string note;  // "missing prediction", parse error, first failing test
  std::vector<TestOutcome> outcomes;
};

struct EvalReport {
  std::size_t n = 0;  // problems solved
  std::size_t total = 0;
  double accuracy = 0;
  double error_pct = 0;
  std::vector<InstanceVerdict> verdicts;  // in instance order

  std::vector<std::string> FailureIds() const;
};

// Scores predicted programs (token strings keyed by instance id) against each
// instance's tests. Missing and unparsable predictions count as failures.
EvalReport ScorePredictions(const std::vector<ProblemInstance>& instances,
                            const std::map<std::string, std::string>& predictions,
                            const Limits& limits = {}, int jobs = 1,
                            const OpRegistry& registry = OpRegistry::Builtin());

// JSONL lines of {"id": ..., "program": "..."}. Later lines win on duplicate
// ids. Throws Error(kParseError) naming the line.
std::map<std::string, std::string> LoadPredictions(std::istream& in);
std::map<std::string, std::string> LoadPredictionsFile(const std::string& path);

// {n, N, accuracy, error_pct, failures: [ids]}
nlohmann::ordered_json ReportToJson(const EvalReport& report);

}  // namespace algolisp

#endif  // ALGOLISP_JUDGE_H_
