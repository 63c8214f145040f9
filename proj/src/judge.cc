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

#include "algolisp/judge.h"

#include <fstream>
#include <iostream>

#include "algolisp/error.h"
#include "algolisp/parallel.h"

namespace algolisp {

bool IsSolution(const ProgramAst& program, const std::vector<IoPair>& tests,
                const Limits& limits, const OpRegistry& registry) {
  if (tests.empty()) {
    throw Error(ErrorCode::kEmptyTestSuite, "cannot judge against zero tests");
  }
  for (const auto& outcome : RunTests(program, tests, limits, registry)) {
    if (!outcome.passed) return false;
  }
  return true;
}

bool IsAdversarialFailure(const ProgramAst& program,
                          const std::vector<IoPair>& tests,
                          const Limits& limits, const OpRegistry& registry) {
  return !IsSolution(program, tests, limits, registry);
}

std::vector<std::string> EvalReport::FailureIds() const {
  std::vector<std::string> ids;
  for (const auto& v : verdicts) {
    if (!v.passed) ids.push_back(v.id);
  }
  return ids;
}

EvalReport ScorePredictions(const std::vector<ProblemInstance>& instances,
                            const std::map<std::string, std::string>& predictions,
                            const Limits& limits, int jobs,
                            const OpRegistry& registry) {
  EvalReport report;
  report.verdicts.resize(instances.size());
  ParallelFor(instances.size(), jobs, [&](std::size_t i) {
    const ProblemInstance& inst = instances[i];
    InstanceVerdict& v = report.verdicts[i];
    v.id = inst.id;
    auto it = predictions.find(inst.id);
    if (it == predictions.end()) {
      v.note = "missing prediction";
      return;
    }
    if (inst.tests.empty()) {
      v.note = "instance has no tests";
      return;
    }
    ProgramAst program;
    try {
      program = ParseProgram(it->second, registry);
    } catch (const Error& e) {
      v.note = std::string("unparsable prediction: ") + e.what();
      return;
    }
    v.outcomes = RunTests(program, inst.tests, limits, registry);
    v.passed = true;
    for (std::size_t k = 0; k < v.outcomes.size(); ++k) {
      if (!v.outcomes[k].passed) {
        v.passed = false;
        v.note = "test " + std::to_string(k) + ": " + v.outcomes[k].detail;
        break;
      }
    }
  });
  report.total = instances.size();
  for (const auto& v : report.verdicts) report.n += v.passed ? 1 : 0;
  if (report.total > 0) {
    report.accuracy =
        static_cast<double>(report.n) / static_cast<double>(report.total);
  }
  report.error_pct = 100.0 - 100.0 * report.accuracy;
  return report;
}

std::map<std::string, std::string> LoadPredictions(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      const auto& program = j.at("program");
      std::string text;
      if (program.is_array()) {
        for (const auto& t : program) text += (text.empty() ? "" : " ") + t.get<std::string>();
      } else {
        text = program.get<std::string>();
      }
      out[j.at("id").get<std::string>()] = std::move(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::map<std::string, std::string> LoadPredictionsFile(const std::string& path) {
  if (path == "-") return LoadPredictions(std::cin);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return LoadPredictions(in);
}

nlohmann::ordered_json ReportToJson(const EvalReport& report) {
  return {{"n", report.n},
          {"N", report.total},
          {"accuracy", report.accuracy},
          {"error_pct", report.error_pct},
          {"failures", report.FailureIds()}};
}

}  // namespace algolisp
