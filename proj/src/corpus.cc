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

#include "algolisp/corpus.h"

#include <fstream>
#include <iostream>
#include <iomanip>
#include <set>
#include <sstream>

#include "algolisp/parallel.h"

namespace algolisp {

using nlohmann::ordered_json;

namespace {

[[noreturn]] void ParseFailure(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::kParseError,
              "line " + std::to_string(line) + ": " + what);
}

// Nested-list program trees: ["slice", "a", ["/", ["len", "a"], "2"], ...].
// A one-element list is the element itself (a bare leaf program).
void FlattenTree(const ordered_json& node, Tokens& out) {
  if (node.is_array()) {
    if (node.empty()) throw Error(ErrorCode::kParseError, "empty program list");
    if (node.size() == 1) {
      FlattenTree(node[0], out);
      return;
    }
    out.emplace_back("(");
    for (const auto& child : node) FlattenTree(child, out);
    out.emplace_back(")");
  } else if (node.is_string()) {
    const auto& s = node.get_ref<const std::string&>();
    for (auto& tok : SplitTokens(s)) out.push_back(std::move(tok));
  } else if (node.is_number_integer()) {
    out.push_back(std::to_string(node.get<std::int64_t>()));
  } else {
    throw Error(ErrorCode::kParseError, "unexpected program node " + node.dump());
  }
}

Tokens TextTokens(const ordered_json& text) {
  if (text.is_string()) return SplitTokens(text.get<std::string>());
  if (text.is_array()) {
    Tokens out;
    for (const auto& t : text) {
      if (!t.is_string()) throw Error(ErrorCode::kParseError, "non-string token");
      out.push_back(t.get<std::string>());
    }
    return out;
  }
  throw Error(ErrorCode::kParseError, "field 'text' must be a string or list");
}

std::vector<IoPair> TestsFromJson(const ordered_json& tests) {
  if (!tests.is_array()) {
    throw Error(ErrorCode::kParseError, "field 'tests' must be a list");
  }
  std::vector<IoPair> out;
  for (const auto& t : tests) {
    if (!t.is_object() || !t.contains("input") || !t.contains("output")) {
      throw Error(ErrorCode::kParseError, "test needs 'input' and 'output'");
    }
    IoPair pair;
    for (const auto& [name, value] : t.at("input").items()) {
      pair.input.emplace(name, ValueFromJson(value));
    }
    pair.output = ValueFromJson(t.at("output"));
    out.push_back(std::move(pair));
  }
  return out;
}

ordered_json TestsToJson(const std::vector<IoPair>& tests) {
  auto arr = ordered_json::array();
  for (const auto& t : tests) {
    ordered_json input = ordered_json::object();
    for (const auto& [name, value] : t.input) input[name] = ValueToJson(value);
    arr.push_back({{"input", std::move(input)}, {"output", ValueToJson(t.output)}});
  }
  return arr;
}

std::vector<std::pair<std::string, std::string>> ArgsFromJson(
    const ordered_json& args) {
  std::vector<std::pair<std::string, std::string>> out;
  if (args.is_object()) {
    for (const auto& [name, type] : args.items()) {
      out.emplace_back(name, type.get<std::string>());
    }
  } else if (args.is_array()) {
    for (const auto& pair : args) {
      if (!pair.is_array() || pair.size() != 2) {
        throw Error(ErrorCode::kParseError, "arg entries must be [name, type]");
      }
      out.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
    }
  } else if (!args.is_null()) {
    throw Error(ErrorCode::kParseError, "field 'args' must be a list or object");
  }
  return out;
}

std::string DefaultId(std::size_t index) {
  std::ostringstream out;
  out << "i" << std::setw(6) << std::setfill('0') << index;
  return out.str();
}

ProblemInstance OfficialFromJson(const ordered_json& j, std::size_t index,
                                 const OpRegistry& registry) {
  ProblemInstance inst;
  inst.id = j.contains("id") ? j.at("id").get<std::string>() : DefaultId(index);
  inst.text = TextTokens(j.at("text"));
  inst.args = ArgsFromJson(j.value("args", ordered_json()));
  inst.return_type = j.value("return_type", "");
  if (j.contains("short_tree")) {
    FlattenTree(j.at("short_tree"), inst.program_tokens);
  } else if (j.contains("code_tree")) {
    FlattenTree(j.at("code_tree"), inst.program_tokens);
  } else if (j.contains("code_sequence")) {
    inst.program_tokens = TextTokens(j.at("code_sequence"));
  } else {
    throw Error(ErrorCode::kParseError, "no program field (short_tree)");
  }
  inst.tests = TestsFromJson(j.value("tests", ordered_json::array()));
  inst.Reparse(registry);
  return inst;
}

std::vector<ProblemInstance> ParseLines(std::istream& in, CorpusFormat format,
                                        const OpRegistry& registry) {
  std::vector<ProblemInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      ParseFailure(line_no, std::string("malformed JSON: ") + e.what());
    }
    try {
      if (format == CorpusFormat::kCanonicalJsonl) {
        ProblemInstance inst = InstanceFromJson(j, registry);
        if (inst.id.empty()) inst.id = DefaultId(out.size());
        out.push_back(std::move(inst));
      } else {
        out.push_back(OfficialFromJson(j, out.size(), registry));
      }
    } catch (const Error& e) {
      ParseFailure(line_no, e.what());
    } catch (const nlohmann::json::exception& e) {
      ParseFailure(line_no, e.what());
    }
  }
  return out;
}

}  // namespace

void ProblemInstance::SetProgram(const ProgramAst& ast) {
  program_tokens = Serialize(ast);
  program = ast;
  parse_error_code.reset();
  parse_error.clear();
}

void ProblemInstance::Reparse(const OpRegistry& registry) {
  try {
    program = ParseProgram(program_tokens, registry);
    parse_error_code.reset();
    parse_error.clear();
  } catch (const Error& e) {
    program.reset();
    parse_error_code = e.code();
    parse_error = e.what();
  }
}

bool operator==(const ProblemInstance& a, const ProblemInstance& b) {
  return a.id == b.id && a.text == b.text && a.args == b.args &&
         a.return_type == b.return_type && a.program_tokens == b.program_tokens &&
         a.tests == b.tests && a.meta == b.meta;
}

CorpusFormat ParseCorpusFormat(const std::string& name) {
  if (name == "canonical-jsonl" || name == "canonical") {
    return CorpusFormat::kCanonicalJsonl;
  }
  if (name == "official-json" || name == "official") {
    return CorpusFormat::kOfficialJson;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown corpus format '" + name + "'");
}

ordered_json InstanceToJson(const ProblemInstance& instance) {
  ordered_json j;
  j["id"] = instance.id;
  j["text"] = JoinTokens(instance.text);
  auto args = ordered_json::array();
  for (const auto& [name, type] : instance.args) args.push_back({name, type});
  j["args"] = std::move(args);
  j["return_type"] = instance.return_type;
  j["program"] = JoinTokens(instance.program_tokens);
  j["tests"] = TestsToJson(instance.tests);
  if (!instance.meta.is_null()) j["meta"] = instance.meta;
  return j;
}

ProblemInstance InstanceFromJson(const ordered_json& j,
                                 const OpRegistry& registry) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "record is not an object");
  ProblemInstance inst;
  inst.id = j.value("id", "");
  if (!j.contains("text")) throw Error(ErrorCode::kParseError, "missing field 'text'");
  inst.text = TextTokens(j.at("text"));
  inst.args = ArgsFromJson(j.value("args", ordered_json()));
  inst.return_type = j.value("return_type", "");
  if (!j.contains("program")) {
    throw Error(ErrorCode::kParseError, "missing field 'program'");
  }
  inst.program_tokens = TextTokens(j.at("program"));
  inst.tests = TestsFromJson(j.value("tests", ordered_json::array()));
  if (j.contains("meta")) inst.meta = j.at("meta");
  inst.Reparse(registry);
  return inst;
}

std::vector<ProblemInstance> LoadCorpus(std::istream& in, CorpusFormat format,
                                        const OpRegistry& registry) {
  if (format == CorpusFormat::kOfficialJson) {
    // Whole-file JSON array variant.
    in >> std::ws;
    if (in.peek() == '[') {
      ordered_json all;
      try {
        all = ordered_json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kParseError,
                    std::string("line 1: malformed JSON: ") + e.what());
      }
      std::vector<ProblemInstance> out;
      for (std::size_t i = 0; i < all.size(); ++i) {
        try {
          out.push_back(OfficialFromJson(all[i], i, registry));
        } catch (const std::exception& e) {
          throw Error(ErrorCode::kParseError,
                      "record " + std::to_string(i) + ": " + e.what());
        }
      }
      return out;
    }
  }
  return ParseLines(in, format, registry);
}

std::vector<ProblemInstance> LoadCorpusFile(const std::string& path,
                                            CorpusFormat format,
                                            const OpRegistry& registry) {
  if (path == "-") return LoadCorpus(std::cin, format, registry);
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  return LoadCorpus(in, format, registry);
}

void WriteCorpus(const std::vector<ProblemInstance>& instances,
                 std::ostream& out) {
  for (const auto& inst : instances) out << InstanceToJson(inst).dump() << '\n';
}

void WriteCorpusFile(const std::vector<ProblemInstance>& instances,
                     const std::string& path) {
  if (path == "-") {
    WriteCorpus(instances, std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  WriteCorpus(instances, out);
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

FilterResult FilterValid(const std::vector<ProblemInstance>& instances,
                         const Limits& limits, int jobs,
                         const OpRegistry& registry) {
  std::vector<std::vector<std::string>> reasons(instances.size());
  ParallelFor(instances.size(), jobs, [&](std::size_t i) {
    const ProblemInstance& inst = instances[i];
    if (!inst.parsed()) {
      reasons[i].push_back(
          std::string(ErrorCodeName(
              inst.parse_error_code.value_or(ErrorCode::kParseError))) +
          ": " + inst.parse_error);
      return;
    }
    if (inst.tests.empty()) {
      reasons[i].push_back("EmptyTestSuite: instance has no tests");
      return;
    }
    const auto outcomes = RunTests(*inst.program, inst.tests, limits, registry);
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      if (outcomes[k].passed) continue;
      std::string why = "test " + std::to_string(k) + ": ";
      if (outcomes[k].error) {
        why += std::string(ErrorCodeName(*outcomes[k].error)) + ": ";
      }
      reasons[i].push_back(why + outcomes[k].detail);
    }
  });
  FilterResult result;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (reasons[i].empty()) {
      result.kept.push_back(instances[i]);
    } else {
      result.rejected.push_back({instances[i], std::move(reasons[i])});
    }
  }
  return result;
}

DatasetStats ComputeStats(const std::vector<ProblemInstance>& instances,
                          bool count_parens) {
  if (instances.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "statistics of an empty corpus");
  }
  double text = 0, depth = 0, length = 0;
  std::set<std::string> vocab;
  for (const auto& inst : instances) {
    text += static_cast<double>(inst.text.size());
    vocab.insert(inst.text.begin(), inst.text.end());
    const ProgramAst tree = inst.parsed()
                                ? *inst.program
                                : ParseProgramUnchecked(inst.program_tokens);
    depth += TreeDepth(tree);
    length += CodeLength(tree, count_parens);
  }
  const double n = static_cast<double>(instances.size());
  DatasetStats s;
  s.instances = instances.size();
  s.avg_text_length = text / n;
  s.avg_code_depth = depth / n;
  s.avg_code_length = length / n;
  s.vocabulary_size = vocab.size();
  return s;
}

ordered_json StatsToJson(const DatasetStats& stats) {
  return {{"instances", stats.instances},
          {"avg_text_length", stats.avg_text_length},
          {"avg_code_depth", stats.avg_code_depth},
          {"avg_code_length", stats.avg_code_length},
          {"vocabulary_size", stats.vocabulary_size}};
}

std::string StatsTable(const DatasetStats& stats, const std::string& label) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "" << label << "\n";
  out << std::setw(20) << "No. of instances" << stats.instances << "\n";
  out << std::fixed << std::setprecision(2);
  out << std::setw(20) << "Avg. text length" << stats.avg_text_length << "\n";
  out << std::setw(20) << "Avg. code depth" << stats.avg_code_depth << "\n";
  out << std::setw(20) << "Avg. code length" << stats.avg_code_length << "\n";
  out << std::setw(20) << "Vocabulary size" << stats.vocabulary_size << "\n";
  return out.str();
}

}  // namespace algolisp
