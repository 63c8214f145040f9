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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails. Set ALGOLISP_DATA to the official dataset (a JSONL
// file or a directory of them) to run the dataset criterion at full scale.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "algolisp/attacks.h"
#include "algolisp/attention.h"
#include "algolisp/augment.h"
#include "algolisp/corpus.h"
#include "algolisp/interp.h"
#include "algolisp/judge.h"
#include "algolisp/metrics.h"
#include "algolisp/text.h"
#include "json.hpp"
#include "support/edit_space.h"
#include "support/synthetic_corpus.h"

namespace algolisp {
namespace {

using Clock = std::chrono::steady_clock;
using Ints = std::vector<std::int64_t>;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

Value IntList(const Ints& xs) {
  ValueList out;
  for (auto x : xs) out.push_back(Value::Int(x));
  return Value::List(std::move(out));
}

// ---- 1

Outcome InterpreterFidelity() {
  const ProgramAst program =
      ParseProgram("( slice a ( / ( len a ) 2 ) ( len a ) )");
  const std::vector<std::pair<Ints, Ints>> cases = {
      {{20, 21, 7, 21, 6, 21, 25, 24, 14, 20, 17}, {21, 25, 24, 14, 20, 17}},
      {{15, 17, 30, 13, 4, 24, 11}, {13, 4, 24, 11}}};
  Outcome o{true, ""};
  std::ostringstream detail;
  detail << std::fixed << std::setprecision(4);
  for (const auto& [input, expected] : cases) {
    Env env;
    env.bindings.emplace("a", IntList(input));
    const auto start = Clock::now();
    const Value got = Eval(program, env);
    const double ms = Seconds(start) * 1e3;
    const bool ok = got == IntList(expected) && ms < 1.0;
    o.pass = o.pass && ok;
    detail << got.ToString() << " in " << ms << " ms; ";
  }
  o.detail = detail.str();
  return o;
}

// ---- 2

std::int64_t NativeFactorial(std::int64_t n) {
  std::int64_t f = 1;
  for (std::int64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

Ints NativeReverseOdd(const Ints& xs) {
  Ints out;
  for (std::size_t i = xs.size(); i-- > 0;) {
    if (xs[i] % 2 != 0) out.push_back(xs[i]);
  }
  return out;
}

Outcome FactorialAndFilterOracles() {
  const ProgramAst factorial = ParseProgram(
      "( invoke1 ( lambda1 ( if ( <= arg1 1 ) 1 ( * ( self ( - arg1 1 ) ) "
      "arg1 ) ) ) a )");
  const ProgramAst reverse_odd =
      ParseProgram("( reverse ( filter a ( lambda1 ( == ( % arg1 2 ) 1 ) ) ) )");
  std::size_t checked = 0, mismatches = 0;
  auto run = [&](const ProgramAst& p, const Value& a, const Value& want) {
    Env env;
    env.bindings.emplace("a", a);
    ++checked;
    if (!(Eval(p, env) == want)) ++mismatches;
  };
  for (std::int64_t n = 0; n <= 10; ++n) {
    run(factorial, Value::Int(n), Value::Int(NativeFactorial(n)));
    Ints upto;
    for (std::int64_t i = 0; i <= n; ++i) upto.push_back(i);
    run(reverse_odd, IntList(upto), IntList(NativeReverseOdd(upto)));
  }
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<std::size_t> len(0, 30);
  std::uniform_int_distribution<std::int64_t> val(0, 1000), small(0, 20);
  for (int i = 0; i < 500; ++i) {
    Ints xs(len(rng));
    for (auto& x : xs) x = val(rng);
    run(reverse_odd, IntList(xs), IntList(NativeReverseOdd(xs)));
    const std::int64_t n = small(rng);
    run(factorial, Value::Int(n), Value::Int(NativeFactorial(n)));
  }
  return {mismatches == 0, std::to_string(checked) + " evaluations, " +
                               std::to_string(mismatches) + " mismatches"};
}

// ---- 3

bool Within(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::fabs(want);
}

std::vector<ProblemInstance> LoadOfficial(const std::string& path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(path)) {
    return LoadCorpusFile(path, CorpusFormat::kOfficialJson);
  }
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(path)) {
    const auto ext = e.path().extension().string();
    if (ext == ".jsonl" || ext == ".json") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  std::vector<ProblemInstance> all;
  for (const auto& f : files) {
    auto part = LoadCorpusFile(f, CorpusFormat::kOfficialJson);
    for (auto& inst : part) {
      inst.id = fs::path(f).stem().string() + ":" + inst.id;
      all.push_back(std::move(inst));
    }
  }
  return all;
}

Outcome DatasetReproduction() {
  const auto start = Clock::now();
  const char* data = std::getenv("ALGOLISP_DATA");
  std::ostringstream d;
  d << std::fixed << std::setprecision(2);
  if (data != nullptr && *data != '\0') {
    const auto corpus = LoadOfficial(data);
    const DatasetStats s = ComputeStats(corpus);
    const FilterResult f = FilterValid(corpus, {}, 4);
    const double secs = Seconds(start);
    const bool ok = s.instances == 100000 &&
                    Within(s.avg_text_length, 37.97, 0.005) &&
                    Within(s.avg_code_depth, 10.35, 0.005) &&
                    Within(s.avg_code_length, 45.13, 0.005) &&
                    Within(static_cast<double>(s.vocabulary_size), 288, 0.005) &&
                    Within(static_cast<double>(f.kept.size()), 90153, 0.01) &&
                    secs < 1800;
    d << "official data: N=" << s.instances << " text=" << s.avg_text_length
      << " depth=" << s.avg_code_depth << " length=" << s.avg_code_length
      << " vocab=" << s.vocabulary_size << " kept=" << f.kept.size() << " in "
      << secs << " s";
    return {ok, d.str()};
  }
  const std::string dir = ALGOLISP_FIXTURE_DIR;
  nlohmann::json expected;
  std::ifstream(dir + "/synthetic50.expected.json") >> expected;
  const auto corpus =
      LoadCorpusFile(dir + "/synthetic50.jsonl", CorpusFormat::kCanonicalJsonl);
  const DatasetStats s = ComputeStats(corpus);
  const FilterResult f = FilterValid(corpus);
  std::vector<std::string> rejected;
  for (const auto& r : f.rejected) rejected.push_back(r.instance.id);
  const auto& e = expected["stats"];
  const bool ok =
      s.instances == e["instances"].get<std::size_t>() &&
      std::fabs(s.avg_text_length - e["avg_text_length"].get<double>()) < 1e-12 &&
      std::fabs(s.avg_code_depth - e["avg_code_depth"].get<double>()) < 1e-12 &&
      std::fabs(s.avg_code_length - e["avg_code_length"].get<double>()) < 1e-12 &&
      s.vocabulary_size == e["vocabulary_size"].get<std::size_t>() &&
      f.kept.size() == expected["filter"]["kept"].get<std::size_t>() &&
      rejected == expected["filter"]["rejected"].get<std::vector<std::string>>();
  d << "official data absent (set ALGOLISP_DATA); 50-instance fixture: N="
    << s.instances << " text=" << s.avg_text_length
    << " depth=" << s.avg_code_depth << " length=" << s.avg_code_length
    << " vocab=" << s.vocabulary_size << " kept=" << f.kept.size();
  return {ok, d.str()};
}

// ---- 4

Outcome AttackValidity() {
  const auto corpus = testing::SyntheticCorpus(4000, 42);
  std::map<std::string, const ProblemInstance*> by_id;
  for (const auto& inst : corpus) by_id[inst.id] = &inst;
  const auto start = Clock::now();
  const auto suite = BuildSuite(corpus, 200, 42);
  const double secs = Seconds(start);
  std::map<AttackClass, std::size_t> count, bad;
  for (const auto& adv : suite) {
    ++count[adv.attack];
    const ProblemInstance& src = *by_id.at(adv.original_id);
    const ProblemInstance& out = adv.instance;
    bool ok = true;
    if (CategoryOf(adv.attack) == AttackCategory::kDirectional) {
      ok = out.parsed();
      if (ok) {
        for (const auto& t : RunTests(*out.program, out.tests)) ok = ok && t.passed;
      }
    } else {
      auto tests_json = [](const ProblemInstance& i) {
        return InstanceToJson(i)["tests"].dump();
      };
      ok = out.program_tokens == src.program_tokens &&
           tests_json(out) == tests_json(src);
    }
    if (adv.attack == AttackClass::kSR) {
      ok = ok && TokenLevenshtein(src.text, out.text) == 1;
    }
    if (!ok) ++bad[adv.attack];
  }
  std::size_t total_bad = 0;
  for (const auto& [c, n] : bad) total_bad += n;
  std::ostringstream d;
  d << suite.size() << " instances";
  for (AttackClass c : kAllAttackClasses) d << ' ' << AttackClassName(c) << '=' << count[c];
  d << ", " << total_bad << " invalid, " << std::fixed << std::setprecision(1)
    << secs << " s";
  return {suite.size() == 1000 && total_bad == 0 && secs < 120, d.str()};
}

// ---- 5

Outcome Metrics() {
  const testing::EditSpace space;
  std::size_t mismatches = 0;
  for (std::size_t a = 0; a < space.seqs.size(); ++a) {
    const auto dist = space.Bfs(static_cast<int>(a));
    for (std::size_t b = 0; b < space.seqs.size(); ++b) {
      if (TokenLevenshtein(space.seqs[a], space.seqs[b]) != dist[b]) ++mismatches;
    }
  }
  const std::vector<std::tuple<double, double, double>> cells = {
      {4.20, 4.25, 99}, {4.20, 3.60, 88}, {3.70, 3.50, 96},
      {3.95, 3.85, 98}, {4.15, 3.60, 89}, {3.45, 3.60, 97}};
  std::ostringstream d;
  d << space.seqs.size() * space.seqs.size() << " pairs, " << mismatches
    << " mismatches; confusion";
  bool cells_ok = true;
  for (const auto& [o, a, want] : cells) {
    const double got = ConfusionPct(o, a);
    cells_ok = cells_ok && std::fabs(got - want) <= 0.5;
    d << ' ' << std::setprecision(6) << got;
  }
  return {mismatches == 0 && cells_ok, d.str()};
}

// ---- 6

std::string Dump(const std::vector<ProblemInstance>& corpus) {
  std::ostringstream out;
  WriteCorpus(corpus, out);
  return out.str();
}

Outcome Augmentation() {
  const auto corpus = testing::SyntheticCorpus(10000, 42);
  UnigramMaskFiller filler(corpus);
  FixtureTranslator translator({}, /*passthrough=*/true);
  SelfAttentionSource attention(42);
  AugmentConfig cfg;
  cfg.seed = 42;
  AugmentProviders providers{&filler, &translator, &attention, {}};
  const auto start = Clock::now();
  const AugmentResult first = RunPipeline(corpus, cfg, providers);
  const double secs = Seconds(start);
  const AugmentResult second = RunPipeline(corpus, cfg, providers);
  const bool identical = Dump(first.corpus) == Dump(second.corpus);

  std::map<std::string, const ProblemInstance*> by_id;
  for (const auto& inst : corpus) by_id[inst.id] = &inst;
  std::size_t audited = 0, law_ok = 0;
  for (std::size_t i = 0; i < first.variants; ++i) {
    const ProblemInstance& v = first.corpus[i];
    const std::string op = v.meta.at("op");
    if (op != "RD" && op != "RS") continue;
    const ProblemInstance& src = *by_id.at(v.meta.at("source").get<std::string>());
    const std::size_t k = static_cast<std::size_t>(
        std::floor(0.1 * static_cast<double>(src.text.size()) + 1e-9));
    ++audited;
    if (op == "RD") {
      // Deleting k tokens: k shorter and a subsequence of the source.
      std::size_t j = 0;
      for (const auto& t : src.text) {
        if (j < v.text.size() && v.text[j] == t) ++j;
      }
      law_ok += v.text.size() + k == src.text.size() && j == v.text.size();
    } else {
      std::size_t diff = 0;
      if (v.text.size() == src.text.size()) {
        for (std::size_t t = 0; t < v.text.size(); ++t) diff += v.text[t] != src.text[t];
      }
      law_ok += v.text.size() == src.text.size() && diff == k;
    }
  }
  const double scaled = 1.8 * 79214;
  const bool scale_ok = std::fabs(scaled - 142644) <= 0.005 * 142644;
  std::ostringstream d;
  d << first.variants << " variants from 10000 (expected 8000 +- 240); RD/RS "
    << law_ok << "/" << audited << " exact; 1.8 x 79214 = " << std::fixed
    << std::setprecision(1) << scaled << " vs 142644; rerun "
    << (identical ? "identical" : "DIFFERENT") << "; " << secs << " s";
  return {first.variants >= 7760 && first.variants <= 8240 && audited > 0 &&
              law_ok == audited && scale_ok && identical,
          d.str()};
}

// ---- 7

Outcome AttentionKernel() {
  const auto start = Clock::now();
  std::mt19937_64 rng(7);
  double worst_row = 0, worst_shift = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8, m = 1 + rng() % 8, d = 1 + rng() % 16;
    const DenseMatrix q = DenseMatrix::Random(n, d, rng, -4, 4);
    const DenseMatrix k = DenseMatrix::Random(m, d, rng, -4, 4);
    const DenseMatrix v = DenseMatrix::Random(m, d, rng, -4, 4);
    const DenseMatrix w = AttentionWeights(q, k);
    for (std::size_t r = 0; r < n; ++r) {
      double total = 0;
      for (std::size_t c = 0; c < m; ++c) {
        if (w(r, c) < 0) worst_row = 1;
        total += w(r, c);
      }
      worst_row = std::max(worst_row, std::fabs(total - 1.0));
    }
    DenseMatrix scores = MatMulTransposed(q, k);
    const DenseMatrix base = MatMul(SoftmaxRows(scores), v);
    const double shift = std::uniform_real_distribution<double>(-50, 50)(rng);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < m; ++c) scores(r, c) += shift * double(r + 1);
    }
    const DenseMatrix shifted = MatMul(SoftmaxRows(scores), v);
    for (std::size_t i = 0; i < base.data().size(); ++i) {
      worst_shift = std::max(worst_shift,
                             std::fabs(base.data()[i] - shifted.data()[i]));
    }
  }
  double worst_grad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 8, m = 1 + rng() % 8, d = 1 + rng() % 16;
    const std::uint64_t seed = rng();
    for (AttnOp op : {AttnOp::kSda, AttnOp::kGca, AttnOp::kGcaCross}) {
      worst_grad = std::max(worst_grad, GradCheck(op, n, m, d, seed, 1e-4).max_rel_error);
    }
  }
  const double secs = Seconds(start);
  std::ostringstream d;
  d << std::scientific << std::setprecision(2) << "row-sum error " << worst_row
    << ", shift error " << worst_shift << ", grad-check max rel " << worst_grad
    << " (20 configs x 3 ops); " << std::fixed << secs << " s";
  return {worst_row <= 1e-12 && worst_shift <= 1e-12 && worst_grad < 1e-5 &&
              secs < 10,
          d.str()};
}

// ---- 8

Outcome JudgeFixture() {
  const auto corpus = testing::SyntheticCorpus(1000, 41);
  std::map<std::string, std::string> preds;
  for (const auto& inst : corpus) preds[inst.id] = JoinTokens(inst.program_tokens);
  const EvalReport perfect = ScorePredictions(corpus, preds);
  for (std::size_t i = 0; i < 42; ++i) {
    preds[corpus[i * 23].id] = (i % 2 == 0) ? "( ( broken" : "( + 1 1 )";
  }
  const EvalReport partial = ScorePredictions(corpus, preds);
  std::ostringstream d;
  d << "model accuracies, model error rates and human scores are not "
       "reproducible without trained models or annotators; judge fixture: "
       "A=" << perfect.accuracy << " (all correct), A=" << partial.accuracy
    << " (42/1000 corrupted)";
  return {perfect.accuracy == 1.0 && partial.accuracy == 0.958 &&
              partial.n == 958,
          d.str()};
}

}  // namespace
}  // namespace algolisp

int main() {
  using namespace algolisp;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"interpreter fidelity", InterpreterFidelity},
      {"factorial/filter oracles", FactorialAndFilterOracles},
      {"dataset reproduction", DatasetReproduction},
      {"attack validity", AttackValidity},
      {"metrics", Metrics},
      {"augmentation arithmetic", Augmentation},
      {"attention kernel", AttentionKernel},
      {"prediction scoring", JudgeFixture},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << " ("
              << criteria[i].first << "): " << o.detail << " [" << std::fixed
              << std::setprecision(2) << Seconds(start) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
