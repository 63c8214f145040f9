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

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "algolisp/attacks.h"
#include "algolisp/attention.h"
#include "algolisp/augment.h"
#include "algolisp/corpus.h"
#include "algolisp/digest.h"
#include "algolisp/error.h"
#include "algolisp/judge.h"
#include "algolisp/metrics.h"
#include "algolisp/providers.h"
#include "algolisp/text.h"
#include "json.hpp"

#ifndef ALGOLISP_VERSION
#define ALGOLISP_VERSION "0.0.0"
#endif

namespace algolisp {
namespace {

using Json = nlohmann::ordered_json;

// Options shared by every leaf command.
struct Common {
  std::uint64_t seed = 42;
  int jobs = 1;
  std::string out = "-";
  std::string manifest;
};

// Everything a run reports about itself besides its output.
struct Run {
  std::string subcommand;
  Json config = Json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

std::string Env(const char* name) {
  const char* v = std::getenv(name);
  return v == nullptr ? std::string() : std::string(v);
}

std::optional<DiskCache> CacheFrom(const std::string& dir) {
  const std::string d = dir.empty() ? Env("PROVIDER_CACHE_DIR") : dir;
  if (d.empty()) return std::nullopt;
  return DiskCache(d);
}

void WriteTo(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  fn(out);
  if (!out) throw Error(ErrorCode::kIoError, "write to '" + path + "' failed");
}

Json Digests(const std::vector<std::string>& paths) {
  Json j = Json::object();
  for (const auto& p : paths) {
    j[p] = p == "-" ? std::string("stdio") : FileSha256Hex(p);
  }
  return j;
}

void WriteManifest(const Run& run, const Common& common, double seconds) {
  Json m;
  m["subcommand"] = run.subcommand;
  m["config"] = run.config;
  m["seed"] = common.seed;
  m["jobs"] = common.jobs;
  m["inputs"] = Digests(run.inputs);
  m["outputs"] = Digests(run.outputs);
  m["tool_version"] = ALGOLISP_VERSION;
  m["wall_clock_seconds"] = seconds;
  std::string path = common.manifest;
  if (path.empty() && common.out != "-") path = common.out + ".manifest.json";
  if (path.empty() || path == "-") {
    std::cerr << m.dump() << '\n';
    return;
  }
  WriteTo(path, [&](std::ostream& o) { o << m.dump(2) << '\n'; });
}

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads")
      ->capture_default_str()
      ->check(CLI::Range(1, 256));
  cmd->add_option("--out", c.out, "Output path, - for stdout")
      ->capture_default_str();
  cmd->add_option("--manifest", c.manifest,
                  "Run manifest path (default <out>.manifest.json)");
}

CorpusFormat FormatFrom(const std::string& name) { return ParseCorpusFormat(name); }

// ---- corpus

void RegisterCorpus(CLI::App& app, Common& c, Run& run,
                    std::function<void()>& action) {
  auto* corpus = app.add_subcommand("corpus", "Load, filter, convert and "
                                              "summarize corpora");
  corpus->require_subcommand(1);
  static std::string in, format = "canonical", rejected;
  static bool count_parens = false, table = false;

  auto* load = corpus->add_subcommand("load", "Parse a corpus and report "
                                              "what was loaded");
  auto* convert = corpus->add_subcommand("convert", "Rewrite a corpus in the "
                                                    "canonical JSONL format");
  auto* filter = corpus->add_subcommand("filter", "Keep instances whose "
                                                  "program passes its tests");
  auto* stats = corpus->add_subcommand("stats", "Dataset statistics");
  for (auto* cmd : {load, convert, filter, stats}) {
    AddCommon(cmd, c);
    cmd->add_option("--in", in, "Input corpus")->required();
    cmd->add_option("--format", format, "canonical | official")
        ->capture_default_str()
        ->check(CLI::IsMember({"canonical", "official"}));
  }
  filter->add_option("--rejected", rejected,
                     "Write rejected instances with reasons (JSONL)");
  stats->add_flag("--count-parens", count_parens,
                  "Count parentheses in code length");
  stats->add_flag("--table", table, "Print a text table instead of JSON");

  auto base = [&run, &c](const std::string& name) {
    run.subcommand = "corpus " + name;
    run.config = {{"in", in}, {"format", format}, {"out", c.out}};
    run.inputs = {in};
  };
  load->callback([&, base] {
    action = [&, base] {
      base("load");
      const auto instances = LoadCorpusFile(in, FormatFrom(format));
      Json summary;
      summary["instances"] = instances.size();
      std::map<std::string, std::size_t> unparsed;
      std::size_t parsed = 0;
      for (const auto& inst : instances) {
        if (inst.parsed()) {
          ++parsed;
        } else {
          ++unparsed[std::string(ErrorCodeName(*inst.parse_error_code))];
        }
      }
      summary["parsed"] = parsed;
      summary["unparsed"] = unparsed;
      WriteTo(c.out, [&](std::ostream& o) { o << summary.dump() << '\n'; });
      run.outputs = {c.out};
    };
  });
  convert->callback([&, base] {
    action = [&, base] {
      base("convert");
      const auto instances = LoadCorpusFile(in, FormatFrom(format));
      WriteTo(c.out, [&](std::ostream& o) { WriteCorpus(instances, o); });
      run.outputs = {c.out};
    };
  });
  filter->callback([&, base] {
    action = [&, base] {
      base("filter");
      run.config["rejected"] = rejected;
      const auto instances = LoadCorpusFile(in, FormatFrom(format));
      const FilterResult r = FilterValid(instances, {}, c.jobs);
      WriteTo(c.out, [&](std::ostream& o) { WriteCorpus(r.kept, o); });
      run.outputs = {c.out};
      run.config["kept"] = r.kept.size();
      run.config["rejected_count"] = r.rejected.size();
      if (!rejected.empty()) {
        WriteTo(rejected, [&](std::ostream& o) {
          for (const auto& rej : r.rejected) {
            Json j;
            j["id"] = rej.instance.id;
            j["reasons"] = rej.reasons;
            o << j.dump() << '\n';
          }
        });
        run.outputs.push_back(rejected);
      }
    };
  });
  stats->callback([&, base] {
    action = [&, base] {
      base("stats");
      run.config["count_parens"] = count_parens;
      run.config["table"] = table;
      const auto instances = LoadCorpusFile(in, FormatFrom(format));
      const DatasetStats s = ComputeStats(instances, count_parens);
      WriteTo(c.out, [&](std::ostream& o) {
        if (table) {
          o << StatsTable(s, std::filesystem::path(in).stem().string());
        } else {
          o << StatsToJson(s).dump() << '\n';
        }
      });
      run.outputs = {c.out};
    };
  });
}

// ---- judge

void RegisterJudge(CLI::App& app, Common& c, Run& run,
                   std::function<void()>& action) {
  auto* judge = app.add_subcommand("judge", "Score predicted programs");
  judge->require_subcommand(1);
  static std::string corpus, predictions;
  static std::int64_t max_steps = Limits{}.max_steps;
  auto* eval = judge->add_subcommand("eval", "Accuracy of a predictions file");
  AddCommon(eval, c);
  eval->add_option("--corpus", corpus, "Instances with tests")->required();
  eval->add_option("--predictions", predictions,
                   "JSONL of {\"id\", \"program\"}")
      ->required();
  eval->add_option("--max-steps", max_steps, "Interpreter step limit")
      ->capture_default_str();
  eval->callback([&] {
    action = [&] {
      run.subcommand = "judge eval";
      run.config = {{"corpus", corpus},
                    {"predictions", predictions},
                    {"max_steps", max_steps},
                    {"out", c.out}};
      run.inputs = {corpus, predictions};
      const auto instances = LoadCorpusFile(corpus, CorpusFormat::kCanonicalJsonl);
      const auto preds = LoadPredictionsFile(predictions);
      Limits limits;
      limits.max_steps = max_steps;
      const EvalReport report = ScorePredictions(instances, preds, limits, c.jobs);
      WriteTo(c.out,
              [&](std::ostream& o) { o << ReportToJson(report).dump() << '\n'; });
      run.outputs = {c.out};
    };
  });
}

// ---- attack

std::vector<AttackClass> ClassesFrom(const std::string& spec) {
  if (Lower(spec) == "all") {
    return {kAllAttackClasses.begin(), kAllAttackClasses.end()};
  }
  std::vector<AttackClass> out;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(ParseAttackClass(part));
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no attack class given");
  }
  return out;
}

void RegisterAttack(CLI::App& app, Common& c, Run& run,
                    std::function<void()>& action) {
  auto* attack = app.add_subcommand("attack", "Adversarial description suites");
  attack->require_subcommand(1);
  static std::string in, classes = "all", lexicon;
  static std::size_t per_class = 200;
  auto* gen = attack->add_subcommand("gen", "Generate a validated suite");
  AddCommon(gen, c);
  gen->add_option("--in", in, "Source corpus (canonical JSONL)")->required();
  gen->add_option("--class", classes, "vc, rr, sr, voc, vi, a comma list, or all")
      ->capture_default_str();
  gen->add_option("--per-class", per_class, "Instances per class")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  gen->add_option("--lexicon", lexicon, "Synonym TSV for SR");
  gen->callback([&] {
    action = [&] {
      run.subcommand = "attack gen";
      run.config = {{"in", in},         {"class", classes},
                    {"per_class", per_class}, {"lexicon", lexicon},
                    {"out", c.out}};
      run.inputs = {in};
      const auto corpus = LoadCorpusFile(in, CorpusFormat::kCanonicalJsonl);
      SynonymLexicon custom;
      AttackOptions options;
      if (!lexicon.empty()) {
        custom = LoadSynonymsTsv(lexicon);
        options.lexicon = &custom;
        run.inputs.push_back(lexicon);
      }
      const auto suite = BuildSuite(corpus, per_class, c.seed,
                                    ClassesFrom(classes), options, c.jobs);
      WriteTo(c.out, [&](std::ostream& o) { WriteSuite(suite, o); });
      run.outputs = {c.out};
    };
  });
}

// ---- metrics

std::string FormatNumber(double x) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(4);
  s << x;
  return s.str();
}

void RegisterMetrics(CLI::App& app, Common& c, Run& run,
                     std::function<void()>& action) {
  auto* metrics = app.add_subcommand("metrics", "Perturbation distances");
  metrics->require_subcommand(1);
  static std::string suite_path, corpus_path, embeddings, embedding_url,
      cache_dir;
  static bool table = false;
  auto* distance = metrics->add_subcommand(
      "distance", "Per-class mean Levenshtein, ratio and embedding distance");
  AddCommon(distance, c);
  distance->add_option("--suite", suite_path, "Suite JSONL")->required();
  distance->add_option("--corpus", corpus_path,
                       "Source corpus, needed for embedding distances");
  auto* fixture = distance->add_option("--embeddings", embeddings,
                                       "Fixture embeddings JSON");
  distance->add_option("--embedding-url", embedding_url,
                       "Embedding service URL (default $EMBEDDING_URL)")
      ->excludes(fixture);
  distance->add_option("--cache-dir", cache_dir,
                       "Provider cache (default $PROVIDER_CACHE_DIR)");
  distance->add_flag("--table", table, "Print a text table instead of JSON");
  distance->callback([&] {
    action = [&] {
      run.subcommand = "metrics distance";
      if (embedding_url.empty() && embeddings.empty()) {
        embedding_url = Env("EMBEDDING_URL");
      }
      run.config = {{"suite", suite_path},         {"corpus", corpus_path},
                    {"embeddings", embeddings},    {"embedding_url", embedding_url},
                    {"table", table},              {"out", c.out}};
      run.inputs = {suite_path};
      std::unique_ptr<EmbeddingProvider> provider;
      if (!embeddings.empty()) {
        provider = FixtureEmbeddings::FromFile(embeddings);
        run.inputs.push_back(embeddings);
      } else if (!embedding_url.empty()) {
        provider = std::make_unique<HttpEmbeddings>(embedding_url,
                                                    CacheFrom(cache_dir));
      }
      if (provider && corpus_path.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "embedding distances need --corpus for the original texts");
      }
      std::map<std::string, const ProblemInstance*> originals;
      std::vector<ProblemInstance> corpus;
      if (!corpus_path.empty()) {
        corpus = LoadCorpusFile(corpus_path, CorpusFormat::kCanonicalJsonl);
        for (const auto& inst : corpus) originals[inst.id] = &inst;
        run.inputs.push_back(corpus_path);
      }
      const auto suite = LoadSuiteFile(suite_path);

      struct Sums {
        std::size_t n = 0;
        double lev = 0, ratio = 0, emb = 0;
        std::size_t emb_n = 0;
      };
      std::map<AttackClass, Sums> sums;
      for (const auto& adv : suite) {
        DistanceReport d = adv.distance;
        if (!originals.empty()) {
          auto it = originals.find(adv.original_id);
          if (it == originals.end()) {
            throw Error(ErrorCode::kInvalidArgument,
                        "suite names unknown original '" + adv.original_id + "'");
          }
          d = MeasureDistance(it->second->text, adv.instance.text,
                              provider.get());
        }
        Sums& s = sums[adv.attack];
        ++s.n;
        s.lev += d.lev;
        s.ratio += d.lev_ratio;
        if (d.embedding_distance) {
          s.emb += *d.embedding_distance;
          ++s.emb_n;
        }
      }
      Json rows = Json::array();
      for (AttackClass cls : kAllAttackClasses) {
        auto it = sums.find(cls);
        if (it == sums.end()) continue;
        const Sums& s = it->second;
        Json row;
        row["class"] = AttackClassName(cls);
        row["category"] = AttackCategoryName(CategoryOf(cls));
        row["count"] = s.n;
        row["lev"] = s.lev / static_cast<double>(s.n);
        row["lev_ratio"] = s.ratio / static_cast<double>(s.n);
        row["embedding_distance"] =
            s.emb_n == 0 ? Json(nullptr)
                         : Json(s.emb / static_cast<double>(s.emb_n));
        rows.push_back(row);
      }
      WriteTo(c.out, [&](std::ostream& o) {
        if (!table) {
          o << Json{{"classes", rows}}.dump() << '\n';
          return;
        }
        o << "class  count  Lev      LevR     Emb\n";
        for (const auto& r : rows) {
          std::string name = r["class"].get<std::string>();
          name.resize(7, ' ');
          std::string count = std::to_string(r["count"].get<std::size_t>());
          count.resize(7, ' ');
          o << name << count << FormatNumber(r["lev"].get<double>()) << "   "
            << FormatNumber(r["lev_ratio"].get<double>()) << "   "
            << (r["embedding_distance"].is_null()
                    ? std::string("-")
                    : FormatNumber(r["embedding_distance"].get<double>()))
            << '\n';
        }
      });
      run.outputs = {c.out};
    };
  });
}

// ---- augment

std::array<double, 3> ParseRho(const std::string& text) {
  std::array<double, 3> rho{};
  std::stringstream ss(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(ss, part, ',')) {
    if (i == 3) break;
    try {
      std::size_t used = 0;
      rho[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad --rho value '" + part + "'");
    }
    ++i;
  }
  if (i != 3 || std::getline(ss, part, ',')) {
    throw Error(ErrorCode::kInvalidArgument, "--rho needs three values");
  }
  return rho;
}

void RegisterAugment(CLI::App& app, Common& c, Run& run,
                     std::function<void()>& action) {
  auto* augment = app.add_subcommand("augment", "Description augmentation");
  augment->require_subcommand(1);
  static std::string in, rho = "0.5,0.2,0.1", translator_url,
                         translator_fixture, translator_cache, filler_url,
                         filler = "unigram", audit_path, pivot = "de";
  static bool passthrough = false;
  static double alpha = 0.1;
  auto* run_cmd = augment->add_subcommand("run", "Augment a corpus");
  AddCommon(run_cmd, c);
  run_cmd->add_option("--in", in, "Source corpus (canonical JSONL)")->required();
  run_cmd->add_option("--alpha", alpha, "Fraction of tokens edited")
      ->capture_default_str();
  run_cmd->add_option("--rho", rho, "Edit, back-translation and attention "
                                    "probabilities")
      ->capture_default_str();
  run_cmd->add_option("--pivot", pivot, "Pivot language")->capture_default_str();
  auto* t_url = run_cmd->add_option("--translator-url", translator_url,
                                    "Translation service (default "
                                    "$TRANSLATOR_URL)");
  run_cmd->add_option("--translator-fixture", translator_fixture,
                      "Fixture translation table JSON")
      ->excludes(t_url);
  run_cmd->add_flag("--translator-passthrough", passthrough,
                    "Untranslated texts come back unchanged");
  run_cmd->add_option("--translator-cache", translator_cache,
                      "Provider cache directory (default "
                      "$PROVIDER_CACHE_DIR)");
  auto* f_url = run_cmd->add_option("--filler-url", filler_url,
                                    "Mask-filling service (default "
                                    "$FILLER_URL)");
  run_cmd->add_option("--filler", filler, "Offline filler: unigram")
      ->check(CLI::IsMember({"unigram"}))
      ->excludes(f_url);
  run_cmd->add_option("--audit", audit_path,
                      "Audit log JSONL (default <out>.audit.jsonl)");
  run_cmd->callback([&] {
    action = [&] {
      run.subcommand = "augment run";
      if (translator_url.empty() && translator_fixture.empty() && !passthrough) {
        translator_url = Env("TRANSLATOR_URL");
      }
      if (filler_url.empty()) filler_url = Env("FILLER_URL");
      if (audit_path.empty() && c.out != "-") audit_path = c.out + ".audit.jsonl";
      AugmentConfig cfg;
      cfg.alpha = alpha;
      const auto r = ParseRho(rho);
      cfg.rho_edit = r[0];
      cfg.rho_back_translate = r[1];
      cfg.rho_attention = r[2];
      cfg.seed = c.seed;
      cfg.pivot = pivot;
      cfg.Validate();

      run.config = {{"in", in},
                    {"alpha", alpha},
                    {"rho", {r[0], r[1], r[2]}},
                    {"sigma_long", cfg.sigma_long},
                    {"sigma_short", cfg.sigma_short},
                    {"pivot", pivot},
                    {"translator_url", translator_url},
                    {"translator_fixture", translator_fixture},
                    {"translator_passthrough", passthrough},
                    {"filler", filler_url.empty() ? filler : "http"},
                    {"filler_url", filler_url},
                    {"attention", "self-attention"},
                    {"audit", audit_path},
                    {"out", c.out}};
      run.inputs = {in};
      const auto corpus = LoadCorpusFile(in, CorpusFormat::kCanonicalJsonl);

      std::unique_ptr<Translator> translator;
      if (!translator_fixture.empty()) {
        translator = FixtureTranslator::FromFile(translator_fixture, passthrough);
        run.inputs.push_back(translator_fixture);
      } else if (!translator_url.empty()) {
        translator = std::make_unique<HttpTranslator>(
            translator_url, CacheFrom(translator_cache));
      } else if (passthrough) {
        translator = std::make_unique<FixtureTranslator>(
            FixtureTranslator::Table{}, true);
      }
      std::unique_ptr<MaskFiller> fill;
      if (!filler_url.empty()) {
        fill = std::make_unique<HttpMaskFiller>(filler_url,
                                                CacheFrom(translator_cache));
      } else {
        fill = std::make_unique<UnigramMaskFiller>(corpus);
      }
      SelfAttentionSource attention(c.seed);
      AugmentProviders providers{fill.get(), translator.get(), &attention, {}};
      const AugmentResult result = RunPipeline(corpus, cfg, providers, c.jobs);

      WriteTo(c.out, [&](std::ostream& o) { WriteCorpus(result.corpus, o); });
      run.outputs = {c.out};
      if (!audit_path.empty()) {
        WriteTo(audit_path, [&](std::ostream& o) { WriteAudit(result.audit, o); });
        run.outputs.push_back(audit_path);
      }
      std::size_t skipped = 0;
      for (const auto& a : result.audit) skipped += a.status == "skipped";
      run.config["instances"] = corpus.size();
      run.config["variants"] = result.variants;
      run.config["skipped"] = skipped;
    };
  });
}

// ---- attn

void RegisterAttn(CLI::App& app, Common& c, Run& run,
                  std::function<void()>& action, int& exit_code) {
  auto* attn = app.add_subcommand("attn", "Attention kernel checks");
  attn->require_subcommand(1);
  static std::string op = "gca";
  static std::size_t n = 4, m = 0, d = 8;
  static double eps = 1e-4, tolerance = 1e-5;
  auto* check = attn->add_subcommand("grad-check",
                                     "Analytic vs finite-difference gradients");
  AddCommon(check, c);
  check->add_option("--op", op, "sda | gca | gca-cross")
      ->capture_default_str()
      ->check(CLI::IsMember({"sda", "gca", "gca-cross"}));
  check->add_option("--n", n, "Query rows")->capture_default_str()->check(
      CLI::PositiveNumber);
  check->add_option("--m", m, "Key rows (default n)");
  check->add_option("--d", d, "Model width")->capture_default_str()->check(
      CLI::PositiveNumber);
  check->add_option("--eps", eps, "Finite-difference step")->capture_default_str();
  check->add_option("--tolerance", tolerance, "Maximum relative error")
      ->capture_default_str();
  check->callback([&] {
    action = [&] {
      run.subcommand = "attn grad-check";
      const std::size_t keys = m == 0 ? n : m;
      run.config = {{"op", op}, {"n", n},     {"m", keys},         {"d", d},
                    {"eps", eps}, {"tolerance", tolerance}, {"out", c.out}};
      const GradCheckResult r = GradCheck(ParseAttnOp(op), n, keys, d, c.seed, eps);
      Json j = run.config;
      j.erase("out");
      j["seed"] = c.seed;
      j["max_rel_error"] = r.max_rel_error;
      j["entries"] = r.entries;
      j["worst_entry"] = r.worst_entry;
      j["pass"] = r.max_rel_error < tolerance;
      WriteTo(c.out, [&](std::ostream& o) { o << j.dump() << '\n'; });
      run.outputs = {c.out};
      if (r.max_rel_error >= tolerance) exit_code = 1;
    };
  });
}

int Main(int argc, char** argv) {
  CLI::App app{"AlgoLisp toolkit: DSL judging, adversarial suites, distances, "
               "augmentation and attention checks",
               "algolisp"};
  app.set_version_flag("--version", ALGOLISP_VERSION);
  app.require_subcommand(1);
  Common common;
  Run run;
  std::function<void()> action;
  int exit_code = 0;
  RegisterCorpus(app, common, run, action);
  RegisterJudge(app, common, run, action);
  RegisterAttack(app, common, run, action);
  RegisterMetrics(app, common, run, action);
  RegisterAugment(app, common, run, action);
  RegisterAttn(app, common, run, action, exit_code);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    action();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    WriteManifest(run, common, seconds);
  } catch (const Error& e) {
    Json err;
    err["error"] = ErrorCodeName(e.code());
    err["message"] = e.what();
    err["subcommand"] = run.subcommand;
    std::cerr << err.dump() << '\n';
    return 1;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = "Internal";
    err["message"] = e.what();
    err["subcommand"] = run.subcommand;
    std::cerr << err.dump() << '\n';
    return 1;
  }
  return exit_code;
}

}  // namespace
}  // namespace algolisp

int main(int argc, char** argv) { return algolisp::Main(argc, argv); }
