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

#ifndef ALGOLISP_PROVIDERS_H_
#define ALGOLISP_PROVIDERS_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "algolisp/corpus.h"
#include "json.hpp"

namespace algolisp {

// Services the toolkit consumes but does not implement: sentence embeddings,
// masked-token infilling, machine translation and attention weights. Each has
// a hermetic implementation (fixture file or local model) and, where it makes
// sense, an HTTP client with an on-disk cache.
//
// Implementations must tolerate concurrent calls.

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // Throws Error(kProviderUnavailable) when no vector can be produced.
  virtual std::vector<double> Embed(const std::string& text) = 0;
  virtual std::string name() const = 0;
};

inline constexpr std::string_view kMaskToken = "[MASK]";

class MaskFiller {
 public:
  virtual ~MaskFiller() = default;
  // Returns `tokens` with every kMaskToken replaced by a single word and
  // every other position untouched.
  virtual Tokens Fill(const Tokens& tokens, std::mt19937_64& rng) = 0;
  virtual std::string name() const = 0;
};

class Translator {
 public:
  virtual ~Translator() = default;
  // Language codes such as "en" and "de".
  virtual std::string Translate(const std::string& text,
                                const std::string& source,
                                const std::string& target) = 0;
  virtual std::string name() const = 0;
};

class AttentionSource {
 public:
  virtual ~AttentionSource() = default;
  // One non-negative weight per token, summing to 1.
  virtual std::vector<double> Weights(const Tokens& tokens) = 0;
  virtual std::string name() const = 0;
};

// True when the last provider call on this thread was answered from a disk
// cache. Reset by every cached provider call.
bool LastCallWasCacheHit();

// Content-addressed response store: one file per SHA-256 key. Writes go to a
// temporary file renamed into place, so readers never see partial entries.
class DiskCache {
 public:
  explicit DiskCache(std::string dir);
  std::optional<std::string> Get(const std::string& key) const;
  void Put(const std::string& key, const std::string& value) const;
  // SHA-256 of the request; `kind` separates services sharing a directory.
  static std::string Key(const std::string& kind, const std::string& request);
  const std::string& dir() const { return dir_; }

 private:
  std::string dir_;
};

// Posts JSON to a URL and returns the parsed JSON reply, consulting `cache`
// first when set. Throws Error(kProviderUnavailable) on transport or HTTP
// errors and on malformed replies.
class JsonHttpClient {
 public:
  JsonHttpClient(std::string url, std::optional<DiskCache> cache,
                 int timeout_seconds = 30);
  nlohmann::json Post(const std::string& kind, const nlohmann::json& request);
  const std::string& url() const { return url_; }

 private:
  std::string url_;
  std::optional<DiskCache> cache_;
  int timeout_seconds_;
  std::mutex mu_;
};

// ---- Embeddings

// JSON object mapping text to vectors.
class FixtureEmbeddings : public EmbeddingProvider {
 public:
  explicit FixtureEmbeddings(std::map<std::string, std::vector<double>> table);
  static std::unique_ptr<FixtureEmbeddings> FromFile(const std::string& path);
  std::vector<double> Embed(const std::string& text) override;
  std::string name() const override { return "fixture"; }

 private:
  std::map<std::string, std::vector<double>> table_;
};

// POST {"text": ...} -> {"embedding": [...]}.
class HttpEmbeddings : public EmbeddingProvider {
 public:
  HttpEmbeddings(std::string url, std::optional<DiskCache> cache);
  std::vector<double> Embed(const std::string& text) override;
  std::string name() const override { return "http"; }

 private:
  JsonHttpClient client_;
};

// ---- Mask filling

// Frequency-weighted unigram sampler over corpus description tokens,
// restricted to editable words. Punctuation, numerals and non-editable words
// are never proposed.
class UnigramMaskFiller : public MaskFiller {
 public:
  explicit UnigramMaskFiller(const std::vector<ProblemInstance>& corpus);
  UnigramMaskFiller(std::vector<std::string> words, std::vector<double> weights);
  Tokens Fill(const Tokens& tokens, std::mt19937_64& rng) override;
  std::string name() const override { return "unigram"; }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::discrete_distribution<std::size_t> dist_;
};

// POST {"tokens": [...], "mask": "[MASK]", "seed": n} -> {"tokens": [...]}.
class HttpMaskFiller : public MaskFiller {
 public:
  HttpMaskFiller(std::string url, std::optional<DiskCache> cache);
  Tokens Fill(const Tokens& tokens, std::mt19937_64& rng) override;
  std::string name() const override { return "http"; }

 private:
  JsonHttpClient client_;
};

// ---- Translation

// {"en>de": {"source text": "translation", ...}, "de>en": {...}}. With
// `passthrough`, unknown texts come back unchanged instead of failing.
class FixtureTranslator : public Translator {
 public:
  using Table = std::map<std::string, std::map<std::string, std::string>>;
  explicit FixtureTranslator(Table table, bool passthrough = false);
  static std::unique_ptr<FixtureTranslator> FromFile(const std::string& path,
                                                     bool passthrough = false);
  std::string Translate(const std::string& text, const std::string& source,
                        const std::string& target) override;
  std::string name() const override { return "fixture"; }

 private:
  Table table_;
  bool passthrough_;
};

// POST {"text", "source", "target"} -> {"text": ...}.
class HttpTranslator : public Translator {
 public:
  HttpTranslator(std::string url, std::optional<DiskCache> cache);
  std::string Translate(const std::string& text, const std::string& source,
                        const std::string& target) override;
  std::string name() const override { return "http"; }

 private:
  JsonHttpClient client_;
};

// ---- Attention

// Fixed weights per detokenized description.
class FixtureAttention : public AttentionSource {
 public:
  explicit FixtureAttention(std::map<std::string, std::vector<double>> table);
  std::vector<double> Weights(const Tokens& tokens) override;
  std::string name() const override { return "fixture"; }

 private:
  std::map<std::string, std::vector<double>> table_;
};

}  // namespace algolisp

#endif  // ALGOLISP_PROVIDERS_H_
