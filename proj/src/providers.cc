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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "algolisp/providers.h"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "algolisp/digest.h"
#include "algolisp/error.h"
#include "algolisp/lexicon.h"
#include "algolisp/text.h"
#include "httplib.h"

namespace algolisp {
namespace {

thread_local bool g_last_cache_hit = false;

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
}

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl ParseUrl(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "not an http(s) URL: '" + url + "'");
  }
  const auto slash = url.find('/', scheme + 3);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

std::string JoinText(const Tokens& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace

bool LastCallWasCacheHit() { return g_last_cache_hit; }

DiskCache::DiskCache(std::string dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create cache directory '" + dir_ + "': " + ec.message());
  }
}

std::string DiskCache::Key(const std::string& kind, const std::string& request) {
  return Sha256Hex(kind + '\n' + request);
}

std::optional<std::string> DiskCache::Get(const std::string& key) const {
  std::ifstream in(dir_ + "/" + key, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void DiskCache::Put(const std::string& key, const std::string& value) const {
  static std::atomic<std::uint64_t> counter{0};
  const std::string final_path = dir_ + "/" + key;
  std::ostringstream tmp_name;
  tmp_name << final_path << ".tmp." << std::this_thread::get_id() << "."
           << counter.fetch_add(1);
  const std::string tmp = tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << value;
    if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot commit cache entry " + key);
  }
}

JsonHttpClient::JsonHttpClient(std::string url, std::optional<DiskCache> cache,
                               int timeout_seconds)
    : url_(std::move(url)), cache_(std::move(cache)),
      timeout_seconds_(timeout_seconds) {
  ParseUrl(url_);
}

nlohmann::json JsonHttpClient::Post(const std::string& kind,
                                    const nlohmann::json& request) {
  const std::string body = request.dump();
  const std::string key = DiskCache::Key(kind, body);
  g_last_cache_hit = false;
  if (cache_) {
    if (auto hit = cache_->Get(key)) {
      try {
        auto reply = nlohmann::json::parse(*hit);
        g_last_cache_hit = true;
        return reply;
      } catch (const nlohmann::json::exception&) {
        // A corrupt entry is refetched and overwritten.
      }
    }
  }

  std::string reply_body;
  {
    std::lock_guard<std::mutex> lock(mu_);
    const SplitUrl parts = ParseUrl(url_);
    httplib::Client client(parts.origin);
    client.set_connection_timeout(timeout_seconds_);
    client.set_read_timeout(timeout_seconds_);
    auto res = client.Post(parts.path, body, "application/json");
    if (!res) {
      throw Error(ErrorCode::kProviderUnavailable,
                  kind + " service at " + url_ + ": " +
                      httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw Error(ErrorCode::kProviderUnavailable,
                  kind + " service at " + url_ + " returned HTTP " +
                      std::to_string(res->status));
    }
    reply_body = res->body;
  }
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(reply_body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProviderUnavailable,
                kind + " service returned malformed JSON: " + e.what());
  }
  if (cache_) cache_->Put(key, reply.dump());
  return reply;
}

// ---- Embeddings

FixtureEmbeddings::FixtureEmbeddings(
    std::map<std::string, std::vector<double>> table)
    : table_(std::move(table)) {}

std::unique_ptr<FixtureEmbeddings> FixtureEmbeddings::FromFile(
    const std::string& path) {
  const auto j = ReadJsonFile(path);
  if (!j.is_object()) {
    throw Error(ErrorCode::kParseError, path + ": expected an object");
  }
  std::map<std::string, std::vector<double>> table;
  try {
    for (const auto& [text, vec] : j.items()) {
      table.emplace(text, vec.get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
  return std::make_unique<FixtureEmbeddings>(std::move(table));
}

std::vector<double> FixtureEmbeddings::Embed(const std::string& text) {
  auto it = table_.find(text);
  if (it == table_.end()) {
    throw Error(ErrorCode::kProviderUnavailable,
                "no fixture embedding for \"" + text + "\"");
  }
  return it->second;
}

HttpEmbeddings::HttpEmbeddings(std::string url, std::optional<DiskCache> cache)
    : client_(std::move(url), std::move(cache)) {}

std::vector<double> HttpEmbeddings::Embed(const std::string& text) {
  const auto reply = client_.Post("embed", {{"text", text}});
  try {
    return reply.at("embedding").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProviderUnavailable,
                std::string("embedding reply lacks a vector: ") + e.what());
  }
}

// ---- Mask filling

UnigramMaskFiller::UnigramMaskFiller(const std::vector<ProblemInstance>& corpus) {
  std::map<std::string, double> counts;
  for (const auto& inst : corpus) {
    for (const auto& t : inst.text) {
      const std::string w = Lower(t);
      // Single letters are left out so fills never invent variables.
      if (w.size() < 2 || IsNumeral(w) || NonEditableWords().count(w) ||
          w == kMaskToken) {
        continue;
      }
      counts[w] += 1;
    }
  }
  if (counts.empty()) {
    throw Error(ErrorCode::kNoEditableTokens,
                "corpus has no editable words to sample fills from");
  }
  std::vector<double> weights;
  for (const auto& [w, c] : counts) {
    words_.push_back(w);
    weights.push_back(c);
  }
  dist_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
}

UnigramMaskFiller::UnigramMaskFiller(std::vector<std::string> words,
                                     std::vector<double> weights)
    : words_(std::move(words)) {
  if (words_.empty() || words_.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "unigram filler needs one weight per word");
  }
  dist_ = std::discrete_distribution<std::size_t>(weights.begin(), weights.end());
}

Tokens UnigramMaskFiller::Fill(const Tokens& tokens, std::mt19937_64& rng) {
  Tokens out = tokens;
  // The distribution object is shared; a copy keeps Fill safe to call from
  // several threads.
  auto dist = dist_;
  for (auto& t : out) {
    if (t == kMaskToken) t = words_[dist(rng)];
  }
  return out;
}

HttpMaskFiller::HttpMaskFiller(std::string url, std::optional<DiskCache> cache)
    : client_(std::move(url), std::move(cache)) {}

Tokens HttpMaskFiller::Fill(const Tokens& tokens, std::mt19937_64& rng) {
  const std::uint64_t nonce = rng() & 0xffffffffu;
  const auto reply = client_.Post(
      "fill", {{"tokens", tokens}, {"mask", kMaskToken}, {"seed", nonce}});
  Tokens filled;
  try {
    filled = reply.at("tokens").get<Tokens>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProviderUnavailable,
                std::string("fill reply lacks tokens: ") + e.what());
  }
  if (filled.size() != tokens.size()) {
    throw Error(ErrorCode::kProviderUnavailable,
                "fill service changed the sequence length");
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] != kMaskToken && filled[i] != tokens[i]) {
      throw Error(ErrorCode::kProviderUnavailable,
                  "fill service altered unmasked token " + std::to_string(i));
    }
    if (tokens[i] == kMaskToken &&
        (filled[i].empty() || filled[i] == kMaskToken)) {
      throw Error(ErrorCode::kProviderUnavailable,
                  "fill service left position " + std::to_string(i) + " empty");
    }
  }
  return filled;
}

// ---- Translation

FixtureTranslator::FixtureTranslator(Table table, bool passthrough)
    : table_(std::move(table)), passthrough_(passthrough) {}

std::unique_ptr<FixtureTranslator> FixtureTranslator::FromFile(
    const std::string& path, bool passthrough) {
  const auto j = ReadJsonFile(path);
  Table table;
  try {
    table = j.get<Table>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
  return std::make_unique<FixtureTranslator>(std::move(table), passthrough);
}

std::string FixtureTranslator::Translate(const std::string& text,
                                         const std::string& source,
                                         const std::string& target) {
  auto dir = table_.find(source + ">" + target);
  if (dir != table_.end()) {
    auto it = dir->second.find(text);
    if (it != dir->second.end()) return it->second;
  }
  if (passthrough_) return text;
  throw Error(ErrorCode::kProviderUnavailable,
              "no fixture translation " + source + ">" + target + " for \"" +
                  text + "\"");
}

HttpTranslator::HttpTranslator(std::string url, std::optional<DiskCache> cache)
    : client_(std::move(url), std::move(cache)) {}

std::string HttpTranslator::Translate(const std::string& text,
                                      const std::string& source,
                                      const std::string& target) {
  const auto reply = client_.Post(
      "translate", {{"text", text}, {"source", source}, {"target", target}});
  try {
    return reply.at("text").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kProviderUnavailable,
                std::string("translation reply lacks text: ") + e.what());
  }
}

// ---- Attention

FixtureAttention::FixtureAttention(
    std::map<std::string, std::vector<double>> table)
    : table_(std::move(table)) {}

std::vector<double> FixtureAttention::Weights(const Tokens& tokens) {
  const std::string key = JoinText(tokens);
  auto it = table_.find(key);
  if (it == table_.end() || it->second.size() != tokens.size()) {
    throw Error(ErrorCode::kProviderUnavailable,
                "no fixture attention for \"" + key + "\"");
  }
  return it->second;
}

}  // namespace algolisp
