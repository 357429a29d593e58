// Copyright 2026 The Stegocoder Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stego/lm_protocol.h"

#include <httplib.h>

#include <cmath>
#include <limits>
#include <cstdlib>
#include <utility>

#include <nlohmann/json.hpp>

#include "stego/error.h"

namespace stego {

namespace {

using nlohmann::json;

[[noreturn]] void ProtocolError(const std::string& what) {
  throw Error(ErrorCode::kProtocol, what);
}

json ParseBody(const std::string& body, const char* endpoint) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    ProtocolError(std::string(endpoint) + ": invalid JSON: " + e.what());
  }
}

const json& Field(const json& obj, const char* name, const char* endpoint) {
  if (!obj.is_object() || !obj.contains(name)) {
    ProtocolError(std::string(endpoint) + ": missing field '" + name + "'");
  }
  return obj.at(name);
}

TokenId ParseId(const json& v, std::size_t vocab_size, const char* endpoint) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= vocab_size) {
    ProtocolError(std::string(endpoint) + ": bad token id " + v.dump());
  }
  return static_cast<TokenId>(v.get<std::uint64_t>());
}

double ParseProbability(const json& v) {
  if (!v.is_string()) {
    ProtocolError("/distribution: probabilities must be decimal strings");
  }
  const std::string& s = v.get_ref<const std::string&>();
  char* end = nullptr;
  const double p = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(p) ||
      p < 0.0) {
    ProtocolError("/distribution: bad probability '" + s + "'");
  }
  return p;
}

void CheckStatus(const httplib::Result& res, const std::string& path) {
  if (!res) {
    const auto err = res.error();
    const std::string msg = path + ": " + httplib::to_string(err);
    if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
      throw Error(ErrorCode::kTimeout, msg);
    }
    throw Error(ErrorCode::kIo, msg);
  }
  if (res->status == 413) {
    throw Error(ErrorCode::kContextTooLong, path + ": context too long");
  }
  if (res->status != 200) {
    ProtocolError(path + ": HTTP " + std::to_string(res->status) + " " +
                  res->body);
  }
}

}  // namespace

LmClient::LmClient(const std::string& base_url,
                   std::chrono::milliseconds timeout) {
  try {
    http_ = std::make_unique<httplib::Client>(base_url);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad endpoint URL '" + base_url + "': " + e.what());
  }
  if (!http_->is_valid()) {
    throw Error(ErrorCode::kInvalidArgument, "bad endpoint URL '" + base_url + "'");
  }
  http_->set_connection_timeout(timeout);
  http_->set_read_timeout(timeout);
  http_->set_write_timeout(timeout);
  http_->set_keep_alive(true);
  http_->set_tcp_nodelay(true);
}

LmClient::~LmClient() = default;

std::string LmClient::Get(const std::string& path) {
  std::lock_guard<std::mutex> lock(mu_);
  auto res = http_->Get(path);
  CheckStatus(res, path);
  return res->body;
}

std::string LmClient::Post(const std::string& path, const std::string& body) {
  std::lock_guard<std::mutex> lock(mu_);
  auto res = http_->Post(path, body, "application/json");
  CheckStatus(res, path);
  return res->body;
}

VocabTable LmClient::FetchVocab() {
  const json doc = ParseBody(Get("/vocab"), "/vocab");
  const json& tokens = Field(doc, "tokens", "/vocab");
  if (!tokens.is_array() || tokens.empty()) {
    ProtocolError("/vocab: empty vocabulary");
  }
  std::vector<std::string> surfaces;
  surfaces.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!t.is_string()) ProtocolError("/vocab: token surfaces must be strings");
    surfaces.push_back(t.get<std::string>());
  }
  const TokenId bos = ParseId(Field(doc, "bos", "/vocab"), surfaces.size(),
                              "/vocab");
  const TokenId eos = ParseId(Field(doc, "eos", "/vocab"), surfaces.size(),
                              "/vocab");
  const json& max_context = Field(doc, "max_context", "/vocab");
  if (!max_context.is_number_unsigned() || max_context.get<std::size_t>() == 0) {
    ProtocolError("/vocab: max_context must be a positive integer");
  }
  VocabTable table;
  try {
    table.vocabulary = Vocabulary(std::move(surfaces), bos, eos);
  } catch (const Error& e) {
    ProtocolError(std::string("/vocab: ") + e.what());
  }
  table.max_context = max_context.get<std::size_t>();
  table.fingerprint = table.vocabulary.Fingerprint();
  return table;
}

std::vector<double> LmClient::FetchDistribution(
    std::span<const TokenId> context, std::size_t vocab_size,
    std::size_t max_context) {
  if (context.size() > max_context) {
    throw Error(ErrorCode::kContextTooLong,
                "context of " + std::to_string(context.size()) +
                    " tokens exceeds the server limit of " +
                    std::to_string(max_context));
  }
  const json request = {{"context", std::vector<TokenId>(context.begin(),
                                                         context.end())}};
  const json doc =
      ParseBody(Post("/distribution", request.dump()), "/distribution");
  const json& probs = Field(doc, "probs", "/distribution");
  if (!probs.is_array()) ProtocolError("/distribution: probs must be an array");

  std::vector<double> dist(vocab_size, 0.0);
  double total = 0.0;
  if (doc.contains("ids")) {
    const json& ids = doc.at("ids");
    if (!ids.is_array() || ids.size() != probs.size()) {
      ProtocolError("/distribution: ids and probs differ in length");
    }
    std::vector<bool> listed(vocab_size, false);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const TokenId id = ParseId(ids[i], vocab_size, "/distribution");
      if (listed[id]) ProtocolError("/distribution: repeated id");
      listed[id] = true;
      dist[id] = ParseProbability(probs[i]);
      total += dist[id];
    }
    const double rest = ParseProbability(Field(doc, "rest", "/distribution"));
    const std::size_t unlisted = vocab_size - ids.size();
    if (unlisted > 0) {
      const double share = rest / static_cast<double>(unlisted);
      for (std::size_t id = 0; id < vocab_size; ++id) {
        if (!listed[id]) dist[id] = share;
      }
    }
    total += rest;
  } else {
    if (probs.size() != vocab_size) {
      ProtocolError("/distribution: expected " + std::to_string(vocab_size) +
                    " probabilities, got " + std::to_string(probs.size()));
    }
    for (std::size_t id = 0; id < vocab_size; ++id) {
      dist[id] = ParseProbability(probs[id]);
      total += dist[id];
    }
  }
  if (std::abs(total - 1.0) > kDistributionSumTolerance) {
    ProtocolError("/distribution: probabilities sum to " +
                  std::to_string(total));
  }
  return dist;
}

std::vector<TokenId> LmClient::Tokenize(const std::string& text) {
  const json doc =
      ParseBody(Post("/tokenize", json{{"text", text}}.dump()), "/tokenize");
  const json& ids = Field(doc, "ids", "/tokenize");
  if (!ids.is_array()) ProtocolError("/tokenize: ids must be an array");
  std::vector<TokenId> out;
  for (const auto& id : ids) {
    out.push_back(ParseId(id, std::numeric_limits<TokenId>::max(), "/tokenize"));
  }
  return out;
}

std::string LmClient::Detokenize(std::span<const TokenId> ids) {
  const json request = {{"ids", std::vector<TokenId>(ids.begin(), ids.end())}};
  const json doc =
      ParseBody(Post("/detokenize", request.dump()), "/detokenize");
  const json& text = Field(doc, "text", "/detokenize");
  if (!text.is_string()) ProtocolError("/detokenize: text must be a string");
  return text.get<std::string>();
}

std::unique_ptr<RemoteModel> RemoteModel::Connect(
    const std::string& base_url, std::chrono::milliseconds timeout,
    const SessionOptions& options) {
  auto client = std::make_unique<LmClient>(base_url, timeout);
  VocabTable table = client->FetchVocab();
  if (options.expected_fingerprint &&
      *options.expected_fingerprint != table.fingerprint) {
    throw Error(ErrorCode::kKeyMismatch,
                "server vocabulary fingerprint " +
                    table.vocabulary.FingerprintHex() +
                    " does not match the key");
  }
  ModelEndpoint endpoint{base_url, timeout, table.max_context,
                         table.fingerprint};
  std::unique_ptr<RemoteModel> model(
      new RemoteModel(std::move(endpoint), std::move(table)));
  model->client_ = std::move(client);

  const std::size_t v = model->vocab_.size();
  const TokenId bos = model->vocab_.bos();
  for (std::size_t c = 0; c < options.probe_contexts; ++c) {
    std::vector<TokenId> context = {bos};
    for (std::size_t j = 0; j < c && context.size() < model->endpoint_.max_context;
         ++j) {
      context.push_back(static_cast<TokenId>((7919 * (c + j) + 2) % v));
    }
    const std::vector<double> first = model->RawDistribution(context);
    for (std::size_t r = 1; r < options.probe_repeats; ++r) {
      if (model->RawDistribution(context) != first) {
        throw Error(ErrorCode::kProtocol,
                    "server is not deterministic: repeated /distribution "
                    "replies differ");
      }
    }
  }
  for (const auto& probe : options.probe_strings) {
    const std::string back = model->Detokenize(model->Tokenize(probe));
    if (back != probe) {
      throw Error(ErrorCode::kProtocol, "tokenizer roundtrip failed for '" +
                                            probe + "' (got '" + back + "')");
    }
  }
  return model;
}

RemoteModel::RemoteModel(ModelEndpoint endpoint, VocabTable table)
    : endpoint_(std::move(endpoint)), vocab_(std::move(table.vocabulary)) {}

std::vector<double> RemoteModel::RawDistribution(
    std::span<const TokenId> context) const {
  CheckContext(*this, context);
  return client_->FetchDistribution(context, vocab_.size(),
                                    endpoint_.max_context);
}

std::vector<TokenId> RemoteModel::Tokenize(const std::string& text) const {
  std::vector<TokenId> ids = client_->Tokenize(text);
  for (TokenId id : ids) {
    if (!vocab_.Contains(id)) {
      throw Error(ErrorCode::kProtocol, "/tokenize returned id " +
                                            std::to_string(id) +
                                            " outside the vocabulary");
    }
  }
  return ids;
}

std::string RemoteModel::Detokenize(std::span<const TokenId> ids) const {
  for (TokenId id : ids) {
    if (!vocab_.Contains(id)) {
      throw Error(ErrorCode::kUnknownToken,
                  "token id " + std::to_string(id) + " is not in the vocabulary");
    }
  }
  return client_->Detokenize(ids);
}

}  // namespace stego
