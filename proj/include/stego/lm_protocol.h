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

#ifndef STEGO_LM_PROTOCOL_H_
#define STEGO_LM_PROTOCOL_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stego/language_model.h"
#include "stego/types.h"
#include "stego/vocabulary.h"

namespace httplib {
class Client;
}  // namespace httplib

namespace stego {

// HTTP/JSON client for an external next-token server.
//
//   GET  /vocab        -> {"tokens": [...], "bos": id, "eos": id,
//                          "max_context": n}
//   POST /distribution {"context": [ids]}
//                      -> {"probs": ["0.25", ...]}            dense, or
//                         {"ids": [...], "probs": [...], "rest": "0.01"}
//   POST /tokenize     {"text": s}   -> {"ids": [...]}
//   POST /detokenize   {"ids": [...]} -> {"text": s}
//
// Probabilities travel as decimal strings. In a sparse reply the "rest" mass
// is shared evenly by the ids not listed.
struct ModelEndpoint {
  std::string base_url;
  std::chrono::milliseconds timeout{10000};
  // Filled in by the session once /vocab has been read.
  std::size_t max_context = 0;
  std::uint64_t fingerprint = 0;
};

struct VocabTable {
  Vocabulary vocabulary;
  std::size_t max_context = 0;
  std::uint64_t fingerprint = 0;
};

// Tolerance on the total probability of a /distribution reply.
inline constexpr double kDistributionSumTolerance = 1e-6;

class LmClient {
 public:
  LmClient(const std::string& base_url, std::chrono::milliseconds timeout);
  ~LmClient();
  LmClient(const LmClient&) = delete;
  LmClient& operator=(const LmClient&) = delete;

  VocabTable FetchVocab();
  // `vocab_size` and `max_context` come from FetchVocab. Throws
  // kContextTooLong before sending anything if the context is too long.
  std::vector<double> FetchDistribution(std::span<const TokenId> context,
                                        std::size_t vocab_size,
                                        std::size_t max_context);
  std::vector<TokenId> Tokenize(const std::string& text);
  std::string Detokenize(std::span<const TokenId> ids);

 private:
  std::string Get(const std::string& path);
  std::string Post(const std::string& path, const std::string& body);

  std::mutex mu_;
  std::unique_ptr<httplib::Client> http_;
};

struct SessionOptions {
  // Compared against the server's vocabulary fingerprint when set.
  std::optional<std::uint64_t> expected_fingerprint;
  std::size_t probe_contexts = 5;
  std::size_t probe_repeats = 10;
  std::vector<std::string> probe_strings = {"hello world", ""};
};

// A LanguageModel served over the wire. Connect() runs the session checks:
// fingerprint, repeated-distribution determinism and tokenizer roundtrips.
class RemoteModel : public LanguageModel {
 public:
  static std::unique_ptr<RemoteModel> Connect(
      const std::string& base_url,
      std::chrono::milliseconds timeout = std::chrono::milliseconds(10000),
      const SessionOptions& options = {});

  const Vocabulary& vocabulary() const override { return vocab_; }
  std::vector<double> RawDistribution(
      std::span<const TokenId> context) const override;

  const ModelEndpoint& endpoint() const { return endpoint_; }
  std::vector<TokenId> Tokenize(const std::string& text) const;
  std::string Detokenize(std::span<const TokenId> ids) const;

 private:
  RemoteModel(ModelEndpoint endpoint, VocabTable table);

  ModelEndpoint endpoint_;
  Vocabulary vocab_;
  std::unique_ptr<LmClient> client_;
};

}  // namespace stego

#endif  // STEGO_LM_PROTOCOL_H_
