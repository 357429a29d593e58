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

#ifndef STEGO_KEY_CONFIG_H_
#define STEGO_KEY_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stego/arithmetic_codec.h"
#include "stego/bits.h"
#include "stego/language_model.h"
#include "stego/lm_protocol.h"
#include "stego/metrics.h"

namespace stego {

// Everything Alice and Bob must share, as a small TOML-style file:
//
//   model = "corpus.nglm"            # or: endpoint = "http://host:port"
//   vocab_fingerprint = "9f0c..."    # optional
//   probe_text = "hello world"       # endpoint only; tokenizer roundtrip probe
//   context = "Once upon a time"
//   method = "arithmetic"            # arithmetic | huffman | block
//   huffman_truncation = 8
//   block_size = 3
//   block_seed = 1234
//
//   [cover]
//   temperature = 0.9
//   top_k = 300                      # 0 = whole vocabulary
//   precision = 32
//
//   [source]
//   precision = 32
//
// A relative model path is taken relative to the key file.
struct KeyConfig {
  std::string model_path;
  std::string endpoint;
  std::uint32_t timeout_ms = 10000;
  std::optional<std::uint64_t> vocab_fingerprint;
  std::string probe_text = "hello world";
  std::string context;
  Method method = Method::kArithmetic;
  ModulationParams cover;
  ModulationParams source;
  std::size_t huffman_truncation = 8;
  int block_size = 3;
  std::uint64_t block_seed = 0;

  // Throws kFormat on syntax errors, unknown keys or bad values.
  static KeyConfig Parse(std::istream& in, const std::string& base_dir = "");
  static KeyConfig ParseFile(const std::string& path);
  std::string ToString() const;

  bool operator==(const KeyConfig&) const = default;
};

// A key with its model loaded.
class StegoKey {
 public:
  // Loads the model (or connects to the endpoint) and checks the vocabulary
  // fingerprint; a mismatch raises kKeyMismatch.
  static StegoKey Open(const KeyConfig& config);
  // For an already loaded model; the fingerprint is still checked.
  StegoKey(const KeyConfig& config, std::shared_ptr<const LanguageModel> model);

  const KeyConfig& config() const { return config_; }
  const LanguageModel& model() const { return *model_; }

  std::vector<TokenId> Tokenize(const std::string& text) const;
  std::string Detokenize(std::span<const TokenId> ids) const;

  // BOS followed by the tokenized text. Built-in models with markers also
  // get EOS after each sentence terminator.
  std::vector<TokenId> ContextFor(const std::string& text) const;
  // ContextFor(the key's context).
  std::vector<TokenId> CoverContext() const;

  CoverText EncodeMessage(const BitMessage& message,
                          std::size_t max_tokens = 0) const;
  BitMessage DecodeCover(std::span<const TokenId> cover_tokens) const;

  // Source-codes `text` and hides the result with the key's method.
  CoverText Hide(const std::string& text, std::size_t max_tokens = 0) const;
  std::string Reveal(std::span<const TokenId> cover_tokens) const;

 private:
  KeyConfig config_;
  std::shared_ptr<const LanguageModel> model_;
  const RemoteModel* remote_ = nullptr;
};

}  // namespace stego

#endif  // STEGO_KEY_CONFIG_H_
