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

#ifndef STEGO_VOCABULARY_H_
#define STEGO_VOCABULARY_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stego/types.h"

namespace stego {

// Bijective id <-> surface table with designated sequence markers.
class Vocabulary {
 public:
  // Reserved ids of the built-in models.
  static constexpr TokenId kBuiltinBos = 0;
  static constexpr TokenId kBuiltinEos = 1;
  static constexpr std::string_view kBosSurface = "<s>";
  static constexpr std::string_view kEosSurface = "</s>";

  Vocabulary() = default;
  Vocabulary(std::vector<std::string> surfaces, TokenId bos, TokenId eos);

  // Builds the built-in layout: <s> = 0, </s> = 1, then `words` in order.
  static Vocabulary WithMarkers(std::span<const std::string> words);

  std::size_t size() const { return surfaces_.size(); }
  TokenId bos() const { return bos_; }
  TokenId eos() const { return eos_; }
  const std::string& surface(TokenId id) const;
  std::span<const std::string> surfaces() const { return surfaces_; }
  bool Contains(TokenId id) const { return id < surfaces_.size(); }

  std::optional<TokenId> Find(std::string_view surface) const;
  // Throws kUnknownToken.
  TokenId Id(std::string_view surface) const;

  // Whitespace tokenization against this table (word-level models only).
  std::vector<TokenId> Tokenize(std::string_view text) const;
  std::string Detokenize(std::span<const TokenId> ids) const;

  // FNV-1a over the marker ids and every surface; identifies the table.
  std::uint64_t Fingerprint() const;
  std::string FingerprintHex() const;

  bool operator==(const Vocabulary& other) const {
    return surfaces_ == other.surfaces_ && bos_ == other.bos_ &&
           eos_ == other.eos_;
  }

 private:
  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, TokenId> index_;
  TokenId bos_ = kBuiltinBos;
  TokenId eos_ = kBuiltinEos;
};

}  // namespace stego

#endif  // STEGO_VOCABULARY_H_
