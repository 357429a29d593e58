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

#ifndef STEGO_SOURCE_CODING_H_
#define STEGO_SOURCE_CODING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stego/arithmetic_codec.h"
#include "stego/bits.h"
#include "stego/language_model.h"

namespace stego {

// Message text over the shared model's vocabulary, ending in exactly one EOS.
struct TextMessage {
  std::vector<TokenId> tokens;

  // Appends EOS; throws kUnknownToken for words outside the vocabulary.
  static TextMessage FromWords(const Vocabulary& vocab,
                               std::span<const std::string> words);
  static TextMessage FromText(const Vocabulary& vocab, const std::string& text);
  // Surfaces without the trailing EOS.
  std::string ToText(const Vocabulary& vocab) const;

  bool operator==(const TextMessage&) const = default;
};

// Unmodulated parameters: temperature 1 and the full vocabulary, so every
// token the model can produce stays encodable.
ModulationParams SourceCodingParams(int precision = 32);

// Compresses `message` (including its EOS) by arithmetic coding against the
// model, starting from the BOS-only context. Output length is close to the
// message's self-information plus two termination bits. Throws
// kUnsupportedToken for a token the coder cannot represent.
Bits TextToBits(const TextMessage& message, const LanguageModel& model,
                const ModulationParams& params = SourceCodingParams());

// Exact inverse of TextToBits; stops at the first EOS. The stream must
// re-encode to exactly `bits`, otherwise kMalformedStream is raised (this
// also catches truncation). max_tokens == 0 selects 1024 + 64 * bits.size().
TextMessage BitsToText(std::span<const std::uint8_t> bits,
                       const LanguageModel& model,
                       const ModulationParams& params = SourceCodingParams(),
                       std::size_t max_tokens = 0);

// Full pipeline: compress the text, then hide the framed bits in cover text
// that continues `cover_context`.
CoverText Hide(const TextMessage& message,
               std::span<const TokenId> cover_context,
               const LanguageModel& model, const ModulationParams& source,
               const ModulationParams& cover, std::size_t max_tokens = 0);
TextMessage Reveal(const CoverText& cover, const LanguageModel& model,
                   const ModulationParams& source,
                   const ModulationParams& cover_params);

// Byte form of a bit stream: the 32-bit length header and the bits,
// MSB-first, last byte zero-padded.
std::vector<std::uint8_t> SerializeBitStream(std::span<const std::uint8_t> bits);
Bits ParseBitStream(std::span<const std::uint8_t> bytes);

}  // namespace stego

#endif  // STEGO_SOURCE_CODING_H_
