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

#ifndef STEGO_ARITHMETIC_CODEC_H_
#define STEGO_ARITHMETIC_CODEC_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "stego/bits.h"
#include "stego/distribution.h"
#include "stego/language_model.h"
#include "stego/types.h"

namespace stego {

// Generated tokens plus the conditioning context they continue. The context
// is shared key material and is not part of what gets transmitted.
struct CoverText {
  std::vector<TokenId> context;
  std::vector<TokenId> tokens;

  bool operator==(const CoverText&) const = default;
};

// Per-step record of a steganographic encoding run.
struct StegoTrace {
  std::vector<TokenId> tokens;
  // Message bits settled by each token (the final step may count pad bits).
  std::vector<std::uint32_t> bits_consumed;
};

// 4 * framed_bits + 64.
std::size_t DefaultMaxTokens(std::size_t framed_bits);

// Arithmetic-coding steganography over unframed bits. The message is read
// as the binary fraction 0.b1 b2 ... followed by the 1,0,1,0,... pad; each
// step emits the token whose bin contains that point and stops once the
// emitted tokens pin down all of `bits`. Throws MessageTooLongError when
// `max_tokens` runs out first.
StegoTrace EncodeBits(std::span<const std::uint8_t> bits,
                      std::span<const TokenId> context,
                      DistributionSource& source, std::size_t max_tokens);

// Replays the interval narrowing for `tokens` and returns the first
// `bit_count` settled bits. Throws kDesync for a token outside the support
// and kTruncatedCover if the tokens settle fewer bits.
Bits DecodeBits(std::span<const TokenId> tokens,
                std::span<const TokenId> context, DistributionSource& source,
                std::size_t bit_count);

// Framed encode/decode. max_tokens == 0 selects DefaultMaxTokens.
CoverText Encode(const BitMessage& message, std::span<const TokenId> context,
                 const LanguageModel& model, const ModulationParams& params,
                 std::size_t max_tokens = 0);
CoverText Encode(const BitMessage& message, std::span<const TokenId> context,
                 DistributionSource& source, std::size_t max_tokens = 0);

BitMessage Decode(const CoverText& cover, const LanguageModel& model,
                  const ModulationParams& params);
BitMessage Decode(const CoverText& cover, DistributionSource& source);

// Cover serialization: one decimal token id per line.
void WriteTokenIds(std::ostream& out, std::span<const TokenId> tokens);
std::vector<TokenId> ReadTokenIds(std::istream& in);

}  // namespace stego

#endif  // STEGO_ARITHMETIC_CODEC_H_
