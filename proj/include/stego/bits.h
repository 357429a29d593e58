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

#ifndef STEGO_BITS_H_
#define STEGO_BITS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stego/types.h"

namespace stego {

// Width of the big-endian payload-length header prepended by Frame().
inline constexpr std::size_t kFrameHeaderBits = 32;

// Bits past the end of a message are padded with 1, 0, 1, 0, ...
inline std::uint8_t PadBit(std::size_t index_past_end) {
  return (index_past_end % 2 == 0) ? 1 : 0;
}

// Reads bit `i` of `bits`, falling back to the pad rule past the end.
inline std::uint8_t BitOrPad(std::span<const std::uint8_t> bits,
                             std::size_t i) {
  return i < bits.size() ? bits[i] : PadBit(i - bits.size());
}

// The secret payload plus its length framing.
struct BitMessage {
  Bits payload;

  // 32-bit big-endian length header followed by the payload.
  Bits Framed() const;

  // Inverse of Framed(). Trailing bits after the payload are ignored; a
  // stream shorter than header + length raises kTruncatedCover.
  static BitMessage Unframe(std::span<const std::uint8_t> framed);

  // Number of framed bits needed once the header is known, or 0 if fewer
  // than 32 bits are available.
  static std::size_t FramedLengthFromPrefix(
      std::span<const std::uint8_t> prefix);

  bool operator==(const BitMessage&) const = default;
};

// MSB-first byte packing; the final partial byte is zero-padded.
std::vector<std::uint8_t> PackBits(std::span<const std::uint8_t> bits);
Bits UnpackBits(std::span<const std::uint8_t> bytes, std::size_t bit_count);

std::string BitsToHex(std::span<const std::uint8_t> bits);  // size % 4 == 0
Bits HexToBits(std::string_view hex);
std::string BitsToString(std::span<const std::uint8_t> bits);
Bits StringToBits(std::string_view text);  // "0110..."

}  // namespace stego

#endif  // STEGO_BITS_H_
