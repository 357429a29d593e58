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

#include "stego/bits.h"

#include <cctype>

#include "stego/error.h"

namespace stego {

Bits BitMessage::Framed() const {
  if (payload.size() > 0xFFFFFFFFull) {
    throw Error(ErrorCode::kInvalidArgument, "payload longer than 2^32-1 bits");
  }
  const auto length = static_cast<std::uint32_t>(payload.size());
  Bits out;
  out.reserve(kFrameHeaderBits + payload.size());
  for (int i = 31; i >= 0; --i) out.push_back((length >> i) & 1u);
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

std::size_t BitMessage::FramedLengthFromPrefix(
    std::span<const std::uint8_t> prefix) {
  if (prefix.size() < kFrameHeaderBits) return 0;
  std::uint64_t length = 0;
  for (std::size_t i = 0; i < kFrameHeaderBits; ++i) {
    length = (length << 1) | (prefix[i] & 1u);
  }
  return kFrameHeaderBits + static_cast<std::size_t>(length);
}

BitMessage BitMessage::Unframe(std::span<const std::uint8_t> framed) {
  const std::size_t total = FramedLengthFromPrefix(framed);
  if (total == 0 || framed.size() < total) {
    throw Error(ErrorCode::kTruncatedCover,
                "framed stream ends before the declared payload length");
  }
  BitMessage message;
  message.payload.assign(framed.begin() + kFrameHeaderBits,
                         framed.begin() + static_cast<std::ptrdiff_t>(total));
  return message;
}

std::vector<std::uint8_t> PackBits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) bytes[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  }
  return bytes;
}

Bits UnpackBits(std::span<const std::uint8_t> bytes, std::size_t bit_count) {
  if (bit_count > bytes.size() * 8) {
    throw Error(ErrorCode::kInvalidArgument, "bit count exceeds byte buffer");
  }
  Bits bits(bit_count);
  for (std::size_t i = 0; i < bit_count; ++i) {
    bits[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  }
  return bits;
}

std::string BitsToHex(std::span<const std::uint8_t> bits) {
  if (bits.size() % 4 != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "hex output needs a multiple of 4 bits");
  }
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bits.size() / 4);
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    const int nibble =
        (bits[i] << 3) | (bits[i + 1] << 2) | (bits[i + 2] << 1) | bits[i + 3];
    out.push_back(kDigits[nibble]);
  }
  return out;
}

Bits HexToBits(std::string_view hex) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  Bits bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      continue;
    } else {
      throw Error(ErrorCode::kFormat, std::string("invalid hex digit '") + c +
                                          "'");
    }
    for (int b = 3; b >= 0; --b) bits.push_back((v >> b) & 1);
  }
  return bits;
}

std::string BitsToString(std::span<const std::uint8_t> bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

Bits StringToBits(std::string_view text) {
  Bits bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::kFormat, "bit strings may only contain 0 and 1");
    }
  }
  return bits;
}

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidDistribution: return "invalid-distribution";
    case ErrorCode::kCannotQuantize: return "cannot-quantize";
    case ErrorCode::kUnknownToken: return "unknown-token";
    case ErrorCode::kMessageTooLong: return "message-too-long";
    case ErrorCode::kDesync: return "desync";
    case ErrorCode::kTruncatedCover: return "truncated-cover";
    case ErrorCode::kMalformedStream: return "malformed-stream";
    case ErrorCode::kUnsupportedToken: return "unsupported-token";
    case ErrorCode::kKeyError: return "key-error";
    case ErrorCode::kKeyMismatch: return "key-mismatch";
    case ErrorCode::kProtocol: return "protocol";
    case ErrorCode::kTimeout: return "timeout";
    case ErrorCode::kContextTooLong: return "context-too-long";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kFormat: return "format";
  }
  return "unknown";
}

}  // namespace stego
