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

#include "stego/arithmetic_codec.h"

#include <istream>
#include <ostream>
#include <string>

#include "stego/error.h"
#include "stego/interval_state.h"

namespace stego {

namespace {

// Runs the decoder side until `done(settled_bits)` holds.
template <typename Done>
Bits ReplayCover(std::span<const TokenId> tokens,
                 std::span<const TokenId> context, DistributionSource& source,
                 Done&& done) {
  CheckContext(source.model(), context);
  IntervalState state(source.params().precision);
  std::vector<TokenId> history(context.begin(), context.end());
  history.reserve(context.size() + tokens.size());
  Bits settled;
  for (std::size_t t = 0; t < tokens.size() && !done(settled); ++t) {
    const TokenDistribution& dist = source.Next(history);
    const auto index = dist.IndexOf(tokens[t]);
    if (!index) {
      throw Error(ErrorCode::kDesync,
                  "cover token " + std::to_string(tokens[t]) + " at step " +
                      std::to_string(t) + " is outside the coder's support");
    }
    state.Narrow(dist, *index);
    state.Renormalize(settled);
    history.push_back(tokens[t]);
  }
  if (!done(settled)) {
    throw Error(ErrorCode::kTruncatedCover,
                "cover ended after settling " + std::to_string(settled.size()) +
                    " bits");
  }
  return settled;
}

}  // namespace

std::size_t DefaultMaxTokens(std::size_t framed_bits) {
  return 4 * framed_bits + 64;
}

StegoTrace EncodeBits(std::span<const std::uint8_t> bits,
                      std::span<const TokenId> context,
                      DistributionSource& source, std::size_t max_tokens) {
  if (bits.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot encode an empty message");
  }
  CheckContext(source.model(), context);
  const int precision = source.params().precision;
  IntervalState state(precision);

  // The code register holds the next `precision` bits of the message point,
  // rebased to the interval's coordinates.
  std::uint64_t value = 0;
  std::size_t read = 0;
  for (; read < static_cast<std::size_t>(precision); ++read) {
    value = (value << 1) | BitOrPad(bits, read);
  }
  auto on_shift = [&](std::uint64_t subtract) {
    value = ((value - subtract) << 1) | BitOrPad(bits, read++);
  };

  StegoTrace trace;
  std::vector<TokenId> history(context.begin(), context.end());
  Bits settled;
  while (settled.size() < bits.size()) {
    if (trace.tokens.size() >= max_tokens) {
      throw MessageTooLongError(
          "token budget of " + std::to_string(max_tokens) +
              " exhausted after settling " + std::to_string(settled.size()) +
              " of " + std::to_string(bits.size()) + " bits",
          trace.tokens, settled.size());
    }
    const TokenDistribution& dist = source.Next(history);
    const std::size_t index = state.Locate(dist, value);
    state.Narrow(dist, index);
    const std::size_t before = settled.size();
    state.Renormalize(settled, on_shift);
    trace.tokens.push_back(dist.id(index));
    trace.bits_consumed.push_back(
        static_cast<std::uint32_t>(settled.size() - before));
    history.push_back(dist.id(index));
  }
  return trace;
}

Bits DecodeBits(std::span<const TokenId> tokens,
                std::span<const TokenId> context, DistributionSource& source,
                std::size_t bit_count) {
  Bits settled = ReplayCover(tokens, context, source, [&](const Bits& s) {
    return s.size() >= bit_count;
  });
  settled.resize(bit_count);
  return settled;
}

CoverText Encode(const BitMessage& message, std::span<const TokenId> context,
                 DistributionSource& source, std::size_t max_tokens) {
  const Bits framed = message.Framed();
  if (max_tokens == 0) max_tokens = DefaultMaxTokens(framed.size());
  StegoTrace trace = EncodeBits(framed, context, source, max_tokens);
  return CoverText{{context.begin(), context.end()}, std::move(trace.tokens)};
}

CoverText Encode(const BitMessage& message, std::span<const TokenId> context,
                 const LanguageModel& model, const ModulationParams& params,
                 std::size_t max_tokens) {
  DistributionSource source(model, params);
  return Encode(message, context, source, max_tokens);
}

BitMessage Decode(const CoverText& cover, DistributionSource& source) {
  const Bits settled =
      ReplayCover(cover.tokens, cover.context, source, [](const Bits& s) {
        const std::size_t total = BitMessage::FramedLengthFromPrefix(s);
        return total != 0 && s.size() >= total;
      });
  return BitMessage::Unframe(settled);
}

BitMessage Decode(const CoverText& cover, const LanguageModel& model,
                  const ModulationParams& params) {
  DistributionSource source(model, params);
  return Decode(cover, source);
}

void WriteTokenIds(std::ostream& out, std::span<const TokenId> tokens) {
  for (TokenId id : tokens) out << id << '\n';
}

std::vector<TokenId> ReadTokenIds(std::istream& in) {
  std::vector<TokenId> ids;
  std::string word;
  while (in >> word) {
    std::size_t used = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(word, &used, 10);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != word.size() || value > 0xFFFFFFFFul) {
      throw Error(ErrorCode::kFormat, "bad token id '" + word + "'");
    }
    ids.push_back(static_cast<TokenId>(value));
  }
  return ids;
}

}  // namespace stego
