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

#include "stego/source_coding.h"

#include <algorithm>
#include <string>

#include "stego/distribution.h"
#include "stego/error.h"
#include "stego/interval_state.h"

namespace stego {

TextMessage TextMessage::FromWords(const Vocabulary& vocab,
                                   std::span<const std::string> words) {
  TextMessage message;
  for (const auto& w : words) {
    const TokenId id = vocab.Id(w);
    if (id == vocab.eos() || id == vocab.bos()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "message text may not contain sequence markers");
    }
    message.tokens.push_back(id);
  }
  message.tokens.push_back(vocab.eos());
  return message;
}

TextMessage TextMessage::FromText(const Vocabulary& vocab,
                                  const std::string& text) {
  const auto ids = vocab.Tokenize(text);
  std::vector<std::string> words;
  for (TokenId id : ids) words.push_back(vocab.surface(id));
  return FromWords(vocab, words);
}

std::string TextMessage::ToText(const Vocabulary& vocab) const {
  std::span<const TokenId> body(tokens);
  if (!body.empty() && body.back() == vocab.eos()) body = body.first(body.size() - 1);
  return vocab.Detokenize(body);
}

ModulationParams SourceCodingParams(int precision) {
  ModulationParams params;
  params.temperature = 1.0;
  params.top_k = ModulationParams::kFullVocabulary;
  params.precision = precision;
  return params;
}

Bits TextToBits(const TextMessage& message, const LanguageModel& model,
                const ModulationParams& params) {
  const TokenId eos = model.vocabulary().eos();
  if (message.tokens.empty() || message.tokens.back() != eos) {
    throw Error(ErrorCode::kInvalidArgument, "message must end with EOS");
  }
  for (std::size_t i = 0; i + 1 < message.tokens.size(); ++i) {
    if (message.tokens[i] == eos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "message contains EOS before its end");
    }
  }
  CheckContext(model, message.tokens);

  DistributionSource source(model, params);
  IntervalState state(params.precision);
  std::vector<TokenId> history = {model.vocabulary().bos()};
  Bits out;
  for (TokenId token : message.tokens) {
    const TokenDistribution& dist = source.Next(history);
    const auto index = dist.IndexOf(token);
    const auto [lo, hi] =
        index ? state.SubInterval(dist, *index) : std::pair<std::uint64_t,
                                                            std::uint64_t>{};
    if (!index || lo >= hi) {
      throw Error(ErrorCode::kUnsupportedToken,
                  "token '" + model.vocabulary().surface(token) +
                      "' has no probability under the source model");
    }
    state.Narrow(dist, *index);
    state.Renormalize(out);
    history.push_back(token);
  }
  state.Finish(out);
  return out;
}

TextMessage BitsToText(std::span<const std::uint8_t> bits,
                       const LanguageModel& model,
                       const ModulationParams& params,
                       std::size_t max_tokens) {
  if (max_tokens == 0) max_tokens = 1024 + 64 * bits.size();
  DistributionSource source(model, params);
  const int precision = params.precision;
  IntervalState state(precision);
  auto input = [&bits](std::size_t i) -> std::uint64_t {
    return i < bits.size() ? bits[i] : 0;
  };
  std::uint64_t value = 0;
  std::size_t read = 0;
  for (; read < static_cast<std::size_t>(precision); ++read) {
    value = (value << 1) | input(read);
  }
  auto on_shift = [&](std::uint64_t subtract) {
    value = ((value - subtract) << 1) | input(read++);
  };

  // Re-encoded stream; it must reproduce `bits` exactly.
  Bits replay;
  auto check_prefix = [&] {
    if (replay.size() > bits.size() ||
        !std::equal(replay.begin(), replay.end(), bits.begin())) {
      throw Error(ErrorCode::kMalformedStream,
                  "bit stream is not a valid compressed message");
    }
  };

  const TokenId eos = model.vocabulary().eos();
  std::vector<TokenId> history = {model.vocabulary().bos()};
  TextMessage message;
  while (message.tokens.size() < max_tokens) {
    const TokenDistribution& dist = source.Next(history);
    const std::size_t index = state.Locate(dist, value);
    const TokenId token = dist.id(index);
    state.Narrow(dist, index);
    state.Renormalize(replay, on_shift);
    message.tokens.push_back(token);
    history.push_back(token);
    if (token == eos) {
      state.Finish(replay);
      check_prefix();
      if (replay.size() != bits.size()) {
        throw Error(ErrorCode::kMalformedStream,
                    "bit stream length does not match its content");
      }
      return message;
    }
    check_prefix();
  }
  throw Error(ErrorCode::kMalformedStream,
              "no EOS within " + std::to_string(max_tokens) + " tokens");
}

CoverText Hide(const TextMessage& message,
               std::span<const TokenId> cover_context,
               const LanguageModel& model, const ModulationParams& source,
               const ModulationParams& cover, std::size_t max_tokens) {
  BitMessage bits{TextToBits(message, model, source)};
  return Encode(bits, cover_context, model, cover, max_tokens);
}

TextMessage Reveal(const CoverText& cover, const LanguageModel& model,
                   const ModulationParams& source,
                   const ModulationParams& cover_params) {
  const BitMessage bits = Decode(cover, model, cover_params);
  return BitsToText(bits.payload, model, source);
}

std::vector<std::uint8_t> SerializeBitStream(
    std::span<const std::uint8_t> bits) {
  return PackBits(BitMessage{{bits.begin(), bits.end()}}.Framed());
}

Bits ParseBitStream(std::span<const std::uint8_t> bytes) {
  const Bits all = UnpackBits(bytes, bytes.size() * 8);
  const std::size_t total = BitMessage::FramedLengthFromPrefix(all);
  if (total == 0 || all.size() < total || (total + 7) / 8 != bytes.size()) {
    throw Error(ErrorCode::kMalformedStream,
                "byte stream length disagrees with its header");
  }
  for (std::size_t i = total; i < all.size(); ++i) {
    if (all[i] != 0) {
      throw Error(ErrorCode::kMalformedStream, "nonzero padding bits");
    }
  }
  return BitMessage::Unframe(all).payload;
}

}  // namespace stego
