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

#include "stego/baselines.h"

#include <algorithm>
#include <string>

#include "stego/distribution.h"
#include "stego/error.h"

namespace stego {

namespace {

constexpr std::size_t kMaxCacheEntries = 1 << 16;

bool FramedComplete(const Bits& bits) {
  const std::size_t total = BitMessage::FramedLengthFromPrefix(bits);
  return total != 0 && bits.size() >= total;
}

}  // namespace

std::uint64_t SplitMix64::Next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// --- Block method ---------------------------------------------------------

BlockKey::BlockKey(int block_size, std::uint64_t seed, std::size_t vocab_size)
    : block_size_(block_size), seed_(seed) {
  if (block_size < 1 || block_size > kMaxBlockSize) {
    throw Error(ErrorCode::kInvalidArgument,
                "block size must lie in [1, 16]");
  }
  if (vocab_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "empty vocabulary");
  }
  std::vector<TokenId> order(vocab_size);
  for (TokenId i = 0; i < vocab_size; ++i) order[i] = i;
  SplitMix64 rng(seed);
  for (std::size_t i = vocab_size - 1; i > 0; --i) {
    const std::size_t j = rng.Next() % (i + 1);
    std::swap(order[i], order[j]);
  }
  assignment_.assign(vocab_size, 0);
  const std::size_t bins = bin_count();
  for (std::size_t pos = 0; pos < vocab_size; ++pos) {
    assignment_[order[pos]] = static_cast<std::uint32_t>(pos % bins);
  }
}

std::array<std::uint8_t, 10> BlockKey::Serialize() const {
  std::array<std::uint8_t, 10> out{};
  out[0] = static_cast<std::uint8_t>(block_size_ >> 8);
  out[1] = static_cast<std::uint8_t>(block_size_ & 0xff);
  for (int i = 0; i < 8; ++i) {
    out[2 + i] = static_cast<std::uint8_t>(seed_ >> (56 - 8 * i));
  }
  return out;
}

BlockKey BlockKey::Deserialize(std::span<const std::uint8_t> bytes,
                               std::size_t vocab_size) {
  if (bytes.size() != 10) {
    throw Error(ErrorCode::kFormat, "block key must be exactly 10 bytes");
  }
  const int block_size = (bytes[0] << 8) | bytes[1];
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | bytes[2 + i];
  return BlockKey(block_size, seed, vocab_size);
}

BlockCoder::BlockCoder(const LanguageModel& model, BlockKey key)
    : model_(&model), key_(std::move(key)) {
  if (key_.assignment().size() != model.vocabulary().size()) {
    throw Error(ErrorCode::kKeyError,
                "block key was derived for a different vocabulary size");
  }
}

const std::vector<std::optional<TokenId>>& BlockCoder::BinLeaders(
    std::span<const TokenId> context) {
  auto key = model_->StateKey(context);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (cache_.size() >= kMaxCacheEntries) cache_.clear();
  const auto raw = model_->RawDistribution(context);
  std::vector<std::optional<TokenId>> leaders(key_.bin_count());
  for (TokenId id = 0; id < raw.size(); ++id) {
    if (!(raw[id] > 0.0)) continue;
    auto& leader = leaders[key_.bin(id)];
    // Ascending id scan: strict > keeps the smallest id on ties.
    if (!leader || raw[id] > raw[*leader]) leader = id;
  }
  return cache_.emplace(std::move(key), std::move(leaders)).first->second;
}

StegoTrace BlockCoder::EncodeBits(std::span<const std::uint8_t> bits,
                                  std::span<const TokenId> context,
                                  std::size_t max_tokens) {
  if (bits.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot encode an empty message");
  }
  CheckContext(*model_, context);
  const std::size_t width = static_cast<std::size_t>(key_.block_size());
  const std::size_t steps = (bits.size() + width - 1) / width;
  StegoTrace trace;
  std::vector<TokenId> history(context.begin(), context.end());
  for (std::size_t t = 0; t < steps; ++t) {
    if (t >= max_tokens) {
      throw MessageTooLongError("token budget of " + std::to_string(max_tokens) +
                                    " exhausted",
                                trace.tokens, t * width);
    }
    std::size_t bin = 0;
    for (std::size_t b = 0; b < width; ++b) {
      bin = (bin << 1) | BitOrPad(bits, t * width + b);
    }
    const auto& leader = BinLeaders(history)[bin];
    if (!leader) {
      throw Error(ErrorCode::kKeyError,
                  "bin " + std::to_string(bin) + " holds no usable token");
    }
    trace.tokens.push_back(*leader);
    trace.bits_consumed.push_back(static_cast<std::uint32_t>(width));
    history.push_back(*leader);
  }
  return trace;
}

Bits BlockCoder::DecodeImpl(std::span<const TokenId> tokens,
                            std::span<const TokenId> context,
                            bool stop_when_framed) {
  CheckContext(*model_, context);
  const int width = key_.block_size();
  std::vector<TokenId> history(context.begin(), context.end());
  Bits bits;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (stop_when_framed && FramedComplete(bits)) break;
    const TokenId token = tokens[t];
    if (token >= key_.assignment().size()) {
      throw Error(ErrorCode::kDesync, "cover token outside vocabulary");
    }
    const std::uint32_t bin = key_.bin(token);
    const auto& leader = BinLeaders(history)[bin];
    if (!leader || *leader != token) {
      throw Error(ErrorCode::kDesync,
                  "cover token " + std::to_string(token) + " at step " +
                      std::to_string(t) + " is not the leader of its bin");
    }
    for (int b = width - 1; b >= 0; --b) bits.push_back((bin >> b) & 1u);
    history.push_back(token);
  }
  return bits;
}

CoverText BlockCoder::Encode(const BitMessage& message,
                             std::span<const TokenId> context,
                             std::size_t max_tokens) {
  const Bits framed = message.Framed();
  if (max_tokens == 0) max_tokens = DefaultMaxTokens(framed.size());
  auto trace = EncodeBits(framed, context, max_tokens);
  return CoverText{{context.begin(), context.end()}, std::move(trace.tokens)};
}

Bits BlockCoder::DecodeBits(std::span<const TokenId> tokens,
                            std::span<const TokenId> context) {
  return DecodeImpl(tokens, context, false);
}

BitMessage BlockCoder::Decode(const CoverText& cover) {
  return BitMessage::Unframe(DecodeImpl(cover.tokens, cover.context, true));
}

CoverText BlockEncode(const BitMessage& message,
                      std::span<const TokenId> context,
                      const LanguageModel& model, const BlockKey& key,
                      std::size_t max_tokens) {
  BlockCoder coder(model, key);
  return coder.Encode(message, context, max_tokens);
}

BitMessage BlockDecode(const CoverText& cover, const LanguageModel& model,
                       const BlockKey& key) {
  BlockCoder coder(model, key);
  return coder.Decode(cover);
}

// --- Huffman method -------------------------------------------------------

HuffmanTree::HuffmanTree(std::span<const double> raw, std::size_t truncation) {
  if (truncation < 2) {
    throw Error(ErrorCode::kInvalidArgument, "Huffman truncation must be >= 2");
  }
  RankedDistribution ranked = RankTopK(raw, truncation);
  if (ranked.size() == 0) {
    throw Error(ErrorCode::kInvalidDistribution, "empty distribution");
  }
  double kept = 0.0;
  for (double p : ranked.probs) kept += p;
  for (double& p : ranked.probs) p /= kept;
  tokens_ = ranked.ids;
  probs_ = ranked.probs;

  const std::size_t n = tokens_.size();
  struct Subtree {
    double prob;
    TokenId min_id;
    std::int32_t node;
  };
  // `precedes(a, b)`: a is the more probable subtree (bit 0 when paired).
  auto precedes = [](const Subtree& a, const Subtree& b) {
    return a.prob != b.prob ? a.prob > b.prob : a.min_id < b.min_id;
  };
  std::vector<Subtree> live;
  live.reserve(n);
  nodes_.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Node leaf;
    leaf.token = tokens_[i];
    nodes_.push_back(leaf);
    live.push_back({probs_[i], tokens_[i], static_cast<std::int32_t>(i)});
  }
  while (live.size() > 1) {
    // Keep `live` sorted so the two least probable subtrees sit at the back.
    std::sort(live.begin(), live.end(), precedes);
    const Subtree last = live.back();
    live.pop_back();
    const Subtree second = live.back();
    live.pop_back();
    Node parent;
    parent.child[0] = second.node;
    parent.child[1] = last.node;
    nodes_.push_back(parent);
    live.push_back({second.prob + last.prob,
                    std::min(second.min_id, last.min_id),
                    static_cast<std::int32_t>(nodes_.size() - 1)});
  }
  root_ = live.front().node;

  codes_.assign(n, Bits{});
  std::vector<std::pair<std::int32_t, Bits>> stack = {{root_, Bits{}}};
  while (!stack.empty()) {
    auto [index, prefix] = std::move(stack.back());
    stack.pop_back();
    const Node& node = nodes_[index];
    if (node.leaf()) {
      codes_[static_cast<std::size_t>(index)] = std::move(prefix);
      continue;
    }
    for (int b = 0; b < 2; ++b) {
      Bits next = prefix;
      next.push_back(static_cast<std::uint8_t>(b));
      stack.emplace_back(node.child[b], std::move(next));
    }
  }
}

std::optional<std::size_t> HuffmanTree::LeafOf(TokenId token) const {
  auto it = std::find(tokens_.begin(), tokens_.end(), token);
  if (it == tokens_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - tokens_.begin());
}

HuffmanCoder::HuffmanCoder(const LanguageModel& model, std::size_t truncation)
    : model_(&model), truncation_(truncation) {
  if (truncation < 2) {
    throw Error(ErrorCode::kInvalidArgument, "Huffman truncation must be >= 2");
  }
}

const HuffmanTree& HuffmanCoder::TreeFor(std::span<const TokenId> context) {
  auto key = model_->StateKey(context);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  if (cache_.size() >= kMaxCacheEntries) cache_.clear();
  HuffmanTree tree(model_->RawDistribution(context), truncation_);
  return cache_.emplace(std::move(key), std::move(tree)).first->second;
}

StegoTrace HuffmanCoder::EncodeBits(std::span<const std::uint8_t> bits,
                                    std::span<const TokenId> context,
                                    std::size_t max_tokens) {
  if (bits.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot encode an empty message");
  }
  CheckContext(*model_, context);
  StegoTrace trace;
  std::vector<TokenId> history(context.begin(), context.end());
  std::size_t pos = 0;
  while (pos < bits.size()) {
    if (trace.tokens.size() >= max_tokens) {
      throw MessageTooLongError("token budget of " + std::to_string(max_tokens) +
                                    " exhausted",
                                trace.tokens, pos);
    }
    const HuffmanTree& tree = TreeFor(history);
    const HuffmanTree::Node* node = &tree.root();
    const std::size_t start = pos;
    while (!node->leaf()) node = &tree.node(node->child[BitOrPad(bits, pos++)]);
    trace.tokens.push_back(node->token);
    trace.bits_consumed.push_back(static_cast<std::uint32_t>(pos - start));
    history.push_back(node->token);
  }
  return trace;
}

Bits HuffmanCoder::DecodeImpl(std::span<const TokenId> tokens,
                              std::span<const TokenId> context,
                              bool stop_when_framed) {
  CheckContext(*model_, context);
  std::vector<TokenId> history(context.begin(), context.end());
  Bits bits;
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    if (stop_when_framed && FramedComplete(bits)) break;
    const HuffmanTree& tree = TreeFor(history);
    const auto leaf = tree.LeafOf(tokens[t]);
    if (!leaf) {
      throw Error(ErrorCode::kDesync,
                  "cover token " + std::to_string(tokens[t]) + " at step " +
                      std::to_string(t) + " is outside the top-" +
                      std::to_string(truncation_) + " set");
    }
    const Bits& code = tree.code(*leaf);
    bits.insert(bits.end(), code.begin(), code.end());
    history.push_back(tokens[t]);
  }
  return bits;
}

CoverText HuffmanCoder::Encode(const BitMessage& message,
                               std::span<const TokenId> context,
                               std::size_t max_tokens) {
  const Bits framed = message.Framed();
  if (max_tokens == 0) max_tokens = DefaultMaxTokens(framed.size());
  auto trace = EncodeBits(framed, context, max_tokens);
  return CoverText{{context.begin(), context.end()}, std::move(trace.tokens)};
}

Bits HuffmanCoder::DecodeBits(std::span<const TokenId> tokens,
                              std::span<const TokenId> context) {
  return DecodeImpl(tokens, context, false);
}

BitMessage HuffmanCoder::Decode(const CoverText& cover) {
  return BitMessage::Unframe(DecodeImpl(cover.tokens, cover.context, true));
}

CoverText HuffmanEncode(const BitMessage& message,
                        std::span<const TokenId> context,
                        const LanguageModel& model, std::size_t truncation,
                        std::size_t max_tokens) {
  HuffmanCoder coder(model, truncation);
  return coder.Encode(message, context, max_tokens);
}

BitMessage HuffmanDecode(const CoverText& cover, const LanguageModel& model,
                         std::size_t truncation) {
  HuffmanCoder coder(model, truncation);
  return coder.Decode(cover);
}

}  // namespace stego
