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

#ifndef STEGO_BASELINES_H_
#define STEGO_BASELINES_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "stego/arithmetic_codec.h"
#include "stego/bits.h"
#include "stego/language_model.h"
#include "stego/types.h"

namespace stego {

// splitmix64 generator; the block key's shuffle is defined in terms of it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t Next();

 private:
  std::uint64_t state_;
};

// Shared secret of the block method: a random partition of the vocabulary
// into 2^block_size bins. The assignment is always rederived from
// (block_size, seed, vocabulary size): a splitmix64-driven Fisher-Yates
// shuffle of the token ids, dealt round-robin into bins.
class BlockKey {
 public:
  static constexpr int kMaxBlockSize = 16;

  BlockKey(int block_size, std::uint64_t seed, std::size_t vocab_size);

  int block_size() const { return block_size_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t bin_count() const { return std::size_t{1} << block_size_; }
  std::uint32_t bin(TokenId id) const { return assignment_.at(id); }
  std::span<const std::uint32_t> assignment() const { return assignment_; }

  // 10 bytes: block size (u16 big-endian) then seed (u64 big-endian).
  std::array<std::uint8_t, 10> Serialize() const;
  static BlockKey Deserialize(std::span<const std::uint8_t> bytes,
                              std::size_t vocab_size);

 private:
  int block_size_;
  std::uint64_t seed_;
  std::vector<std::uint32_t> assignment_;
};

// Block method: each step spends block_size message bits to pick a bin and
// emits the most probable token (raw, unmodulated model) inside that bin.
class BlockCoder {
 public:
  BlockCoder(const LanguageModel& model, BlockKey key);

  const BlockKey& key() const { return key_; }

  // Most likely token of every bin at this step; nullopt for bins holding
  // only zero-probability tokens.
  const std::vector<std::optional<TokenId>>& BinLeaders(
      std::span<const TokenId> context);

  // Emits exactly ceil(bits / block_size) tokens.
  StegoTrace EncodeBits(std::span<const std::uint8_t> bits,
                        std::span<const TokenId> context,
                        std::size_t max_tokens);
  // Every chunk carried by `tokens`, concatenated. Throws kDesync when a
  // token is not its bin's leader.
  Bits DecodeBits(std::span<const TokenId> tokens,
                  std::span<const TokenId> context);

  CoverText Encode(const BitMessage& message, std::span<const TokenId> context,
                   std::size_t max_tokens = 0);
  BitMessage Decode(const CoverText& cover);

 private:
  Bits DecodeImpl(std::span<const TokenId> tokens,
                  std::span<const TokenId> context, bool stop_when_framed);

  const LanguageModel* model_;
  BlockKey key_;
  std::map<std::vector<TokenId>, std::vector<std::optional<TokenId>>> cache_;
};

CoverText BlockEncode(const BitMessage& message,
                      std::span<const TokenId> context,
                      const LanguageModel& model, const BlockKey& key,
                      std::size_t max_tokens = 0);
BitMessage BlockDecode(const CoverText& cover, const LanguageModel& model,
                       const BlockKey& key);

// Huffman code over the top-`truncation` tokens of one step's raw
// distribution, renormalized. Codes are built by repeatedly merging the two
// least probable subtrees; the more probable of the pair (on ties, the one
// holding the smaller token id) takes bit 0.
class HuffmanTree {
 public:
  struct Node {
    // Leaves have no children and carry a token.
    std::int32_t child[2] = {-1, -1};
    TokenId token = 0;
    bool leaf() const { return child[0] < 0; }
  };

  HuffmanTree(std::span<const double> raw, std::size_t truncation);

  // Leaves in ranked order (descending probability, ascending id).
  std::span<const TokenId> tokens() const { return tokens_; }
  std::span<const double> probabilities() const { return probs_; }
  const Bits& code(std::size_t leaf) const { return codes_[leaf]; }
  std::optional<std::size_t> LeafOf(TokenId token) const;

  const Node& root() const { return nodes_[root_]; }
  const Node& node(std::int32_t index) const { return nodes_[index]; }

 private:
  std::vector<TokenId> tokens_;
  std::vector<double> probs_;
  std::vector<Bits> codes_;
  std::vector<Node> nodes_;
  std::int32_t root_ = 0;
};

// Per-step Huffman method over the raw model.
class HuffmanCoder {
 public:
  HuffmanCoder(const LanguageModel& model, std::size_t truncation);

  std::size_t truncation() const { return truncation_; }
  const HuffmanTree& TreeFor(std::span<const TokenId> context);

  // Stops once every bit of `bits` has been spent; the last walk may read
  // pad bits.
  StegoTrace EncodeBits(std::span<const std::uint8_t> bits,
                        std::span<const TokenId> context,
                        std::size_t max_tokens);
  // Concatenated codes of `tokens`; throws kDesync for a token outside the
  // truncated set.
  Bits DecodeBits(std::span<const TokenId> tokens,
                  std::span<const TokenId> context);

  CoverText Encode(const BitMessage& message, std::span<const TokenId> context,
                   std::size_t max_tokens = 0);
  BitMessage Decode(const CoverText& cover);

 private:
  Bits DecodeImpl(std::span<const TokenId> tokens,
                  std::span<const TokenId> context, bool stop_when_framed);

  const LanguageModel* model_;
  std::size_t truncation_;
  std::map<std::vector<TokenId>, HuffmanTree> cache_;
};

CoverText HuffmanEncode(const BitMessage& message,
                        std::span<const TokenId> context,
                        const LanguageModel& model, std::size_t truncation,
                        std::size_t max_tokens = 0);
BitMessage HuffmanDecode(const CoverText& cover, const LanguageModel& model,
                         std::size_t truncation);

}  // namespace stego

#endif  // STEGO_BASELINES_H_
