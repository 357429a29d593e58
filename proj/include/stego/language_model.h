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

#ifndef STEGO_LANGUAGE_MODEL_H_
#define STEGO_LANGUAGE_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stego/types.h"
#include "stego/vocabulary.h"

namespace stego {

// Next-token model shared by sender and receiver. Implementations must be
// pure: the same context always yields a bit-identical vector.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual const Vocabulary& vocabulary() const = 0;

  // Probability of every vocabulary id given `context`; sums to 1.
  virtual std::vector<double> RawDistribution(
      std::span<const TokenId> context) const = 0;

  // Smallest part of `context` that determines RawDistribution(context).
  // Used only as a cache key; the default is the whole context.
  virtual std::vector<TokenId> StateKey(
      std::span<const TokenId> context) const {
    return {context.begin(), context.end()};
  }
};

// Throws kUnknownToken if any id is outside the model's vocabulary.
void CheckContext(const LanguageModel& model, std::span<const TokenId> context);

// Temperature, top-k and integer precision of the coder's view of a model.
struct ModulationParams {
  static constexpr std::uint32_t kFullVocabulary = 0;
  static constexpr int kMinPrecision = 16;
  static constexpr int kMaxPrecision = 62;

  double temperature = 1.0;
  // 0 keeps the whole vocabulary.
  std::uint32_t top_k = kFullVocabulary;
  int precision = 32;

  // Throws kInvalidArgument unless 0 < temperature, top_k <= vocab_size and
  // precision is within [16, 62].
  void Validate(std::size_t vocab_size) const;

  std::size_t EffectiveTopK(std::size_t vocab_size) const {
    return top_k == kFullVocabulary ? vocab_size : top_k;
  }

  bool operator==(const ModulationParams&) const = default;
};

}  // namespace stego

#endif  // STEGO_LANGUAGE_MODEL_H_
