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

#ifndef STEGO_TOY_MODEL_H_
#define STEGO_TOY_MODEL_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "stego/language_model.h"
#include "stego/vocabulary.h"

namespace stego {

// Hand-specified model: an explicit table from context (as surfaces) to an
// exact rational distribution. A query uses the longest suffix of its
// context that appears in the table; the empty context is the fallback and
// must be present.
class ToyModel : public LanguageModel {
 public:
  using Rational = boost::rational<std::int64_t>;
  using Row = std::vector<std::pair<std::string, Rational>>;

  // Every row must sum to exactly 1 and name only words from `words`.
  ToyModel(std::span<const std::string> words,
           std::map<std::vector<std::string>, Row> table);

  // Same distribution at every step.
  static ToyModel Iid(const Row& row);

  // Small storytelling table in which "Once" is followed by "upon" or "I"
  // with equal probability.
  static ToyModel Story();

  const Vocabulary& vocabulary() const override { return vocabulary_; }
  std::vector<double> RawDistribution(
      std::span<const TokenId> context) const override;
  std::vector<TokenId> StateKey(
      std::span<const TokenId> context) const override;

  // Exact probability of `token` after `context`.
  Rational ExactProbability(std::span<const TokenId> context,
                            TokenId token) const;

 private:
  using IdRow = std::vector<std::pair<TokenId, Rational>>;
  const std::pair<const std::vector<TokenId>, IdRow>& Lookup(
      std::span<const TokenId> context) const;

  Vocabulary vocabulary_;
  std::map<std::vector<TokenId>, IdRow> table_;
  std::size_t max_context_ = 0;
};

}  // namespace stego

#endif  // STEGO_TOY_MODEL_H_
