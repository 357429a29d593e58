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

#ifndef STEGO_DISTRIBUTION_H_
#define STEGO_DISTRIBUTION_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "stego/language_model.h"
#include "stego/types.h"

namespace stego {

// Real-valued distribution restricted to its support, ordered by descending
// probability with ties broken by ascending token id.
struct RankedDistribution {
  std::vector<TokenId> ids;
  std::vector<double> probs;

  std::size_t size() const { return ids.size(); }
};

// Orders the strictly positive entries of `dist` and keeps the first `k`.
// Does not renormalize.
RankedDistribution RankTopK(std::span<const double> dist, std::size_t k);

// Top-k truncation followed by p^(1/temperature) and renormalization. Zero
// entries never survive. Throws kInvalidDistribution if `dist` is not a
// probability vector or nothing survives.
RankedDistribution Modulate(std::span<const double> dist,
                            const ModulationParams& params);

// Integer bin table with weights summing to exactly 2^precision. Entries
// follow the same ordering rule as RankedDistribution, applied to the
// integer weights; bin i covers [cumulative(i), cumulative(i + 1)).
class TokenDistribution {
 public:
  TokenDistribution() = default;
  // Validates every invariant; throws kInvalidDistribution on violation.
  TokenDistribution(int precision, std::vector<TokenId> ids,
                    std::vector<std::uint64_t> weights);

  int precision() const { return precision_; }
  std::uint64_t total() const { return std::uint64_t{1} << precision_; }
  std::size_t size() const { return ids_.size(); }
  TokenId id(std::size_t i) const { return ids_[i]; }
  std::uint64_t weight(std::size_t i) const { return weights_[i]; }
  std::uint64_t cumulative(std::size_t i) const { return cumulative_[i]; }
  std::span<const TokenId> ids() const { return ids_; }
  std::span<const std::uint64_t> weights() const { return weights_; }
  double probability(std::size_t i) const;

  std::optional<std::size_t> IndexOf(TokenId token) const;

  bool operator==(const TokenDistribution&) const = default;

 private:
  int precision_ = 0;
  std::vector<TokenId> ids_;
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> cumulative_;  // size() + 1 entries
};

// weight_i = max(1, round(p_i * 2^precision)), then units are added to (or
// taken from) the largest weights, lowest id first, until the total is exact.
// Throws kCannotQuantize if there are more tokens than 2^precision.
TokenDistribution Quantize(const RankedDistribution& dist, int precision);

// Quantize(Modulate(model.RawDistribution(context), params)).
TokenDistribution NextDistribution(const LanguageModel& model,
                                   std::span<const TokenId> context,
                                   const ModulationParams& params);

// Per-stream memo of NextDistribution and RawDistribution keyed by the
// model's StateKey. Not thread-safe; give each worker its own instance.
// References returned by one call stay valid until the next call.
class DistributionSource {
 public:
  DistributionSource(const LanguageModel& model, const ModulationParams& params,
                     std::size_t max_entries = 1 << 16);

  const LanguageModel& model() const { return *model_; }
  const ModulationParams& params() const { return params_; }

  const TokenDistribution& Next(std::span<const TokenId> context);
  const std::vector<double>& Raw(std::span<const TokenId> context);

 private:
  const LanguageModel* model_;
  ModulationParams params_;
  std::size_t max_entries_;
  std::map<std::vector<TokenId>, TokenDistribution> quantized_;
  std::map<std::vector<TokenId>, std::vector<double>> raw_;
};

}  // namespace stego

#endif  // STEGO_DISTRIBUTION_H_
