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

#include "stego/distribution.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "stego/error.h"

namespace stego {

namespace {

// Accepts vectors normalized to within remote-protocol tolerance.
constexpr double kSumTolerance = 1e-6;

}  // namespace

void CheckContext(const LanguageModel& model,
                  std::span<const TokenId> context) {
  const std::size_t vocab_size = model.vocabulary().size();
  for (TokenId id : context) {
    if (id >= vocab_size) {
      throw Error(ErrorCode::kUnknownToken,
                  "context token " + std::to_string(id) +
                      " outside vocabulary of size " +
                      std::to_string(vocab_size));
    }
  }
}

void ModulationParams::Validate(std::size_t vocab_size) const {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must be positive");
  }
  if (top_k != kFullVocabulary && top_k > vocab_size) {
    throw Error(ErrorCode::kInvalidArgument,
                "top_k " + std::to_string(top_k) + " exceeds vocabulary size " +
                    std::to_string(vocab_size));
  }
  if (precision < kMinPrecision || precision > kMaxPrecision) {
    throw Error(ErrorCode::kInvalidArgument,
                "precision must lie in [16, 62], got " +
                    std::to_string(precision));
  }
}

RankedDistribution RankTopK(std::span<const double> dist, std::size_t k) {
  std::vector<TokenId> order;
  order.reserve(dist.size());
  for (TokenId i = 0; i < dist.size(); ++i) {
    const double p = dist[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "probability of token " + std::to_string(i) +
                      " is negative or not finite");
    }
    if (p > 0.0) order.push_back(i);
  }
  auto before = [&dist](TokenId a, TokenId b) {
    return dist[a] != dist[b] ? dist[a] > dist[b] : a < b;
  };
  if (k < order.size()) {
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                      order.end(), before);
    order.resize(k);
  } else {
    std::sort(order.begin(), order.end(), before);
  }
  RankedDistribution ranked;
  ranked.probs.reserve(order.size());
  for (TokenId id : order) ranked.probs.push_back(dist[id]);
  ranked.ids = std::move(order);
  return ranked;
}

RankedDistribution Modulate(std::span<const double> dist,
                            const ModulationParams& params) {
  params.Validate(dist.size());
  double sum = 0.0;
  for (double p : dist) sum += p;
  if (!(std::abs(sum - 1.0) <= kSumTolerance)) {
    throw Error(ErrorCode::kInvalidDistribution,
                "distribution sums to " + std::to_string(sum) + ", not 1");
  }
  RankedDistribution ranked =
      RankTopK(dist, params.EffectiveTopK(dist.size()));
  if (ranked.size() == 0) {
    throw Error(ErrorCode::kInvalidDistribution,
                "no probability mass survives truncation");
  }
  if (params.temperature != 1.0) {
    // Work relative to the largest entry so small temperatures cannot
    // underflow the whole vector.
    const double log_max = std::log(ranked.probs.front());
    const double inv_t = 1.0 / params.temperature;
    for (double& p : ranked.probs) p = std::exp((std::log(p) - log_max) * inv_t);
  }
  double kept = 0.0;
  for (double p : ranked.probs) kept += p;
  if (!(kept > 0.0)) {
    throw Error(ErrorCode::kInvalidDistribution,
                "no probability mass survives truncation");
  }
  for (double& p : ranked.probs) p /= kept;
  return ranked;
}

TokenDistribution::TokenDistribution(int precision, std::vector<TokenId> ids,
                                     std::vector<std::uint64_t> weights)
    : precision_(precision), ids_(std::move(ids)), weights_(std::move(weights)) {
  auto fail = [](const std::string& why) {
    throw Error(ErrorCode::kInvalidDistribution, "token table: " + why);
  };
  // Tables below the coder's minimum precision are legal on their own.
  if (precision_ < 1 || precision_ > ModulationParams::kMaxPrecision) {
    fail("precision out of range");
  }
  if (ids_.empty() || ids_.size() != weights_.size()) {
    fail("ids and weights must be non-empty and of equal length");
  }
  std::unordered_set<TokenId> seen;
  seen.reserve(ids_.size());
  cumulative_.resize(ids_.size() + 1);
  cumulative_[0] = 0;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (weights_[i] == 0) fail("zero-width bin");
    if (!seen.insert(ids_[i]).second) fail("duplicate token id");
    if (i > 0) {
      const bool ordered =
          weights_[i - 1] > weights_[i] ||
          (weights_[i - 1] == weights_[i] && ids_[i - 1] < ids_[i]);
      if (!ordered) fail("entries out of order");
    }
    if (weights_[i] > total() - cumulative_[i]) fail("weights exceed total");
    cumulative_[i + 1] = cumulative_[i] + weights_[i];
  }
  if (cumulative_.back() != total()) fail("weights do not sum to 2^precision");
}

double TokenDistribution::probability(std::size_t i) const {
  return std::ldexp(static_cast<double>(weights_[i]), -precision_);
}

std::optional<std::size_t> TokenDistribution::IndexOf(TokenId token) const {
  auto it = std::find(ids_.begin(), ids_.end(), token);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - ids_.begin());
}

TokenDistribution Quantize(const RankedDistribution& dist, int precision) {
  if (precision < 1 || precision > ModulationParams::kMaxPrecision) {
    throw Error(ErrorCode::kInvalidArgument, "precision out of range");
  }
  const std::size_t n = dist.size();
  if (n == 0) {
    throw Error(ErrorCode::kInvalidDistribution, "empty distribution");
  }
  const std::uint64_t total = std::uint64_t{1} << precision;
  if (n > total) {
    throw Error(ErrorCode::kCannotQuantize,
                std::to_string(n) + " tokens cannot fit in 2^" +
                    std::to_string(precision) + " units");
  }
  const double scale = std::ldexp(1.0, precision);
  std::vector<std::uint64_t> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double scaled = std::round(dist.probs[i] * scale);
    weight[i] = std::max<std::uint64_t>(
        1, scaled >= scale ? total : static_cast<std::uint64_t>(scaled));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto by_weight = [&](std::size_t a, std::size_t b) {
    return weight[a] != weight[b] ? weight[a] > weight[b]
                                  : dist.ids[a] < dist.ids[b];
  };
  std::sort(order.begin(), order.end(), by_weight);

  __int128 diff = static_cast<__int128>(total);
  for (auto w : weight) diff -= w;
  if (diff > 0) {
    // Every entry rounded down by at most half a unit, so diff <= n / 2 and
    // one round-robin pass from the largest entry suffices.
    for (std::size_t r = 0; diff > 0; ++r, --diff) ++weight[order[r % n]];
  } else {
    while (diff < 0) {
      bool changed = false;
      for (std::size_t r = 0; r < n && diff < 0; ++r) {
        auto& w = weight[order[r]];
        if (w > 1) {
          --w;
          ++diff;
          changed = true;
        }
      }
      if (!changed) {
        throw Error(ErrorCode::kCannotQuantize, "no weight left to remove");
      }
    }
  }

  std::sort(order.begin(), order.end(), by_weight);
  std::vector<TokenId> ids(n);
  std::vector<std::uint64_t> weights(n);
  for (std::size_t r = 0; r < n; ++r) {
    ids[r] = dist.ids[order[r]];
    weights[r] = weight[order[r]];
  }
  return TokenDistribution(precision, std::move(ids), std::move(weights));
}

TokenDistribution NextDistribution(const LanguageModel& model,
                                   std::span<const TokenId> context,
                                   const ModulationParams& params) {
  CheckContext(model, context);
  const auto raw = model.RawDistribution(context);
  return Quantize(Modulate(raw, params), params.precision);
}

DistributionSource::DistributionSource(const LanguageModel& model,
                                       const ModulationParams& params,
                                       std::size_t max_entries)
    : model_(&model), params_(params), max_entries_(max_entries) {
  params_.Validate(model.vocabulary().size());
}

const TokenDistribution& DistributionSource::Next(
    std::span<const TokenId> context) {
  auto key = model_->StateKey(context);
  if (auto it = quantized_.find(key); it != quantized_.end()) return it->second;
  if (quantized_.size() >= max_entries_) quantized_.clear();
  const auto& raw = Raw(context);
  auto dist = Quantize(Modulate(raw, params_), params_.precision);
  return quantized_.emplace(std::move(key), std::move(dist)).first->second;
}

const std::vector<double>& DistributionSource::Raw(
    std::span<const TokenId> context) {
  auto key = model_->StateKey(context);
  if (auto it = raw_.find(key); it != raw_.end()) return it->second;
  if (raw_.size() >= max_entries_) raw_.clear();
  auto raw = model_->RawDistribution(context);
  if (raw.size() != model_->vocabulary().size()) {
    throw Error(ErrorCode::kInvalidDistribution,
                "model returned a vector of the wrong length");
  }
  return raw_.emplace(std::move(key), std::move(raw)).first->second;
}

}  // namespace stego
