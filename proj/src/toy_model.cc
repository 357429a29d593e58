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

#include "stego/toy_model.h"

#include <algorithm>
#include <set>

#include "stego/error.h"

namespace stego {

ToyModel::ToyModel(std::span<const std::string> words,
                   std::map<std::vector<std::string>, Row> table)
    : vocabulary_(Vocabulary::WithMarkers(words)) {
  for (auto& [ctx, row] : table) {
    std::vector<TokenId> key;
    for (const auto& w : ctx) key.push_back(vocabulary_.Id(w));
    Rational sum = 0;
    IdRow ids;
    std::set<TokenId> seen;
    for (const auto& [w, p] : row) {
      if (p < Rational(0)) {
        throw Error(ErrorCode::kInvalidDistribution, "negative probability");
      }
      const TokenId id = vocabulary_.Id(w);
      if (!seen.insert(id).second) {
        throw Error(ErrorCode::kInvalidDistribution,
                    "token '" + w + "' listed twice in one row");
      }
      ids.emplace_back(id, p);
      sum += p;
    }
    if (sum != Rational(1)) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "toy model row does not sum to exactly 1");
    }
    max_context_ = std::max(max_context_, key.size());
    table_.emplace(std::move(key), std::move(ids));
  }
  if (!table_.contains(std::vector<TokenId>{})) {
    throw Error(ErrorCode::kInvalidArgument,
                "toy model needs an empty-context row");
  }
}

ToyModel ToyModel::Iid(const Row& row) {
  std::vector<std::string> words;
  for (const auto& [w, p] : row) {
    if (w != Vocabulary::kBosSurface && w != Vocabulary::kEosSurface) {
      words.push_back(w);
    }
  }
  return ToyModel(words, {{{}, row}});
}

ToyModel ToyModel::Story() {
  const std::vector<std::string> words = {
      "Once", "upon", "a", "time", "I", "was", "saw", "there", "king",
      "dragon", "the", "end", "."};
  using R = Rational;
  std::map<std::vector<std::string>, Row> table = {
      {{}, {{"the", R(1, 2)}, {"a", R(1, 4)}, {".", R(1, 8)},
            {"</s>", R(1, 8)}}},
      {{"<s>"}, {{"Once", R(1, 2)}, {"I", R(1, 4)},
                 {"the", R(1, 4)}}},
      {{"Once"}, {{"upon", R(1, 2)}, {"I", R(1, 2)}}},
      {{"upon"}, {{"a", R(1)}}},
      {{"a"}, {{"time", R(3, 4)}, {"king", R(1, 8)}, {"dragon", R(1, 8)}}},
      {{"I"}, {{"was", R(1, 2)}, {"saw", R(1, 4)}, {"there", R(1, 4)}}},
      {{"saw"}, {{"a", R(1, 2)}, {"the", R(1, 2)}}},
      {{"the"}, {{"king", R(1, 3)}, {"dragon", R(1, 3)}, {"end", R(1, 3)}}},
      {{"end"}, {{".", R(1)}}},
      {{"."}, {{"</s>", R(1)}}},
  };
  return ToyModel(words, std::move(table));
}

const std::pair<const std::vector<TokenId>, ToyModel::IdRow>& ToyModel::Lookup(
    std::span<const TokenId> context) const {
  const std::size_t longest = std::min(context.size(), max_context_);
  std::vector<TokenId> key;
  for (std::size_t len = longest + 1; len-- > 0;) {
    key.assign(context.end() - static_cast<long>(len), context.end());
    if (auto it = table_.find(key); it != table_.end()) return *it;
  }
  return *table_.find(std::vector<TokenId>{});
}

std::vector<TokenId> ToyModel::StateKey(
    std::span<const TokenId> context) const {
  return Lookup(context).first;
}

std::vector<double> ToyModel::RawDistribution(
    std::span<const TokenId> context) const {
  CheckContext(*this, context);
  std::vector<double> dist(vocabulary_.size(), 0.0);
  for (const auto& [id, p] : Lookup(context).second) {
    dist[id] = static_cast<double>(p.numerator()) /
               static_cast<double>(p.denominator());
  }
  return dist;
}

ToyModel::Rational ToyModel::ExactProbability(std::span<const TokenId> context,
                                              TokenId token) const {
  CheckContext(*this, context);
  for (const auto& [id, p] : Lookup(context).second) {
    if (id == token) return p;
  }
  return 0;
}

}  // namespace stego
