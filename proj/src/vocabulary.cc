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

#include "stego/vocabulary.h"

#include <cstdio>
#include <sstream>

#include "stego/error.h"

namespace stego {

Vocabulary::Vocabulary(std::vector<std::string> surfaces, TokenId bos,
                       TokenId eos)
    : surfaces_(std::move(surfaces)), bos_(bos), eos_(eos) {
  if (bos_ >= surfaces_.size() || eos_ >= surfaces_.size() || bos_ == eos_) {
    throw Error(ErrorCode::kInvalidArgument,
                "vocabulary markers must be distinct valid ids");
  }
  index_.reserve(surfaces_.size());
  for (TokenId id = 0; id < surfaces_.size(); ++id) {
    if (!index_.emplace(surfaces_[id], id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate vocabulary surface '" + surfaces_[id] + "'");
    }
  }
}

Vocabulary Vocabulary::WithMarkers(std::span<const std::string> words) {
  std::vector<std::string> surfaces;
  surfaces.reserve(words.size() + 2);
  surfaces.emplace_back(kBosSurface);
  surfaces.emplace_back(kEosSurface);
  surfaces.insert(surfaces.end(), words.begin(), words.end());
  return Vocabulary(std::move(surfaces), kBuiltinBos, kBuiltinEos);
}

const std::string& Vocabulary::surface(TokenId id) const {
  if (!Contains(id)) {
    throw Error(ErrorCode::kUnknownToken,
                "token id " + std::to_string(id) + " outside vocabulary");
  }
  return surfaces_[id];
}

std::optional<TokenId> Vocabulary::Find(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenId Vocabulary::Id(std::string_view surface) const {
  if (auto id = Find(surface)) return *id;
  throw Error(ErrorCode::kUnknownToken,
              "word '" + std::string(surface) + "' not in vocabulary");
}

std::vector<TokenId> Vocabulary::Tokenize(std::string_view text) const {
  std::vector<TokenId> ids;
  std::istringstream in{std::string(text)};
  std::string word;
  while (in >> word) ids.push_back(Id(word));
  return ids;
}

std::string Vocabulary::Detokenize(std::span<const TokenId> ids) const {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += surface(ids[i]);
  }
  return out;
}

std::uint64_t Vocabulary::Fingerprint() const {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  auto mix = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 0x100000001b3ull;
    }
    hash ^= 0xff;
    hash *= 0x100000001b3ull;
  };
  mix(std::to_string(bos_));
  mix(std::to_string(eos_));
  for (const auto& s : surfaces_) mix(s);
  return hash;
}

std::string Vocabulary::FingerprintHex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(Fingerprint()));
  return buf;
}

}  // namespace stego
