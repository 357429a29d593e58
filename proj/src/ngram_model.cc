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

#include "stego/ngram_model.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <type_traits>

#include "stego/corpus.h"
#include "stego/error.h"

namespace stego {

namespace {

constexpr char kMagic[4] = {'N', 'G', 'L', 'M'};
constexpr std::uint16_t kFormatVersion = 1;
// Sanity bounds for untrusted files.
constexpr std::uint32_t kMaxOrder = 64;
constexpr std::uint32_t kMaxSurfaceBytes = 1 << 20;

template <typename T>
void WriteLe(std::ostream& out, T value) {
  unsigned char buf[sizeof(T)];
  if constexpr (std::is_same_v<T, double>) {
    std::uint64_t bits;
    std::memcpy(&bits, &value, sizeof(bits));
    WriteLe(out, bits);
    return;
  } else {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(value) >>
                                           (8 * i)) & 0xffu);
    }
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
  }
}

template <typename T>
T ReadLe(std::istream& in) {
  if constexpr (std::is_same_v<T, double>) {
    const auto bits = ReadLe<std::uint64_t>(in);
    double value;
    std::memcpy(&value, &bits, sizeof(value));
    return value;
  } else {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char*>(buf), sizeof(T))) {
      throw Error(ErrorCode::kFormat, "model file truncated");
    }
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      value |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    }
    return static_cast<T>(value);
  }
}

}  // namespace

NGramModel NGramModel::Train(
    std::span<const std::vector<std::string>> documents,
    const NGramOptions& options) {
  if (options.order < 1) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram order must be >= 1");
  }
  if (!(options.alpha >= 0.0) || !std::isfinite(options.alpha)) {
    throw Error(ErrorCode::kInvalidArgument,
                "smoothing alpha must be finite and non-negative");
  }
  std::set<std::string> words;
  for (const auto& doc : documents) {
    for (const auto& w : doc) {
      if (w == Vocabulary::kBosSurface || w == Vocabulary::kEosSurface) {
        throw Error(ErrorCode::kInvalidArgument,
                    "corpus may not contain reserved marker '" + w + "'");
      }
      words.insert(w);
    }
  }
  if (words.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot train on an empty corpus");
  }

  NGramModel model;
  model.order_ = options.order;
  model.alpha_ = options.alpha;
  model.sentence_markers_ = options.sentence_markers;
  const std::vector<std::string> sorted(words.begin(), words.end());
  model.vocabulary_ = Vocabulary::WithMarkers(sorted);

  std::map<std::vector<TokenId>, std::map<TokenId, std::uint64_t>> raw;
  std::vector<TokenId> ids;
  std::vector<Document> units;
  for (const auto& doc : documents) {
    if (!model.sentence_markers_) {
      units.push_back(doc);
      continue;
    }
    for (auto& s : SplitSentences(doc)) units.push_back(std::move(s));
  }
  for (const auto& unit : units) {
    if (unit.empty()) continue;
    ids.clear();
    if (model.sentence_markers_) ids.push_back(model.vocabulary_.bos());
    for (const auto& w : unit) ids.push_back(model.vocabulary_.Id(w));
    if (model.sentence_markers_) ids.push_back(model.vocabulary_.eos());
    const std::size_t first = model.sentence_markers_ ? 1 : 0;
    for (std::size_t i = first; i < ids.size(); ++i) {
      for (std::size_t k = 0;
           k < static_cast<std::size_t>(model.order_) && k <= i; ++k) {
        std::vector<TokenId> ctx(ids.begin() + static_cast<long>(i - k),
                                 ids.begin() + static_cast<long>(i));
        ++raw[std::move(ctx)][ids[i]];
      }
    }
  }
  for (auto& [ctx, next] : raw) {
    Counts& counts = model.counts_[ctx];
    for (const auto& [id, n] : next) {
      counts.next.emplace_back(id, n);
      counts.total += n;
    }
  }
  model.BuildSupport();
  return model;
}

void NGramModel::BuildSupport() {
  support_.clear();
  for (TokenId id = 0; id < vocabulary_.size(); ++id) {
    if (id == vocabulary_.bos()) continue;
    if (id == vocabulary_.eos() && !sentence_markers_) continue;
    support_.push_back(id);
  }
}

std::vector<TokenId> NGramModel::History(
    std::span<const TokenId> context) const {
  const std::size_t keep = static_cast<std::size_t>(order_ - 1);
  std::size_t start = context.size() > keep ? context.size() - keep : 0;
  std::vector<TokenId> history;
  if (sentence_markers_) {
    for (std::size_t i = context.size(); i-- > start;) {
      if (context[i] == vocabulary_.bos() || context[i] == vocabulary_.eos()) {
        history.push_back(vocabulary_.bos());
        start = i + 1;
        break;
      }
    }
  }
  history.insert(history.end(), context.begin() + static_cast<long>(start),
                 context.end());
  return history;
}

std::vector<TokenId> NGramModel::SentenceContext(
    std::span<const std::string> words) const {
  std::vector<TokenId> context = {vocabulary_.bos()};
  for (const auto& w : words) {
    context.push_back(vocabulary_.Id(w));
    if (sentence_markers_ && (w == "." || w == "!" || w == "?")) {
      context.push_back(vocabulary_.eos());
    }
  }
  return context;
}

const NGramModel::Counts& NGramModel::Lookup(
    std::span<const TokenId> full_context) const {
  const std::vector<TokenId> context = History(full_context);
  const std::size_t longest =
      std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  std::vector<TokenId> key;
  for (std::size_t len = longest + 1; len-- > 0;) {
    key.assign(context.end() - static_cast<long>(len), context.end());
    if (auto it = counts_.find(key); it != counts_.end()) return it->second;
  }
  throw Error(ErrorCode::kInvalidArgument, "model has no unigram counts");
}

std::vector<TokenId> NGramModel::StateKey(
    std::span<const TokenId> full_context) const {
  const std::vector<TokenId> context = History(full_context);
  const std::size_t longest =
      std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  for (std::size_t len = longest + 1; len-- > 0;) {
    std::vector<TokenId> key(context.end() - static_cast<long>(len),
                             context.end());
    if (counts_.contains(key)) return key;
  }
  return {};
}

std::vector<double> NGramModel::RawDistribution(
    std::span<const TokenId> context) const {
  CheckContext(*this, context);
  const Counts& counts = Lookup(context);
  const double denom = static_cast<double>(counts.total) +
                       alpha_ * static_cast<double>(support_.size());
  std::vector<double> dist(vocabulary_.size(), 0.0);
  const double floor = alpha_ / denom;
  for (TokenId id : support_) dist[id] = floor;
  for (const auto& [id, n] : counts.next) {
    dist[id] = (static_cast<double>(n) + alpha_) / denom;
  }
  return dist;
}

double NGramModel::Probability(std::span<const TokenId> context,
                               TokenId token) const {
  CheckContext(*this, context);
  if (token >= vocabulary_.size() || token == vocabulary_.bos() ||
      (token == vocabulary_.eos() && !sentence_markers_)) {
    return 0.0;
  }
  const Counts& counts = Lookup(context);
  auto it = std::lower_bound(
      counts.next.begin(), counts.next.end(), token,
      [](const auto& entry, TokenId id) { return entry.first < id; });
  const double n =
      (it != counts.next.end() && it->first == token) ? it->second : 0.0;
  return (n + alpha_) / (static_cast<double>(counts.total) +
                         alpha_ * static_cast<double>(support_.size()));
}

void NGramModel::Save(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  WriteLe<std::uint16_t>(out, kFormatVersion);
  WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(order_));
  WriteLe<double>(out, alpha_);
  WriteLe<std::uint8_t>(out, sentence_markers_ ? 1 : 0);
  WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(vocabulary_.size()));
  for (const auto& s : vocabulary_.surfaces()) {
    WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  WriteLe<std::uint64_t>(out, counts_.size());
  for (const auto& [ctx, counts] : counts_) {
    WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(ctx.size()));
    for (TokenId id : ctx) WriteLe<std::uint32_t>(out, id);
    WriteLe<std::uint32_t>(out, static_cast<std::uint32_t>(counts.next.size()));
    for (const auto& [id, n] : counts.next) {
      WriteLe<std::uint32_t>(out, id);
      WriteLe<std::uint64_t>(out, n);
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "failed writing n-gram model");
}

NGramModel NGramModel::Load(std::istream& in) {
  char magic[4];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::kFormat, "not an NGLM model file");
  }
  const auto version = ReadLe<std::uint16_t>(in);
  if (version != kFormatVersion) {
    throw Error(ErrorCode::kFormat,
                "unsupported NGLM version " + std::to_string(version));
  }
  NGramModel model;
  const auto order = ReadLe<std::uint32_t>(in);
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorCode::kFormat, "bad n-gram order in model file");
  }
  model.order_ = static_cast<int>(order);
  model.alpha_ = ReadLe<double>(in);
  if (!(model.alpha_ >= 0.0) || !std::isfinite(model.alpha_)) {
    throw Error(ErrorCode::kFormat, "bad smoothing alpha in model file");
  }
  model.sentence_markers_ = ReadLe<std::uint8_t>(in) != 0;

  const auto vocab_size = ReadLe<std::uint32_t>(in);
  std::vector<std::string> surfaces;
  surfaces.reserve(std::min<std::uint32_t>(vocab_size, 1u << 20));
  for (std::uint32_t i = 0; i < vocab_size; ++i) {
    const auto len = ReadLe<std::uint32_t>(in);
    if (len > kMaxSurfaceBytes) {
      throw Error(ErrorCode::kFormat, "vocabulary entry too long");
    }
    std::string s(len, '\0');
    if (!in.read(s.data(), len)) {
      throw Error(ErrorCode::kFormat, "model file truncated");
    }
    surfaces.push_back(std::move(s));
  }
  if (surfaces.size() < 3 || surfaces[0] != Vocabulary::kBosSurface ||
      surfaces[1] != Vocabulary::kEosSurface) {
    throw Error(ErrorCode::kFormat, "model vocabulary lacks reserved markers");
  }
  model.vocabulary_ = Vocabulary(std::move(surfaces), Vocabulary::kBuiltinBos,
                                 Vocabulary::kBuiltinEos);

  const auto n_contexts = ReadLe<std::uint64_t>(in);
  for (std::uint64_t c = 0; c < n_contexts; ++c) {
    const auto len = ReadLe<std::uint32_t>(in);
    if (len >= order) throw Error(ErrorCode::kFormat, "context too long");
    std::vector<TokenId> ctx(len);
    for (auto& id : ctx) {
      id = ReadLe<std::uint32_t>(in);
      if (id >= vocab_size) throw Error(ErrorCode::kFormat, "bad token id");
    }
    Counts counts;
    const auto n_next = ReadLe<std::uint32_t>(in);
    if (n_next > vocab_size) throw Error(ErrorCode::kFormat, "bad count table");
    for (std::uint32_t i = 0; i < n_next; ++i) {
      const auto id = ReadLe<std::uint32_t>(in);
      const auto n = ReadLe<std::uint64_t>(in);
      if (id >= vocab_size || n == 0 ||
          (!counts.next.empty() && counts.next.back().first >= id)) {
        throw Error(ErrorCode::kFormat, "bad count entry");
      }
      counts.next.emplace_back(id, n);
      counts.total += n;
    }
    if (counts.total == 0) throw Error(ErrorCode::kFormat, "empty context");
    model.counts_.emplace(std::move(ctx), std::move(counts));
  }
  if (!model.counts_.contains(std::vector<TokenId>{})) {
    throw Error(ErrorCode::kFormat, "model file lacks unigram counts");
  }
  model.BuildSupport();
  return model;
}

void NGramModel::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  Save(out);
}

NGramModel NGramModel::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return Load(in);
}

}  // namespace stego
