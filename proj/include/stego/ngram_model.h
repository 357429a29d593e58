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

#ifndef STEGO_NGRAM_MODEL_H_
#define STEGO_NGRAM_MODEL_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stego/language_model.h"
#include "stego/vocabulary.h"

namespace stego {

struct NGramOptions {
  int order = 3;
  double alpha = 0.02;
  // Wrap each sentence in <s> ... </s>; a context is then read from its last
  // marker on, with </s> acting as a fresh <s>. Without markers the documents
  // are plain token streams and neither marker is ever predicted.
  bool sentence_markers = true;
};

// Word n-gram model with add-alpha smoothing. A context backs off by
// truncation to its longest suffix (at most order - 1 tokens) that occurred
// in training. Immutable after construction.
class NGramModel : public LanguageModel {
 public:
  static NGramModel Train(std::span<const std::vector<std::string>> documents,
                          const NGramOptions& options);

  const Vocabulary& vocabulary() const override { return vocabulary_; }
  std::vector<double> RawDistribution(
      std::span<const TokenId> context) const override;
  std::vector<TokenId> StateKey(
      std::span<const TokenId> context) const override;

  // BOS, then the ids of `words`, with EOS after each sentence terminator
  // when the model uses markers.
  std::vector<TokenId> SentenceContext(std::span<const std::string> words) const;

  // Smoothed p(token | context) computed without building the full vector.
  double Probability(std::span<const TokenId> context, TokenId token) const;

  int order() const { return order_; }
  double alpha() const { return alpha_; }
  bool sentence_markers() const { return sentence_markers_; }
  std::size_t context_count() const { return counts_.size(); }

  // Versioned binary format, magic "NGLM".
  void Save(std::ostream& out) const;
  static NGramModel Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  static NGramModel LoadFile(const std::string& path);

 private:
  struct Counts {
    std::uint64_t total = 0;
    std::vector<std::pair<TokenId, std::uint64_t>> next;  // sorted by id
  };

  NGramModel() = default;
  // The part of `context` the model conditions on.
  std::vector<TokenId> History(std::span<const TokenId> context) const;
  const Counts& Lookup(std::span<const TokenId> context) const;
  void BuildSupport();

  Vocabulary vocabulary_;
  int order_ = 1;
  double alpha_ = 0.0;
  bool sentence_markers_ = true;
  std::map<std::vector<TokenId>, Counts> counts_;
  std::vector<TokenId> support_;  // tokens that can ever be predicted
};

}  // namespace stego

#endif  // STEGO_NGRAM_MODEL_H_
