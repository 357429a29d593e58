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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "stego/error.h"
#include "stego/toy_model.h"
#include "test_support.h"

namespace stego {
namespace {

NGramOptions Raw(int order, double alpha) {
  NGramOptions o;
  o.order = order;
  o.alpha = alpha;
  o.sentence_markers = false;
  return o;
}

std::vector<Document> Docs(std::initializer_list<std::string> lines) {
  std::vector<Document> docs;
  for (const auto& line : lines) {
    std::istringstream in(line);
    Document d;
    for (std::string w; in >> w;) d.push_back(w);
    docs.push_back(d);
  }
  return docs;
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(NGramModel, UnigramOfSingleWord) {
  const NGramModel m = NGramModel::Train(Docs({"a a a"}), Raw(1, 0.0));
  const TokenId a = m.vocabulary().Id("a");
  EXPECT_DOUBLE_EQ(m.RawDistribution(std::vector<TokenId>{})[a], 1.0);
  EXPECT_DOUBLE_EQ(m.RawDistribution(std::vector<TokenId>{a, a})[a], 1.0);
}

TEST(NGramModel, BigramOfPair) {
  const NGramModel m = NGramModel::Train(Docs({"a b"}), Raw(2, 0.0));
  const Vocabulary& v = m.vocabulary();
  EXPECT_DOUBLE_EQ(m.Probability(std::vector<TokenId>{v.Id("a")}, v.Id("b")),
                   1.0);
}

TEST(NGramModel, AddAlphaByHandCount) {
  const NGramModel m = NGramModel::Train(Docs({"a b a c"}), Raw(2, 1.0));
  const Vocabulary& v = m.vocabulary();
  const std::vector<TokenId> ctx = {v.Id("a")};
  // "a" is followed once by "b" and once by "c"; three predictable words.
  const double count_ab = 1;
  const double count_a = 2;
  const double support = 3;
  const double expected = (count_ab + 1.0) / (count_a + 1.0 * support);
  EXPECT_NEAR(m.Probability(ctx, v.Id("b")), expected, 1e-15);
  EXPECT_NEAR(m.Probability(ctx, v.Id("b")), 0.4, 1e-15);
  EXPECT_NEAR(m.RawDistribution(ctx)[v.Id("a")], 1.0 / 5.0, 1e-15);
}

TEST(NGramModel, VocabularyHasMarkersThenSortedWords) {
  const NGramModel m = NGramModel::Train(Docs({"c a b", "b d"}), Raw(2, 0.1));
  const Vocabulary& v = m.vocabulary();
  ASSERT_EQ(v.size(), 6u);
  EXPECT_EQ(v.bos(), 0u);
  EXPECT_EQ(v.eos(), 1u);
  EXPECT_EQ(v.surface(2), "a");
  EXPECT_EQ(v.surface(5), "d");
}

TEST(NGramModel, PositiveOnPredictableTokensOnly) {
  NGramOptions o;
  o.order = 3;
  o.alpha = 0.5;
  const NGramModel m = NGramModel::Train(Docs({"a b c", "c b a a"}), o);
  const Vocabulary& v = m.vocabulary();
  for (const auto& ctx : std::vector<std::vector<TokenId>>{
           {v.bos()}, {v.bos(), v.Id("a")}, {v.Id("c"), v.Id("c")}, {}}) {
    const auto p = m.RawDistribution(ctx);
    double total = 0.0;
    for (TokenId id = 0; id < p.size(); ++id) {
      total += p[id];
      if (id == v.bos()) {
        EXPECT_EQ(p[id], 0.0);
      } else {
        EXPECT_GT(p[id], 0.0);
      }
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(NGramModel, BacksOffToLongestSeenSuffix) {
  const NGramModel m = NGramModel::Train(Docs({"x a b", "y a c"}), Raw(3, 0.0));
  const Vocabulary& v = m.vocabulary();
  // "z a" never occurs, so the context falls back to "a".
  const std::vector<TokenId> unseen = {v.Id("b"), v.Id("a")};
  EXPECT_DOUBLE_EQ(m.Probability(unseen, v.Id("b")), 0.5);
  EXPECT_DOUBLE_EQ(m.Probability(unseen, v.Id("c")), 0.5);
  EXPECT_EQ(m.StateKey(unseen), std::vector<TokenId>{v.Id("a")});
  const std::vector<TokenId> seen = {v.Id("x"), v.Id("a")};
  EXPECT_DOUBLE_EQ(m.Probability(seen, v.Id("b")), 1.0);
  EXPECT_EQ(m.StateKey(seen), seen);
}

TEST(NGramModel, MarkersWrapSentences) {
  NGramOptions o;
  o.order = 2;
  o.alpha = 0.0;
  const NGramModel m = NGramModel::Train(Docs({"a b . c d ."}), o);
  const Vocabulary& v = m.vocabulary();
  const TokenId a = v.Id("a"), c = v.Id("c"), dot = v.Id(".");
  EXPECT_DOUBLE_EQ(m.Probability(std::vector<TokenId>{v.bos()}, a), 0.5);
  EXPECT_DOUBLE_EQ(m.Probability(std::vector<TokenId>{v.bos()}, c), 0.5);
  EXPECT_DOUBLE_EQ(m.Probability(std::vector<TokenId>{dot}, v.eos()), 1.0);
}

TEST(NGramModel, EosStartsAFreshSentence) {
  NGramOptions o;
  o.order = 3;
  o.alpha = 0.1;
  const NGramModel m = NGramModel::Train(Docs({"a b . c d . a c ."}), o);
  const Vocabulary& v = m.vocabulary();
  const TokenId a = v.Id("a"), b = v.Id("b"), dot = v.Id(".");
  const std::vector<TokenId> after_eos = {v.bos(), a, b, dot, v.eos()};
  EXPECT_EQ(m.RawDistribution(after_eos),
            m.RawDistribution(std::vector<TokenId>{v.bos()}));
  EXPECT_EQ(m.StateKey(after_eos), std::vector<TokenId>{v.bos()});
  const std::vector<TokenId> one_in = {a, b, dot, v.eos(), a};
  EXPECT_EQ(m.StateKey(one_in), (std::vector<TokenId>{v.bos(), a}));
  EXPECT_EQ(m.SentenceContext(std::vector<std::string>{"a", "b", ".", "c"}),
            (std::vector<TokenId>{v.bos(), a, b, dot, v.eos(), v.Id("c")}));
}

TEST(NGramModel, TrainingErrors) {
  EXPECT_EQ(CodeOf([] { NGramModel::Train({}, Raw(2, 0.1)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { NGramModel::Train(Docs({""}), Raw(2, 0.1)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { NGramModel::Train(Docs({"a"}), Raw(0, 0.1)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { NGramModel::Train(Docs({"a"}), Raw(2, -1.0)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { NGramModel::Train(Docs({"a <s> b"}), Raw(2, 0.1)); }),
            ErrorCode::kInvalidArgument);
}

TEST(NGramModel, UnknownContextToken) {
  const NGramModel m = NGramModel::Train(Docs({"a b"}), Raw(2, 0.1));
  EXPECT_EQ(CodeOf([&] { m.RawDistribution(std::vector<TokenId>{99}); }),
            ErrorCode::kUnknownToken);
}

TEST(NGramModel, SaveLoadRoundtrip) {
  const NGramModel& m = testing::BuiltinModel();
  std::stringstream buf;
  m.Save(buf);
  const NGramModel loaded = NGramModel::Load(buf);
  EXPECT_EQ(loaded.vocabulary(), m.vocabulary());
  EXPECT_EQ(loaded.order(), m.order());
  EXPECT_EQ(loaded.alpha(), m.alpha());
  EXPECT_EQ(loaded.sentence_markers(), m.sentence_markers());
  EXPECT_EQ(loaded.context_count(), m.context_count());
  for (const auto& ctx : testing::BuiltinContexts(50)) {
    EXPECT_EQ(loaded.RawDistribution(ctx), m.RawDistribution(ctx));
  }
}

TEST(NGramModel, FileHeaderLayout) {
  const NGramModel m = NGramModel::Train(Docs({"a b"}), Raw(2, 0.25));
  std::stringstream buf;
  m.Save(buf);
  const std::string bytes = buf.str();
  ASSERT_GE(bytes.size(), 19u);
  EXPECT_EQ(bytes.substr(0, 4), "NGLM");
  EXPECT_EQ(bytes[4], 1);  // version, little-endian u16
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[6], 2);  // order, little-endian u32
  double alpha = 0.0;
  std::memcpy(&alpha, bytes.data() + 10, sizeof alpha);
  EXPECT_EQ(alpha, 0.25);
}

TEST(NGramModel, LoadRejectsDamage) {
  const NGramModel m = NGramModel::Train(Docs({"a b c", "b c"}), Raw(2, 0.1));
  std::stringstream buf;
  m.Save(buf);
  const std::string good = buf.str();

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  std::stringstream in1(bad_magic);
  EXPECT_EQ(CodeOf([&] { NGramModel::Load(in1); }), ErrorCode::kFormat);

  std::string bad_version = good;
  bad_version[4] = 9;
  std::stringstream in2(bad_version);
  EXPECT_EQ(CodeOf([&] { NGramModel::Load(in2); }), ErrorCode::kFormat);

  for (std::size_t cut : {std::size_t{3}, good.size() / 2, good.size() - 1}) {
    std::stringstream in3(good.substr(0, cut));
    EXPECT_EQ(CodeOf([&] { NGramModel::Load(in3); }), ErrorCode::kFormat)
        << "cut at " << cut;
  }
  EXPECT_EQ(CodeOf([] { NGramModel::LoadFile("/nonexistent/model.nglm"); }),
            ErrorCode::kIo);
}

TEST(ToyModel, OnceIsFollowedByUponOrIEqually) {
  const ToyModel m = ToyModel::Story();
  const Vocabulary& v = m.vocabulary();
  const std::vector<TokenId> ctx = {v.bos(), v.Id("Once")};
  EXPECT_EQ(m.ExactProbability(ctx, v.Id("upon")), ToyModel::Rational(1, 2));
  EXPECT_EQ(m.ExactProbability(ctx, v.Id("I")), ToyModel::Rational(1, 2));
  const auto p = m.RawDistribution(ctx);
  double total = 0.0;
  for (double x : p) total += x;
  EXPECT_DOUBLE_EQ(total, 1.0);
}

TEST(ToyModel, RowsMustSumToOne) {
  using R = ToyModel::Rational;
  const std::vector<std::string> words = {"a", "b"};
  EXPECT_THROW(ToyModel(words, {{{}, {{"a", R(1, 2)}, {"b", R(1, 3)}}}}), Error);
  EXPECT_THROW(ToyModel(words, {{{"a"}, {{"a", R(1)}}}}), Error);
  EXPECT_THROW(ToyModel(words, {{{}, {{"zzz", R(1)}}}}), Error);
  EXPECT_NO_THROW(ToyModel(words, {{{}, {{"a", R(1, 2)}, {"b", R(1, 2)}}}}));
}

TEST(ToyModel, IidIgnoresContext) {
  using R = ToyModel::Rational;
  const ToyModel m = ToyModel::Iid({{"A", R(1, 2)}, {"B", R(1, 4)}, {"C", R(1, 4)}});
  const Vocabulary& v = m.vocabulary();
  EXPECT_EQ(m.RawDistribution(std::vector<TokenId>{v.bos()}),
            m.RawDistribution(std::vector<TokenId>{v.Id("A"), v.Id("C")}));
}

}  // namespace
}  // namespace stego
