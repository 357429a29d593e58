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

#include "stego/lm_protocol.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "stego/arithmetic_codec.h"
#include "stego/baselines.h"
#include "stego/error.h"
#include "stego/source_coding.h"
#include "stego/toy_model.h"
#include "mock_lm_server.h"
#include "test_support.h"

namespace stego {
namespace {

using std::chrono::milliseconds;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

std::shared_ptr<const LanguageModel> Builtin() {
  return std::shared_ptr<const LanguageModel>(&testing::BuiltinModel(),
                                              [](const LanguageModel*) {});
}

// The built-in vocabulary cannot tokenize "hello world".
SessionOptions WordProbes() {
  SessionOptions options;
  options.probe_strings = {"the king saw a bird .", ""};
  return options;
}

TEST(LmClient, VocabMirrorsTheServedModel) {
  testing::MockLmServer server(Builtin());
  LmClient client(server.url(), milliseconds(5000));
  const VocabTable a = client.FetchVocab();
  const VocabTable b = client.FetchVocab();
  const Vocabulary& local = testing::BuiltinModel().vocabulary();
  EXPECT_EQ(a.vocabulary.size(), local.size());
  EXPECT_EQ(a.vocabulary.bos(), local.bos());
  EXPECT_EQ(a.vocabulary.eos(), local.eos());
  EXPECT_EQ(a.max_context, 256u);
  EXPECT_EQ(a.fingerprint, local.Fingerprint());
  EXPECT_EQ(a.fingerprint, b.fingerprint);
}

TEST(LmClient, EmptyVocabularyIsAProtocolError) {
  testing::MockServerOptions options;
  options.empty_vocab = true;
  testing::MockLmServer server(Builtin(), options);
  LmClient client(server.url(), milliseconds(5000));
  EXPECT_EQ(CodeOf([&] { client.FetchVocab(); }), ErrorCode::kProtocol);
}

TEST(LmClient, DistributionIsBitIdenticalToTheLocalModel) {
  testing::MockLmServer server(Builtin());
  LmClient client(server.url(), milliseconds(5000));
  const NGramModel& model = testing::BuiltinModel();
  for (const auto& ctx : testing::BuiltinContexts(5)) {
    EXPECT_EQ(client.FetchDistribution(ctx, model.vocabulary().size(), 256),
              model.RawDistribution(ctx));
  }
}

TEST(LmClient, UnnormalizedReplyIsAProtocolError) {
  testing::MockServerOptions options;
  options.scale = 0.98;
  testing::MockLmServer server(Builtin(), options);
  LmClient client(server.url(), milliseconds(5000));
  const std::vector<TokenId> ctx = {0};
  EXPECT_EQ(CodeOf([&] {
              client.FetchDistribution(ctx, testing::BuiltinModel().vocabulary().size(), 256);
            }),
            ErrorCode::kProtocol);
}

TEST(LmClient, TooLongContextFailsWithoutTruncation) {
  testing::MockServerOptions options;
  options.max_context = 4;
  testing::MockLmServer server(Builtin(), options);
  LmClient client(server.url(), milliseconds(5000));
  const std::size_t v = testing::BuiltinModel().vocabulary().size();
  const std::vector<TokenId> ctx = {0, 5, 6, 7, 8};
  // Client-side check against the advertised limit.
  EXPECT_EQ(CodeOf([&] { client.FetchDistribution(ctx, v, 4); }),
            ErrorCode::kContextTooLong);
  EXPECT_EQ(server.distribution_calls(), 0u);
  // A server that refuses on its own is reported the same way.
  EXPECT_EQ(CodeOf([&] { client.FetchDistribution(ctx, v, 100); }),
            ErrorCode::kContextTooLong);
}

TEST(LmClient, SlowServerTimesOut) {
  testing::MockServerOptions options;
  options.delay = milliseconds(600);
  testing::MockLmServer server(Builtin(), options);
  LmClient client(server.url(), milliseconds(100));
  const std::vector<TokenId> ctx = {0};
  EXPECT_EQ(CodeOf([&] {
              client.FetchDistribution(ctx, testing::BuiltinModel().vocabulary().size(), 256);
            }),
            ErrorCode::kTimeout);
}

TEST(LmClient, UnreachableServerIsAnIoError) {
  std::string url;
  {
    testing::MockLmServer server(Builtin());
    url = server.url();
  }
  LmClient client(url, milliseconds(500));
  EXPECT_EQ(CodeOf([&] { client.FetchVocab(); }), ErrorCode::kIo);
}

TEST(LmClient, SparseReplySpreadsTheRemainder) {
  testing::MockServerOptions options;
  options.sparse_top = 10;
  testing::MockLmServer server(Builtin(), options);
  LmClient client(server.url(), milliseconds(5000));
  const NGramModel& model = testing::BuiltinModel();
  const auto ctx = testing::BuiltinContexts(1)[0];
  const auto remote = client.FetchDistribution(ctx, model.vocabulary().size(), 256);
  const auto local = model.RawDistribution(ctx);
  const RankedDistribution top = RankTopK(local, 10);
  double rest = 1.0;
  for (std::size_t i = 0; i < top.ids.size(); ++i) {
    EXPECT_EQ(remote[top.ids[i]], local[top.ids[i]]);
    rest -= local[top.ids[i]];
  }
  const double share = rest / double(local.size() - 10);
  for (TokenId id = 0; id < local.size(); ++id) {
    if (std::find(top.ids.begin(), top.ids.end(), id) == top.ids.end()) {
      EXPECT_NEAR(remote[id], share, 1e-12);
    }
  }
}

TEST(LmClient, TokenizerEndpoints) {
  testing::MockLmServer server(Builtin());
  LmClient client(server.url(), milliseconds(5000));
  const Vocabulary& v = testing::BuiltinModel().vocabulary();
  const auto ids = client.Tokenize("the king");
  EXPECT_EQ(ids, (std::vector<TokenId>{v.Id("the"), v.Id("king")}));
  EXPECT_EQ(client.Detokenize(ids), "the king");
  EXPECT_TRUE(client.Tokenize("").empty());
  EXPECT_EQ(client.Detokenize(std::vector<TokenId>{}), "");
  // The server rejects ids it does not know.
  EXPECT_EQ(CodeOf([&] { client.Detokenize(std::vector<TokenId>{99999}); }),
            ErrorCode::kProtocol);
}

TEST(RemoteModel, ConnectsAndChecksFingerprint) {
  testing::MockLmServer server(Builtin());
  SessionOptions options = WordProbes();
  options.expected_fingerprint = testing::BuiltinModel().vocabulary().Fingerprint();
  auto remote = RemoteModel::Connect(server.url(), milliseconds(5000), options);
  EXPECT_EQ(remote->endpoint().fingerprint, *options.expected_fingerprint);
  EXPECT_EQ(remote->endpoint().max_context, 256u);
  // Five contexts, ten calls each.
  EXPECT_EQ(server.distribution_calls(), 50u);

  // A different model behind the same key.
  auto other = std::make_shared<testing::HashedModel>(50, 1, 3, 1.0);
  testing::MockLmServer swapped(other);
  EXPECT_EQ(CodeOf([&] {
              RemoteModel::Connect(swapped.url(), milliseconds(5000), options);
            }),
            ErrorCode::kKeyMismatch);
}

TEST(RemoteModel, NondeterministicServerIsRejected) {
  testing::MockServerOptions server_options;
  server_options.nondeterministic = true;
  testing::MockLmServer server(Builtin(), server_options);
  EXPECT_EQ(CodeOf([&] {
              RemoteModel::Connect(server.url(), milliseconds(5000), WordProbes());
            }),
            ErrorCode::kProtocol);
}

TEST(RemoteModel, TokenizerProbeMustRoundtrip) {
  testing::MockLmServer server(Builtin());
  // Default probe "hello world" is outside the word vocabulary.
  EXPECT_EQ(CodeOf([&] { RemoteModel::Connect(server.url(), milliseconds(5000)); }),
            ErrorCode::kProtocol);
  auto remote = RemoteModel::Connect(server.url(), milliseconds(5000), WordProbes());
  EXPECT_EQ(CodeOf([&] { remote->Detokenize(std::vector<TokenId>{100000}); }),
            ErrorCode::kUnknownToken);
  EXPECT_EQ(remote->Detokenize(remote->Tokenize("a bird")), "a bird");
}

TEST(RemoteModel, HelloWorldProbeOnAServerThatKnowsTheWords) {
  const std::vector<std::string> words = {"hello", "world"};
  auto model = std::make_shared<ToyModel>(ToyModel::Iid(
      {{"hello", ToyModel::Rational(1, 2)}, {"world", ToyModel::Rational(1, 4)},
       {"</s>", ToyModel::Rational(1, 4)}}));
  testing::MockLmServer server(model);
  EXPECT_NO_THROW(RemoteModel::Connect(server.url(), milliseconds(5000)));
}

TEST(RemoteModel, CodecOutputMatchesInProcess) {
  const NGramModel& model = testing::BuiltinModel();
  testing::MockLmServer server(Builtin());
  auto remote = RemoteModel::Connect(server.url(), milliseconds(5000), WordProbes());
  const auto contexts = testing::BuiltinContexts(4);
  ModulationParams params;
  params.temperature = 0.9;
  params.top_k = 100;
  std::mt19937_64 rng(6);
  for (int i = 0; i < 4; ++i) {
    BitMessage m;
    m.payload.resize(40 + i * 30);
    for (auto& b : m.payload) b = rng() & 1;
    const CoverText local = Encode(m, contexts[i], model, params);
    const CoverText over_wire = Encode(m, contexts[i], *remote, params);
    ASSERT_EQ(local, over_wire);
    EXPECT_EQ(Decode(over_wire, *remote, params), m);

    const CoverText h = HuffmanEncode(m, contexts[i], *remote, 8);
    EXPECT_EQ(h, HuffmanEncode(m, contexts[i], model, 8));
    const BlockKey key(2, 77, model.vocabulary().size());
    const CoverText b = BlockEncode(m, contexts[i], *remote, key);
    EXPECT_EQ(b, BlockEncode(m, contexts[i], model, key));
    EXPECT_EQ(BlockDecode(b, *remote, key), m);
  }
  const TextMessage text =
      TextMessage::FromText(model.vocabulary(), "the old king saw a bird .");
  const ModulationParams source = SourceCodingParams();
  const CoverText c = Hide(text, contexts[0], *remote, source, params);
  EXPECT_EQ(c, Hide(text, contexts[0], model, source, params));
  EXPECT_EQ(Reveal(c, model, source, params), text);
}

TEST(RemoteModel, SparseRepliesGiveTheSameTopKCover) {
  const NGramModel& model = testing::BuiltinModel();
  testing::MockServerOptions options;
  options.sparse_top = 60;
  testing::MockLmServer server(Builtin(), options);
  auto remote = RemoteModel::Connect(server.url(), milliseconds(5000), WordProbes());
  ModulationParams params;
  params.top_k = 30;
  const auto ctx = testing::BuiltinContexts(2)[1];
  const BitMessage m{StringToBits("1011001110001111000010101100")};
  const CoverText a = Encode(m, ctx, *remote, params);
  EXPECT_EQ(a, Encode(m, ctx, model, params));
  EXPECT_EQ(Decode(a, model, params), m);
}

}  // namespace
}  // namespace stego
