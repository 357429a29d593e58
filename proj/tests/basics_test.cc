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

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stego/bits.h"
#include "stego/corpus.h"
#include "stego/error.h"
#include "stego/vocabulary.h"

namespace stego {
namespace {

TEST(Bits, FramingPrependsBigEndianLength) {
  const BitMessage m{{1, 0, 1}};
  const Bits framed = m.Framed();
  ASSERT_EQ(framed.size(), 35u);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(framed[i], 0) << i;
  EXPECT_EQ(framed[30], 1);
  EXPECT_EQ(framed[31], 1);
  EXPECT_EQ(Bits(framed.begin() + 32, framed.end()), m.payload);
  EXPECT_EQ(BitMessage::Unframe(framed), m);
  EXPECT_EQ(BitMessage::FramedLengthFromPrefix(framed), 35u);
  EXPECT_EQ(BitMessage::FramedLengthFromPrefix(
                std::span<const std::uint8_t>(framed).first(31)),
            0u);
}

TEST(Bits, UnframeIgnoresTrailingBitsAndRejectsShortStreams) {
  Bits framed = BitMessage{{1, 1}}.Framed();
  framed.push_back(0);
  framed.push_back(1);
  EXPECT_EQ(BitMessage::Unframe(framed).payload, (Bits{1, 1}));
  framed.resize(33);
  try {
    BitMessage::Unframe(framed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncatedCover);
  }
}

TEST(Bits, EmptyPayloadFrames) {
  const BitMessage empty;
  EXPECT_EQ(empty.Framed(), Bits(32, 0));
  EXPECT_EQ(BitMessage::Unframe(Bits(32, 0)), empty);
}

TEST(Bits, PadAlternatesStartingWithOne) {
  const Bits m = {0, 0};
  EXPECT_EQ(BitOrPad(m, 1), 0);
  EXPECT_EQ(BitOrPad(m, 2), 1);
  EXPECT_EQ(BitOrPad(m, 3), 0);
  EXPECT_EQ(BitOrPad(m, 4), 1);
}

TEST(Bits, PackUnpackAndText) {
  std::mt19937 rng(5);
  for (int n = 0; n < 70; ++n) {
    Bits b(n);
    for (auto& x : b) x = rng() & 1;
    const auto bytes = PackBits(b);
    EXPECT_EQ(bytes.size(), (b.size() + 7) / 8);
    EXPECT_EQ(UnpackBits(bytes, b.size()), b);
    EXPECT_EQ(StringToBits(BitsToString(b)), b);
    if (n % 4 == 0) EXPECT_EQ(HexToBits(BitsToHex(b)), b);
  }
  EXPECT_EQ(PackBits(Bits{1, 0, 1}), (std::vector<std::uint8_t>{0xa0}));
  EXPECT_EQ(BitsToHex(HexToBits("0xDe ad")), "dead");
  EXPECT_THROW(HexToBits("xyz"), Error);
  EXPECT_THROW(StringToBits("012"), Error);
}

TEST(Vocabulary, LookupAndTokenize) {
  const std::vector<std::string> words = {"hello", "world"};
  const Vocabulary v = Vocabulary::WithMarkers(words);
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(v.surface(v.bos()), "<s>");
  EXPECT_EQ(v.surface(v.eos()), "</s>");
  EXPECT_EQ(v.Tokenize("  hello world\n"),
            (std::vector<TokenId>{v.Id("hello"), v.Id("world")}));
  EXPECT_EQ(v.Detokenize(v.Tokenize("hello world")), "hello world");
  EXPECT_TRUE(v.Tokenize("").empty());
  EXPECT_FALSE(v.Find("nope").has_value());
  try {
    v.Tokenize("hello there");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownToken);
  }
  EXPECT_THROW(v.surface(4), Error);
}

TEST(Vocabulary, RejectsDuplicatesAndBadMarkers) {
  EXPECT_THROW(Vocabulary({"a", "a"}, 0, 1), Error);
  EXPECT_THROW(Vocabulary({"a", "b"}, 0, 0), Error);
  EXPECT_THROW(Vocabulary({"a", "b"}, 0, 2), Error);
}

TEST(Vocabulary, FingerprintTracksContent) {
  const Vocabulary a({"x", "y", "z"}, 0, 1);
  const Vocabulary b({"x", "y", "z"}, 0, 1);
  const Vocabulary c({"x", "y", "w"}, 0, 1);
  const Vocabulary d({"x", "y", "z"}, 1, 0);
  const Vocabulary e({"xy", "", "z"}, 0, 1);
  EXPECT_EQ(a.Fingerprint(), b.Fingerprint());
  EXPECT_NE(a.Fingerprint(), c.Fingerprint());
  EXPECT_NE(a.Fingerprint(), d.Fingerprint());
  EXPECT_NE(a.Fingerprint(), e.Fingerprint());
  EXPECT_EQ(a.FingerprintHex().size(), 16u);
}

TEST(Corpus, DocumentsAndSentences) {
  std::istringstream in("A b . C d ! e\n\n  \nf g ?\n");
  const auto docs = ReadDocuments(in);
  ASSERT_EQ(docs.size(), 2u);
  const auto sentences = SplitSentences(docs[0]);
  ASSERT_EQ(sentences.size(), 3u);
  EXPECT_EQ(sentences[0], (Document{"A", "b", "."}));
  EXPECT_EQ(sentences[2], (Document{"e"}));
  EXPECT_EQ(LeadContext(docs[0], 2), (Document{"A", "b", ".", "C", "d", "!"}));
  EXPECT_EQ(LeadContext(docs[1], 3), docs[1]);
}

TEST(Errors, EveryCodeHasAName) {
  for (int c = 0; c <= static_cast<int>(ErrorCode::kFormat); ++c) {
    EXPECT_STRNE(ErrorCodeName(static_cast<ErrorCode>(c)), "");
  }
}

}  // namespace
}  // namespace stego
