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

#include "stego/cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "stego/key_config.h"
#include "stego/ngram_model.h"
#include "mock_lm_server.h"
#include "test_support.h"

namespace stego {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "stegocoder");
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::Run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void Spit(const fs::path& p, const std::string& data) {
  std::ofstream(p, std::ios::binary) << data;
}

// One trained model shared by every test; keys are written per test.
class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() /
                        ("stegocoder_cli_" + std::to_string(::getpid())));
    fs::create_directories(*dir_);
    const Result r = RunCli({"train-ngram", "--corpus",
                             testing::DataPath("corpus.txt"), "--order", "3",
                             "--alpha", "0.02", "--out",
                             (*dir_ / "model.nglm").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    train_output_ = new std::string(r.out);
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
    delete train_output_;
  }

  static fs::path Path(const std::string& name) { return *dir_ / name; }

  // Writes a key next to the model and returns its path.
  static std::string Key(const std::string& name, const std::string& body) {
    const fs::path p = Path(name);
    Spit(p, "model = \"model.nglm\"\n" + body);
    return p.string();
  }

  static fs::path* dir_;
  static std::string* train_output_;
};

fs::path* CliTest::dir_ = nullptr;
std::string* CliTest::train_output_ = nullptr;

constexpr const char* kArithmeticKey =
    "context = \"One day , the old king saw a bird . The bird sang .\"\n"
    "method = \"arithmetic\"\n"
    "[cover]\ntemperature = 0.9\ntop_k = 300\n";

TEST_F(CliTest, TrainReportsVocabularyAndFingerprint) {
  const NGramModel model = NGramModel::LoadFile(Path("model.nglm").string());
  EXPECT_EQ(model.vocabulary().size(),
            testing::BuiltinModel().vocabulary().size());
  EXPECT_NE(train_output_->find(model.vocabulary().FingerprintHex()),
            std::string::npos);
  EXPECT_EQ(model.vocabulary().Fingerprint(),
            testing::BuiltinModel().vocabulary().Fingerprint());
}

TEST_F(CliTest, EncodeDecodeEveryMethod) {
  const std::vector<std::string> methods = {
      "method = \"arithmetic\"\n",
      "method = \"huffman\"\nhuffman_truncation = 16\n",
      "method = \"block\"\nblock_size = 2\nblock_seed = 42\n"};
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const std::string key = Key("m" + std::to_string(i) + ".key",
                                "context = \"The cat jumped .\"\n" + methods[i]);
    for (bool ids : {false, true}) {
      std::vector<std::string> args = {"encode", "--key", key, "--message-bits",
                                       "c0ffee15"};
      if (ids) args.push_back("--ids");
      const Result enc = RunCli(args);
      ASSERT_EQ(enc.code, 0) << enc.err;
      Spit(Path("cover.txt"), enc.out);
      std::vector<std::string> dargs = {"decode", "--key", key, "--cover",
                                        Path("cover.txt").string()};
      if (ids) dargs.push_back("--ids");
      const Result dec = RunCli(dargs);
      ASSERT_EQ(dec.code, 0) << dec.err;
      EXPECT_EQ(dec.out, "c0ffee15\n") << methods[i];
    }
  }
}

TEST_F(CliTest, EncodeAcceptsBinaryAndFilesAndStdinCovers) {
  const std::string key = Key("a.key", kArithmeticKey);
  Spit(Path("msg.txt"), "0b10110\n");
  const Result enc =
      RunCli({"encode", "--key", key, "--message-bits", Path("msg.txt").string()});
  ASSERT_EQ(enc.code, 0) << enc.err;
  const Result dec = RunCli({"decode", "--key", key, "--cover", "-"}, enc.out);
  ASSERT_EQ(dec.code, 0) << dec.err;
  EXPECT_EQ(dec.out, "0b10110\n");
}

TEST_F(CliTest, CliMatchesTheLibrary) {
  const std::string key = Key("a.key", kArithmeticKey);
  const Result enc =
      RunCli({"encode", "--key", key, "--message-bits", "0123456789abcdef", "--ids"});
  ASSERT_EQ(enc.code, 0) << enc.err;
  const StegoKey k = StegoKey::Open(KeyConfig::ParseFile(key));
  const CoverText cover = k.EncodeMessage(BitMessage{HexToBits("0123456789abcdef")});
  std::ostringstream expected;
  WriteTokenIds(expected, cover.tokens);
  EXPECT_EQ(enc.out, expected.str());
  ModulationParams cover_params = k.config().cover;
  EXPECT_EQ(cover, Encode(BitMessage{HexToBits("0123456789abcdef")},
                          k.CoverContext(), k.model(), cover_params));
}

TEST_F(CliTest, HideRevealIsByteExact) {
  for (const std::string method :
       {"method = \"arithmetic\"\n", "method = \"huffman\"\n",
        "method = \"block\"\nblock_size = 3\nblock_seed = 9\n"}) {
    const std::string key =
        Key("h.key", "context = \"Once upon a time , a bird\"\n" + method);
    const std::string message = "the old king saw a small bird near the river .";
    const Result hide = RunCli({"hide", "--key", key, "--message", message});
    ASSERT_EQ(hide.code, 0) << hide.err;
    Spit(Path("hidden.txt"), hide.out);
    const Result reveal =
        RunCli({"reveal", "--key", key, "--cover", Path("hidden.txt").string()});
    ASSERT_EQ(reveal.code, 0) << reveal.err;
    EXPECT_EQ(reveal.out, message + "\n");
  }
}

TEST_F(CliTest, EvalIsDeterministic) {
  const std::string key = Key("a.key", kArithmeticKey);
  std::string contexts;
  for (std::size_t i = 0; i < 5; ++i) {
    for (const auto& w : testing::CorpusDocuments()[i]) contexts += w + " ";
    contexts += "\n";
  }
  Spit(Path("contexts.txt"), contexts);
  auto eval = [&](const std::string& csv, const std::string& threads) {
    return RunCli({"eval", "--key", key, "--contexts", Path("contexts.txt").string(),
                   "--grid", "arithmetic:0.7,1;huffman:4;block:2", "--samples", "8",
                   "--seed", "5", "--threads", threads, "--out", Path(csv).string(),
                   "--json", Path(csv + ".json").string(), "--gnuplot",
                   Path(csv + ".dat").string()});
  };
  const Result a = eval("a.csv", "1");
  ASSERT_EQ(a.code, 0) << a.err;
  const Result b = eval("b.csv", "4");
  ASSERT_EQ(b.code, 0) << b.err;
  const std::string csv = Slurp(Path("a.csv"));
  EXPECT_EQ(csv, Slurp(Path("b.csv")));
  EXPECT_EQ(csv.rfind("method,param,bits_per_word,bpw_stderr,kl_nats_per_word,"
                      "kl_stderr,n\n",
                      0),
            0u);
  EXPECT_NE(csv.find("\nblock,2,2,0,"), std::string::npos);
  EXPECT_EQ(Slurp(Path("a.csv.json")), Slurp(Path("b.csv.json")));
  EXPECT_NE(Slurp(Path("a.csv.dat")).find("# huffman"), std::string::npos);
}

TEST_F(CliTest, WrongBlockSeedIsDesync) {
  const std::string alice =
      Key("alice.key", "context = \"The cat jumped .\"\nmethod = \"block\"\n"
                       "block_size = 3\nblock_seed = 1001\n");
  const std::string bob =
      Key("bob.key", "context = \"The cat jumped .\"\nmethod = \"block\"\n"
                     "block_size = 3\nblock_seed = 1002\n");
  const Result enc = RunCli({"encode", "--key", alice, "--message-bits", "abcdef"});
  ASSERT_EQ(enc.code, 0) << enc.err;
  Spit(Path("c.txt"), enc.out);
  const Result dec = RunCli({"decode", "--key", bob, "--cover", Path("c.txt").string()});
  EXPECT_EQ(dec.code, cli::kExitDesync) << dec.out << dec.err;
  EXPECT_NE(dec.err.find("desync"), std::string::npos) << dec.err;
}

TEST_F(CliTest, ErrorsMapToExitCodes) {
  const std::string key = Key("a.key", kArithmeticKey);
  const StegoKey k = StegoKey::Open(KeyConfig::ParseFile(key));
  const std::string fp = k.model().vocabulary().FingerprintHex();
  std::string wrong = fp;
  wrong[0] = wrong[0] == '0' ? '1' : '0';
  const std::string mismatched =
      Key("fp.key", std::string(kArithmeticKey) + "vocab_fingerprint = \"" + wrong + "\"\n");
  // Top-level keys after a section would be read into the section.
  Spit(mismatched, "model = \"model.nglm\"\nvocab_fingerprint = \"" + wrong +
                       "\"\ncontext = \"The cat .\"\n");
  EXPECT_EQ(RunCli({"encode", "--key", mismatched, "--message-bits", "ab"}).code,
            cli::kExitKeyMismatch);

  EXPECT_EQ(RunCli({"encode", "--key", key, "--message-bits", "abcd",
                    "--max-tokens", "2"}).code,
            cli::kExitMessageTooLong);
  const Result full = RunCli({"encode", "--key", key, "--message-bits", "abcd",
                              "--ids"});
  ASSERT_EQ(full.code, 0) << full.err;
  const std::string first_token = full.out.substr(0, full.out.find('\n') + 1);
  EXPECT_EQ(RunCli({"decode", "--key", key, "--cover", "-", "--ids"}, first_token)
                .code,
            cli::kExitMalformed);
  EXPECT_EQ(RunCli({"decode", "--key", key, "--cover", Path("missing").string()}).code,
            cli::kExitIo);
  Spit(Path("bad.key"), "model = \"model.nglm\"\ncolour = 3\n");
  EXPECT_EQ(RunCli({"encode", "--key", Path("bad.key").string(), "--message-bits",
                    "ab"}).code,
            cli::kExitIo);
  EXPECT_EQ(RunCli({"encode", "--message-bits", "ab"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(RunCli({"hide", "--key", key, "--message", "zzzz qqqq"}).code,
            cli::kExitUsage);
}

TEST_F(CliTest, RemoteEndpointKey) {
  auto model = std::make_shared<NGramModel>(
      NGramModel::LoadFile(Path("model.nglm").string()));
  testing::MockLmServer server(model);
  const fs::path key = Path("remote.key");
  Spit(key, "endpoint = \"" + server.url() + "\"\nprobe_text = \"the cat\"\n"
            "vocab_fingerprint = \"" + model->vocabulary().FingerprintHex() +
            "\"\ncontext = \"The cat jumped .\"\n");
  const Result enc =
      RunCli({"encode", "--key", key.string(), "--message-bits", "5a5a", "--ids"});
  ASSERT_EQ(enc.code, 0) << enc.err;
  const Result dec = RunCli({"decode", "--key", key.string(), "--cover", "-", "--ids"},
                            enc.out);
  ASSERT_EQ(dec.code, 0) << dec.err;
  EXPECT_EQ(dec.out, "5a5a\n");

  Spit(key, "endpoint = \"" + server.url() + "\"\ncontext = \"a\"\n");
  EXPECT_EQ(RunCli({"encode", "--key", key.string(), "--message-bits", "5a"}).code,
            cli::kExitProtocol);
}

TEST(KeyConfig, RoundtripsThroughText) {
  KeyConfig c;
  c.model_path = "/models/m.nglm";
  c.context = "say \"hi\"\tthen\\leave";
  c.method = Method::kBlock;
  c.block_size = 4;
  c.block_seed = 0xfeedfacecafebeefull;
  c.huffman_truncation = 32;
  c.cover.temperature = 0.7000000000000001;
  c.cover.top_k = 123;
  c.cover.precision = 48;
  c.source.precision = 40;
  c.vocab_fingerprint = 0x0123456789abcdefull;
  std::istringstream in(c.ToString());
  EXPECT_EQ(KeyConfig::Parse(in), c);

  KeyConfig r;
  r.endpoint = "http://localhost:8000";
  r.timeout_ms = 2500;
  r.probe_text = "hi there";
  std::istringstream in2(r.ToString());
  EXPECT_EQ(KeyConfig::Parse(in2), r);
}

TEST(KeyConfig, ParsesCommentsUnderscoresAndSections) {
  std::istringstream in(
      "# a key\n"
      "model = \"m.nglm\"   # relative\n"
      "block_seed = 0x1_0000\n"
      "method = \"huffman\"\n"
      "[cover]\n"
      "temperature = 1.1\n"
      "top_k = 1_000\n"
      "[source]\n"
      "precision = 20\n");
  const KeyConfig c = KeyConfig::Parse(in, "/keys");
  EXPECT_EQ(c.model_path, "/keys/m.nglm");
  EXPECT_EQ(c.block_seed, 0x10000u);
  EXPECT_EQ(c.method, Method::kHuffman);
  EXPECT_DOUBLE_EQ(c.cover.temperature, 1.1);
  EXPECT_EQ(c.cover.top_k, 1000u);
  EXPECT_EQ(c.source.precision, 20);
}

TEST(KeyConfig, RejectsBadInput) {
  auto code_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      KeyConfig::Parse(in);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code_of("context = \"x\"\n"), ErrorCode::kFormat);
  EXPECT_EQ(code_of("model = \"a\"\nendpoint = \"b\"\n"), ErrorCode::kFormat);
  EXPECT_EQ(code_of("model = \"a\"\nmethod = \"magic\"\n"), ErrorCode::kFormat);
  EXPECT_EQ(code_of("model = \"a\"\nblock_size = 0\n"), ErrorCode::kFormat);
  EXPECT_EQ(code_of("model = \"a\"\nvocab_fingerprint = \"12\"\n"),
            ErrorCode::kFormat);
  EXPECT_EQ(code_of("model = \"unterminated\n"), ErrorCode::kFormat);
  EXPECT_EQ(code_of("model = \"a\"\n[nowhere]\n"), ErrorCode::kFormat);
  std::istringstream in("model = \"a\"\n\n\nbogus = 1\n");
  try {
    KeyConfig::Parse(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

}  // namespace
}  // namespace stego
