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

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "stego/arithmetic_codec.h"
#include "stego/bits.h"
#include "stego/corpus.h"
#include "stego/key_config.h"
#include "stego/metrics.h"
#include "stego/ngram_model.h"

namespace stego::cli {

namespace {

std::string ReadAll(const std::string& path, std::istream& in) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(in), {}};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(file), {}};
}

void WriteFile(const std::string& path, const std::string& data) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << data) || !file.flush()) {
    throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  }
}

// "0b0110..." is binary; anything else is hex. Whitespace is ignored.
Bits ParseMessageBits(const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  }
  if (compact.rfind("0b", 0) == 0) return StringToBits(compact.substr(2));
  return HexToBits(compact);
}

std::string FormatMessageBits(const Bits& bits) {
  if (bits.size() % 4 == 0) return BitsToHex(bits);
  return "0b" + BitsToString(bits);
}

std::vector<TokenId> ReadCover(const StegoKey& key, const std::string& path,
                               bool ids, std::istream& in) {
  const std::string data = ReadAll(path, in);
  if (ids) {
    std::istringstream stream(data);
    return ReadTokenIds(stream);
  }
  return key.Tokenize(data);
}

void WriteCover(const StegoKey& key, const CoverText& cover, bool ids,
                std::ostream& out) {
  if (ids) {
    WriteTokenIds(out, cover.tokens);
  } else {
    out << key.Detokenize(cover.tokens) << '\n';
  }
}

struct Options {
  std::string key;
  std::string corpus;
  std::string model_out;
  int order = 3;
  double alpha = 0.02;
  bool no_markers = false;
  std::string message_bits;
  std::string message;
  std::string cover;
  bool ids = false;
  std::size_t max_tokens = 0;
  std::string contexts;
  std::string grid = "default";
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  std::string csv_out;
  std::string json_out;
  std::string gnuplot_out;
  std::size_t sweep_bits = 120;
  std::size_t lead_sentences = 3;
  std::uint32_t top_k = 300;
  unsigned threads = 0;
};

int TrainNgram(const Options& o, std::ostream& out) {
  NGramOptions options;
  options.order = o.order;
  options.alpha = o.alpha;
  options.sentence_markers = !o.no_markers;
  const NGramModel model =
      NGramModel::Train(ReadDocumentsFile(o.corpus), options);
  model.SaveFile(o.model_out);
  out << "vocabulary " << model.vocabulary().size() << " tokens, fingerprint "
      << model.vocabulary().FingerprintHex() << '\n';
  return kExitOk;
}

int Eval(const Options& o, const StegoKey& key, std::istream& in,
         std::ostream& out) {
  std::vector<std::vector<TokenId>> contexts;
  std::istringstream lines(ReadAll(o.contexts, in));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream words_in(line);
    Document words{std::istream_iterator<std::string>(words_in), {}};
    if (o.lead_sentences > 0) words = LeadContext(words, o.lead_sentences);
    std::string text;
    for (const auto& w : words) text += (text.empty() ? "" : " ") + w;
    contexts.push_back(key.ContextFor(text));
  }
  SweepConfig config;
  config.points = ParseGrid(o.grid);
  config.n_samples = o.samples;
  config.seed = o.seed;
  config.message_bits = o.sweep_bits;
  config.arithmetic_top_k = o.top_k;
  config.precision = key.config().cover.precision;
  config.block_seed = key.config().block_seed;
  config.threads = o.threads;
  const std::vector<SweepPoint> points =
      RunSweep(key.model(), contexts, config);

  std::ostringstream csv;
  WriteSweepCsv(csv, points);
  if (o.csv_out.empty() || o.csv_out == "-") {
    out << csv.str();
  } else {
    WriteFile(o.csv_out, csv.str());
  }
  if (!o.json_out.empty()) {
    std::ostringstream json;
    WriteSweepJson(json, points);
    WriteFile(o.json_out, json.str());
  }
  if (!o.gnuplot_out.empty()) {
    std::ostringstream plot;
    WriteSweepGnuplot(plot, points);
    WriteFile(o.gnuplot_out, plot.str());
  }
  return kExitOk;
}

}  // namespace

ExitCode ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kKeyMismatch:
    case ErrorCode::kKeyError:
      return kExitKeyMismatch;
    case ErrorCode::kDesync:
      return kExitDesync;
    case ErrorCode::kMessageTooLong:
      return kExitMessageTooLong;
    case ErrorCode::kProtocol:
    case ErrorCode::kTimeout:
    case ErrorCode::kContextTooLong:
      return kExitProtocol;
    case ErrorCode::kMalformedStream:
    case ErrorCode::kTruncatedCover:
      return kExitMalformed;
    case ErrorCode::kIo:
    case ErrorCode::kFormat:
      return kExitIo;
    default:
      return kExitUsage;
  }
}

int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Hide bits in language-model text and get them back."};
  app.name(args.empty() ? "stegocoder" : args[0]);
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train-ngram", "Train an n-gram model");
  train->add_option("--corpus", o.corpus, "One document per line")
      ->required();
  train->add_option("--order", o.order, "Model order")->capture_default_str();
  train->add_option("--alpha", o.alpha, "Add-alpha smoothing")
      ->capture_default_str();
  train->add_flag("--no-markers", o.no_markers,
                  "Do not wrap sentences in <s> ... </s>");
  train->add_option("--out", o.model_out, "Output model file")->required();

  auto* encode = app.add_subcommand("encode", "Hide message bits");
  auto* decode = app.add_subcommand("decode", "Recover message bits");
  auto* hide = app.add_subcommand("hide", "Compress and hide a text message");
  auto* reveal = app.add_subcommand("reveal", "Recover a hidden text message");
  auto* eval = app.add_subcommand("eval", "Bits/word and KL sweep");
  for (auto* sub : {encode, decode, hide, reveal, eval}) {
    sub->add_option("--key", o.key, "Key file")->required();
  }
  encode->add_option("--message-bits", o.message_bits,
                     "File or literal: hex, or 0b followed by bits")
      ->required();
  hide->add_option("--message", o.message, "Message text")->required();
  for (auto* sub : {encode, hide}) {
    sub->add_option("--max-tokens", o.max_tokens, "Cover length limit");
  }
  for (auto* sub : {decode, reveal}) {
    sub->add_option("--cover", o.cover, "Cover file ('-' for stdin)")
        ->required();
  }
  for (auto* sub : {encode, decode, hide, reveal}) {
    sub->add_flag("--ids", o.ids, "Cover as token ids, one per line");
  }
  eval->add_option("--contexts", o.contexts, "One context per line")
      ->required();
  eval->add_option("--grid", o.grid,
                   "e.g. arithmetic:0.4,1.0;huffman:2,8;block:1,3")
      ->capture_default_str();
  eval->add_option("--samples", o.samples, "Messages per grid point")
      ->capture_default_str();
  eval->add_option("--seed", o.seed, "Global seed")->capture_default_str();
  eval->add_option("--out", o.csv_out, "CSV output ('-' for stdout)");
  eval->add_option("--json", o.json_out, "JSON output");
  eval->add_option("--gnuplot", o.gnuplot_out, "gnuplot data output");
  eval->add_option("--message-length", o.sweep_bits, "Bits per message")
      ->capture_default_str();
  eval->add_option("--top-k", o.top_k, "k for arithmetic points")
      ->capture_default_str();
  eval->add_option("--lead-sentences", o.lead_sentences,
                   "Sentences of each line used as context (0 = all)")
      ->capture_default_str();
  eval->add_option("--threads", o.threads, "Worker threads (0 = all cores)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (train->parsed()) return TrainNgram(o, out);
    const StegoKey key = StegoKey::Open(KeyConfig::ParseFile(o.key));
    if (encode->parsed()) {
      std::string source = o.message_bits;
      if (std::filesystem::is_regular_file(source)) source = ReadAll(source, in);
      const BitMessage message{ParseMessageBits(source)};
      WriteCover(key, key.EncodeMessage(message, o.max_tokens), o.ids, out);
    } else if (decode->parsed()) {
      const BitMessage message =
          key.DecodeCover(ReadCover(key, o.cover, o.ids, in));
      out << FormatMessageBits(message.payload) << '\n';
    } else if (hide->parsed()) {
      WriteCover(key, key.Hide(o.message, o.max_tokens), o.ids, out);
    } else if (reveal->parsed()) {
      out << key.Reveal(ReadCover(key, o.cover, o.ids, in)) << '\n';
    } else if (eval->parsed()) {
      return Eval(o, key, in, out);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << ErrorCodeName(e.code()) << "): " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace stego::cli
