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

#include "stego/key_config.h"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>
#include <utility>

#include "stego/baselines.h"
#include "stego/error.h"
#include "stego/ngram_model.h"
#include "stego/source_coding.h"

namespace stego {

namespace {

[[noreturn]] void FormatError(int line, const std::string& what) {
  throw Error(ErrorCode::kFormat,
              "key file line " + std::to_string(line) + ": " + what);
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Value {
  bool quoted = false;
  std::string text;
};

// Parses the right-hand side of `key = value`, dropping a trailing comment.
Value ParseValue(const std::string& raw, int line) {
  Value v;
  std::string s = Trim(raw);
  if (!s.empty() && s.front() == '"') {
    v.quoted = true;
    std::size_t i = 1;
    for (; i < s.size() && s[i] != '"'; ++i) {
      if (s[i] != '\\') {
        v.text += s[i];
        continue;
      }
      if (++i == s.size()) break;
      switch (s[i]) {
        case 'n': v.text += '\n'; break;
        case 't': v.text += '\t'; break;
        case '"': v.text += '"'; break;
        case '\\': v.text += '\\'; break;
        default: FormatError(line, "unknown escape \\" + std::string(1, s[i]));
      }
    }
    if (i >= s.size()) FormatError(line, "unterminated string");
    const std::string rest = Trim(s.substr(i + 1));
    if (!rest.empty() && rest.front() != '#') {
      FormatError(line, "unexpected text after string");
    }
    return v;
  }
  const auto hash = s.find('#');
  v.text = Trim(hash == std::string::npos ? s : s.substr(0, hash));
  if (v.text.empty()) FormatError(line, "missing value");
  return v;
}

std::uint64_t ParseUnsigned(const Value& v, int line) {
  if (v.quoted || v.text.empty() || v.text.front() == '-' ||
      v.text.front() == '+') {
    FormatError(line, "expected a non-negative integer");
  }
  std::string digits;
  for (char c : v.text) {
    if (c != '_') digits += c;
  }
  errno = 0;
  char* end = nullptr;
  const std::uint64_t n = std::strtoull(digits.c_str(), &end, 0);
  if (errno != 0 || end != digits.c_str() + digits.size()) {
    FormatError(line, "expected a non-negative integer, got '" + v.text + "'");
  }
  return n;
}

double ParseDouble(const Value& v, int line) {
  if (v.quoted) FormatError(line, "expected a number");
  char* end = nullptr;
  const double d = std::strtod(v.text.c_str(), &end);
  if (end != v.text.c_str() + v.text.size()) {
    FormatError(line, "expected a number, got '" + v.text + "'");
  }
  return d;
}

std::string ParseString(const Value& v, int line) {
  if (!v.quoted) FormatError(line, "expected a quoted string");
  return v.text;
}

void SetModulation(ModulationParams& params, const std::string& key,
                   const Value& v, int line) {
  if (key == "temperature") {
    params.temperature = ParseDouble(v, line);
    if (!(params.temperature > 0.0)) FormatError(line, "temperature must be > 0");
  } else if (key == "top_k") {
    params.top_k = static_cast<std::uint32_t>(ParseUnsigned(v, line));
  } else if (key == "precision") {
    const auto p = ParseUnsigned(v, line);
    if (p < ModulationParams::kMinPrecision ||
        p > ModulationParams::kMaxPrecision) {
      FormatError(line, "precision must be within [16, 62]");
    }
    params.precision = static_cast<int>(p);
  } else {
    FormatError(line, "unknown key '" + key + "'");
  }
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + '"';
}

std::string Number(double d) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", d);
  return buf;
}

std::string FingerprintText(std::uint64_t fp) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fp));
  return buf;
}

}  // namespace

KeyConfig KeyConfig::Parse(std::istream& in, const std::string& base_dir) {
  KeyConfig config;
  std::string section;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = Trim(raw);
    if (s.empty() || s.front() == '#') continue;
    if (s.front() == '[') {
      const auto close = s.find(']');
      if (close == std::string::npos) FormatError(line, "unterminated section");
      section = Trim(s.substr(1, close - 1));
      if (section != "cover" && section != "source") {
        FormatError(line, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) FormatError(line, "expected 'key = value'");
    const std::string key = Trim(s.substr(0, eq));
    const Value v = ParseValue(s.substr(eq + 1), line);
    if (section == "cover") {
      SetModulation(config.cover, key, v, line);
    } else if (section == "source") {
      SetModulation(config.source, key, v, line);
    } else if (key == "model") {
      config.model_path = ParseString(v, line);
    } else if (key == "endpoint") {
      config.endpoint = ParseString(v, line);
    } else if (key == "timeout_ms") {
      config.timeout_ms = static_cast<std::uint32_t>(ParseUnsigned(v, line));
    } else if (key == "vocab_fingerprint") {
      const std::string hex = ParseString(v, line);
      char* end = nullptr;
      const auto fp = std::strtoull(hex.c_str(), &end, 16);
      if (hex.size() != 16 || end != hex.c_str() + hex.size()) {
        FormatError(line, "vocab_fingerprint must be 16 hex digits");
      }
      config.vocab_fingerprint = fp;
    } else if (key == "probe_text") {
      config.probe_text = ParseString(v, line);
    } else if (key == "context") {
      config.context = ParseString(v, line);
    } else if (key == "method") {
      try {
        config.method = ParseMethod(ParseString(v, line));
      } catch (const Error& e) {
        FormatError(line, e.what());
      }
    } else if (key == "huffman_truncation") {
      config.huffman_truncation = ParseUnsigned(v, line);
      if (config.huffman_truncation < 2) {
        FormatError(line, "huffman_truncation must be at least 2");
      }
    } else if (key == "block_size") {
      const auto b = ParseUnsigned(v, line);
      if (b < 1 || b > 16) FormatError(line, "block_size must be within [1, 16]");
      config.block_size = static_cast<int>(b);
    } else if (key == "block_seed") {
      config.block_seed = ParseUnsigned(v, line);
    } else {
      FormatError(line, "unknown key '" + key + "'");
    }
  }
  if (config.model_path.empty() == config.endpoint.empty()) {
    throw Error(ErrorCode::kFormat,
                "key file must set exactly one of 'model' and 'endpoint'");
  }
  if (!config.model_path.empty() && !base_dir.empty()) {
    const std::filesystem::path p(config.model_path);
    if (p.is_relative()) {
      config.model_path = (std::filesystem::path(base_dir) / p).string();
    }
  }
  return config;
}

KeyConfig KeyConfig::ParseFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open key file '" + path + "'");
  return Parse(in, std::filesystem::path(path).parent_path().string());
}

std::string KeyConfig::ToString() const {
  std::ostringstream out;
  if (!model_path.empty()) out << "model = " << Quote(model_path) << '\n';
  if (!endpoint.empty()) {
    out << "endpoint = " << Quote(endpoint) << '\n';
    out << "timeout_ms = " << timeout_ms << '\n';
    out << "probe_text = " << Quote(probe_text) << '\n';
  }
  if (vocab_fingerprint) {
    out << "vocab_fingerprint = " << Quote(FingerprintText(*vocab_fingerprint))
        << '\n';
  }
  out << "context = " << Quote(context) << '\n'
      << "method = " << Quote(MethodName(method)) << '\n'
      << "huffman_truncation = " << huffman_truncation << '\n'
      << "block_size = " << block_size << '\n'
      << "block_seed = " << block_seed << '\n';
  for (const auto& [name, params] :
       {std::pair<const char*, const ModulationParams*>{"cover", &cover},
        {"source", &source}}) {
    out << "\n[" << name << "]\n"
        << "temperature = " << Number(params->temperature) << '\n'
        << "top_k = " << params->top_k << '\n'
        << "precision = " << params->precision << '\n';
  }
  return out.str();
}

StegoKey StegoKey::Open(const KeyConfig& config) {
  if (!config.endpoint.empty()) {
    SessionOptions options;
    options.expected_fingerprint = config.vocab_fingerprint;
    options.probe_strings = {config.probe_text, ""};
    std::shared_ptr<const LanguageModel> model = RemoteModel::Connect(
        config.endpoint, std::chrono::milliseconds(config.timeout_ms), options);
    return StegoKey(config, std::move(model));
  }
  return StegoKey(config, std::make_shared<NGramModel>(
                              NGramModel::LoadFile(config.model_path)));
}

StegoKey::StegoKey(const KeyConfig& config,
                   std::shared_ptr<const LanguageModel> model)
    : config_(config), model_(std::move(model)) {
  remote_ = dynamic_cast<const RemoteModel*>(model_.get());
  const Vocabulary& vocab = model_->vocabulary();
  if (config_.vocab_fingerprint &&
      *config_.vocab_fingerprint != vocab.Fingerprint()) {
    throw Error(ErrorCode::kKeyMismatch,
                "model vocabulary fingerprint " + vocab.FingerprintHex() +
                    " does not match the key");
  }
  config_.cover.Validate(vocab.size());
  config_.source.Validate(vocab.size());
}

std::vector<TokenId> StegoKey::Tokenize(const std::string& text) const {
  if (remote_ != nullptr) return remote_->Tokenize(text);
  return model_->vocabulary().Tokenize(text);
}

std::string StegoKey::Detokenize(std::span<const TokenId> ids) const {
  if (remote_ != nullptr) return remote_->Detokenize(ids);
  return model_->vocabulary().Detokenize(ids);
}

std::vector<TokenId> StegoKey::ContextFor(const std::string& text) const {
  if (const auto* ngram = dynamic_cast<const NGramModel*>(model_.get())) {
    std::istringstream in(text);
    const std::vector<std::string> words{
        std::istream_iterator<std::string>(in), {}};
    return ngram->SentenceContext(words);
  }
  std::vector<TokenId> context = {model_->vocabulary().bos()};
  const std::vector<TokenId> words = Tokenize(text);
  context.insert(context.end(), words.begin(), words.end());
  return context;
}

std::vector<TokenId> StegoKey::CoverContext() const {
  return ContextFor(config_.context);
}

CoverText StegoKey::EncodeMessage(const BitMessage& message,
                                  std::size_t max_tokens) const {
  const std::vector<TokenId> context = CoverContext();
  switch (config_.method) {
    case Method::kArithmetic:
      return Encode(message, context, *model_, config_.cover, max_tokens);
    case Method::kHuffman:
      return HuffmanEncode(message, context, *model_,
                           config_.huffman_truncation, max_tokens);
    case Method::kBlock:
      return BlockEncode(message, context, *model_,
                         BlockKey(config_.block_size, config_.block_seed,
                                  model_->vocabulary().size()),
                         max_tokens);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method");
}

BitMessage StegoKey::DecodeCover(std::span<const TokenId> cover_tokens) const {
  const CoverText cover{CoverContext(),
                        {cover_tokens.begin(), cover_tokens.end()}};
  switch (config_.method) {
    case Method::kArithmetic:
      return Decode(cover, *model_, config_.cover);
    case Method::kHuffman:
      return HuffmanDecode(cover, *model_, config_.huffman_truncation);
    case Method::kBlock:
      return BlockDecode(cover, *model_,
                         BlockKey(config_.block_size, config_.block_seed,
                                  model_->vocabulary().size()));
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method");
}

CoverText StegoKey::Hide(const std::string& text,
                         std::size_t max_tokens) const {
  const Vocabulary& vocab = model_->vocabulary();
  TextMessage message{Tokenize(text)};
  for (TokenId id : message.tokens) {
    if (id == vocab.bos() || id == vocab.eos()) {
      throw Error(ErrorCode::kUnsupportedToken,
                  "message text contains a reserved marker");
    }
  }
  message.tokens.push_back(vocab.eos());
  return EncodeMessage(BitMessage{TextToBits(message, *model_, config_.source)},
                       max_tokens);
}

std::string StegoKey::Reveal(std::span<const TokenId> cover_tokens) const {
  const BitMessage bits = DecodeCover(cover_tokens);
  TextMessage message = BitsToText(bits.payload, *model_, config_.source);
  message.tokens.pop_back();
  return Detokenize(message.tokens);
}

}  // namespace stego
