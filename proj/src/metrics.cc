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

#include "stego/metrics.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "stego/arithmetic_codec.h"
#include "stego/error.h"

namespace stego {

namespace {

// p * ((1 + r) ln(1 + r) - r) with r = q / p - 1, accurate near r = 0.
double KlTerm(double q, double p) {
  if (q == 0.0) return p;
  if (p == 0.0) return std::numeric_limits<double>::infinity();
  const double r = (q - p) / p;
  double phi;
  if (std::abs(r) < 1e-4) {
    phi = r * r * (0.5 - r * (1.0 / 6.0 - r * (1.0 / 12.0 - r / 20.0)));
  } else {
    phi = (1.0 + r) * std::log1p(r) - r;
  }
  return p * std::max(phi, 0.0);
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::uint64_t Mix(std::uint64_t x) {
  SplitMix64 rng(x);
  return rng.Next();
}

}  // namespace

const char* MethodName(Method method) {
  switch (method) {
    case Method::kArithmetic: return "arithmetic";
    case Method::kHuffman: return "huffman";
    case Method::kBlock: return "block";
  }
  return "unknown";
}

Method ParseMethod(const std::string& name) {
  if (name == "arithmetic") return Method::kArithmetic;
  if (name == "huffman") return Method::kHuffman;
  if (name == "block") return Method::kBlock;
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + name + "'");
}

double BitsPerWord(const StegoRecord& record) {
  if (record.cover.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "record has no cover tokens");
  }
  double bits = 0.0;
  for (auto b : record.bits_consumed) bits += b;
  return bits / static_cast<double>(record.cover.size());
}

double KlPerWord(const StegoRecord& record) {
  if (record.cover.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "record has no cover tokens");
  }
  double kl = 0.0;
  for (double k : record.kl_nats) kl += k;
  return kl / static_cast<double>(record.cover.size());
}

double KlDivergence(std::span<const TokenId> q_ids,
                    std::span<const double> q_probs,
                    std::span<const double> p) {
  if (q_ids.size() != q_probs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "q ids and probs differ in size");
  }
  std::vector<bool> in_q(p.size(), false);
  double kl = 0.0;
  for (std::size_t i = 0; i < q_ids.size(); ++i) {
    if (q_ids[i] >= p.size()) {
      throw Error(ErrorCode::kInvalidArgument, "q id outside p's support");
    }
    in_q[q_ids[i]] = true;
    kl += KlTerm(q_probs[i], p[q_ids[i]]);
  }
  for (std::size_t id = 0; id < p.size(); ++id) {
    if (!in_q[id]) kl += p[id];
  }
  return kl;
}

double ArithmeticStepKl(const TokenDistribution& q, std::span<const double> p) {
  std::vector<double> probs(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) probs[i] = q.probability(i);
  return KlDivergence(q.ids(), probs, p);
}

double HuffmanStepKl(const HuffmanTree& tree, std::span<const double> p) {
  std::vector<double> probs(tree.tokens().size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    probs[i] = std::ldexp(1.0, -static_cast<int>(tree.code(i).size()));
  }
  return KlDivergence(tree.tokens(), probs, p);
}

double BlockStepKl(std::span<const std::optional<TokenId>> bin_leaders,
                   int block_size, std::span<const double> p) {
  std::vector<TokenId> ids;
  for (const auto& leader : bin_leaders) {
    if (!leader) {
      throw Error(ErrorCode::kKeyError, "block bin without a usable token");
    }
    ids.push_back(*leader);
  }
  const std::vector<double> probs(ids.size(), std::ldexp(1.0, -block_size));
  return KlDivergence(ids, probs, p);
}

double EntropyBits(const TokenDistribution& q) {
  double h = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double pi = q.probability(i);
    h -= pi * std::log2(pi);
  }
  return h;
}

std::vector<MethodSpec> SweepConfig::DefaultGrid() {
  std::vector<MethodSpec> grid;
  for (int i = 4; i <= 12; ++i) grid.push_back({Method::kArithmetic, i / 10.0});
  for (int e = 1; e <= 8; ++e) grid.push_back({Method::kHuffman, double(1 << e)});
  for (int b = 1; b <= 5; ++b) grid.push_back({Method::kBlock, double(b)});
  return grid;
}

std::vector<MethodSpec> ParseGrid(const std::string& spec) {
  if (spec.empty() || spec == "default") return SweepConfig::DefaultGrid();
  std::vector<MethodSpec> grid;
  std::stringstream groups(spec);
  std::string group;
  while (std::getline(groups, group, ';')) {
    if (group.empty()) continue;
    const auto colon = group.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  "grid group '" + group + "' lacks 'method:values'");
    }
    const Method method = ParseMethod(group.substr(0, colon));
    std::stringstream values(group.substr(colon + 1));
    std::string v;
    while (std::getline(values, v, ',')) {
      std::size_t used = 0;
      double param = 0.0;
      try {
        param = std::stod(v, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != v.size() || !(param > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "bad grid value '" + v + "'");
      }
      grid.push_back({method, param});
    }
  }
  if (grid.empty()) throw Error(ErrorCode::kInvalidArgument, "empty grid");
  return grid;
}

std::uint64_t DeriveSeed(std::uint64_t global_seed, const MethodSpec& spec,
                         std::size_t sample_index) {
  std::uint64_t h = Mix(global_seed);
  h = Mix(h ^ static_cast<std::uint64_t>(spec.method));
  h = Mix(h ^ std::bit_cast<std::uint64_t>(spec.param));
  return Mix(h ^ static_cast<std::uint64_t>(sample_index));
}

Bits RandomBits(SplitMix64& rng, std::size_t count) {
  Bits bits(count);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (i % 64 == 0) word = rng.Next();
    bits[i] = static_cast<std::uint8_t>((word >> (63 - i % 64)) & 1u);
  }
  return bits;
}

namespace {

ModulationParams ArithmeticParams(const LanguageModel& model,
                                  const MethodSpec& spec,
                                  const SweepConfig& config) {
  ModulationParams params;
  params.temperature = spec.method == Method::kArithmetic ? spec.param : 1.0;
  params.top_k = spec.method == Method::kArithmetic
                     ? static_cast<std::uint32_t>(std::min<std::size_t>(
                           config.arithmetic_top_k, model.vocabulary().size()))
                     : ModulationParams::kFullVocabulary;
  params.precision = config.precision;
  return params;
}

std::size_t IntegerParam(const MethodSpec& spec) {
  const double rounded = std::round(spec.param);
  if (rounded != spec.param || rounded < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(MethodName(spec.method)) +
                    " parameter must be a positive integer");
  }
  return static_cast<std::size_t>(rounded);
}

}  // namespace

SampleRunner::SampleRunner(const LanguageModel& model, const MethodSpec& spec,
                           const SweepConfig& config)
    : model_(&model),
      spec_(spec),
      source_(model, ArithmeticParams(model, spec, config)) {
  if (spec.method == Method::kHuffman) {
    huffman_.emplace(model, IntegerParam(spec));
  } else if (spec.method == Method::kBlock) {
    block_.emplace(model, BlockKey(static_cast<int>(IntegerParam(spec)),
                                   config.block_seed,
                                   model.vocabulary().size()));
  }
}

double SampleRunner::StepKl(std::span<const TokenId> history) {
  auto key = model_->StateKey(history);
  if (auto it = kl_cache_.find(key); it != kl_cache_.end()) return it->second;
  double kl = 0.0;
  if (spec_.method == Method::kArithmetic) {
    const TokenDistribution q = source_.Next(history);
    kl = ArithmeticStepKl(q, source_.Raw(history));
    kl_cache_.emplace(std::move(key), kl);
    return kl;
  }
  const std::vector<double>& p = source_.Raw(history);
  switch (spec_.method) {
    case Method::kArithmetic:
      break;
    case Method::kHuffman:
      kl = HuffmanStepKl(huffman_->TreeFor(history), p);
      break;
    case Method::kBlock:
      kl = BlockStepKl(block_->BinLeaders(history), block_->key().block_size(),
                       p);
      break;
  }
  kl_cache_.emplace(std::move(key), kl);
  return kl;
}

StegoRecord SampleRunner::Run(std::span<const TokenId> context,
                              std::span<const std::uint8_t> bits) {
  const std::size_t max_tokens = DefaultMaxTokens(bits.size());
  StegoTrace trace;
  switch (spec_.method) {
    case Method::kArithmetic:
      trace = EncodeBits(bits, context, source_, max_tokens);
      break;
    case Method::kHuffman:
      trace = huffman_->EncodeBits(bits, context, max_tokens);
      break;
    case Method::kBlock:
      trace = block_->EncodeBits(bits, context, max_tokens);
      break;
  }
  StegoRecord record;
  record.context.assign(context.begin(), context.end());
  record.method = spec_.method;
  record.param = spec_.param;
  record.message_bits = bits.size();
  record.bits_consumed = std::move(trace.bits_consumed);
  std::vector<TokenId> history = record.context;
  for (TokenId token : trace.tokens) {
    record.kl_nats.push_back(StepKl(history));
    history.push_back(token);
  }
  record.cover = std::move(trace.tokens);
  return record;
}

Estimate MeanAndStderr(std::span<const double> values) {
  Estimate e;
  e.n = values.size();
  if (e.n == 0) return e;
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / static_cast<double>(e.n);
  if (e.n < 2) return e;
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  const double sd = std::sqrt(ss / static_cast<double>(e.n - 1));
  e.std_error = sd / std::sqrt(static_cast<double>(e.n));
  return e;
}

namespace {

SweepPoint RunPoint(const LanguageModel& model,
                    std::span<const std::vector<TokenId>> contexts,
                    const MethodSpec& spec, const SweepConfig& config) {
  SampleRunner runner(model, spec, config);
  std::vector<double> bpw;
  std::vector<double> kl;
  SweepPoint point;
  point.method = spec.method;
  point.param = spec.param;
  for (std::size_t s = 0; s < config.n_samples; ++s) {
    SplitMix64 rng(DeriveSeed(config.seed, spec, s));
    const auto& context = contexts[rng.Next() % contexts.size()];
    const Bits bits = RandomBits(rng, config.message_bits);
    try {
      const StegoRecord record = runner.Run(context, bits);
      bpw.push_back(BitsPerWord(record));
      kl.push_back(KlPerWord(record));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMessageTooLong &&
          e.code() != ErrorCode::kKeyError) {
        throw;
      }
      ++point.failures;
    }
  }
  const Estimate b = MeanAndStderr(bpw);
  const Estimate k = MeanAndStderr(kl);
  point.bits_per_word = b.mean;
  point.bpw_stderr = b.std_error;
  point.kl_nats_per_word = k.mean;
  point.kl_stderr = k.std_error;
  point.n_samples = b.n;
  point.stderr_defined = b.n >= 2;
  return point;
}

}  // namespace

std::vector<SweepPoint> RunSweep(const LanguageModel& model,
                                 std::span<const std::vector<TokenId>> contexts,
                                 const SweepConfig& config) {
  if (contexts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one context");
  }
  for (const auto& ctx : contexts) CheckContext(model, ctx);
  if (config.message_bits == 0) {
    throw Error(ErrorCode::kInvalidArgument, "message_bits must be positive");
  }
  std::vector<SweepPoint> points(config.points.size());
  unsigned threads = config.threads != 0 ? config.threads
                                         : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(
                             threads, static_cast<unsigned>(points.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      points[i] = RunPoint(model, contexts, config.points[i], config);
    }
    return points;
  }
  // Points are independent; each worker takes every `threads`-th one.
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < points.size(); i += threads) {
            points[i] = RunPoint(model, contexts, config.points[i], config);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return points;
}

Estimate EntropyPerWord(const LanguageModel& model,
                        std::span<const std::vector<TokenId>> contexts,
                        const ModulationParams& params, std::size_t n_samples,
                        std::size_t tokens_per_sample, std::uint64_t seed) {
  if (contexts.empty() || tokens_per_sample == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "entropy estimate needs contexts and a positive length");
  }
  DistributionSource source(model, params);
  std::map<std::vector<TokenId>, double> entropy_cache;
  std::vector<double> per_sample;
  per_sample.reserve(n_samples);
  const MethodSpec tag{Method::kArithmetic, params.temperature};
  for (std::size_t s = 0; s < n_samples; ++s) {
    SplitMix64 rng(DeriveSeed(seed ^ 0x656e74726f7079ull, tag, s));
    std::vector<TokenId> history = contexts[rng.Next() % contexts.size()];
    CheckContext(model, history);
    double total = 0.0;
    for (std::size_t t = 0; t < tokens_per_sample; ++t) {
      const TokenDistribution& q = source.Next(history);
      auto key = model.StateKey(history);
      auto it = entropy_cache.find(key);
      if (it == entropy_cache.end()) {
        it = entropy_cache.emplace(std::move(key), EntropyBits(q)).first;
      }
      total += it->second;
      // Draw a token with probability weight / 2^precision.
      const std::uint64_t u = rng.Next() >> (64 - q.precision());
      std::size_t lo = 0;
      std::size_t hi = q.size();
      while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (q.cumulative(mid) <= u) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      history.push_back(q.id(lo));
    }
    per_sample.push_back(total / static_cast<double>(tokens_per_sample));
  }
  return MeanAndStderr(per_sample);
}

void WriteSweepCsv(std::ostream& out, std::span<const SweepPoint> points) {
  out << "method,param,bits_per_word,bpw_stderr,kl_nats_per_word,kl_stderr,n\n";
  for (const auto& p : points) {
    out << MethodName(p.method) << ',' << FormatNumber(p.param) << ','
        << FormatNumber(p.bits_per_word) << ',' << FormatNumber(p.bpw_stderr)
        << ',' << FormatNumber(p.kl_nats_per_word) << ','
        << FormatNumber(p.kl_stderr) << ',' << p.n_samples << '\n';
  }
}

void WriteSweepJson(std::ostream& out, std::span<const SweepPoint> points) {
  nlohmann::ordered_json series = nlohmann::ordered_json::object();
  for (const auto& p : points) {
    auto& list = series[MethodName(p.method)];
    list.push_back({{"param", p.param},
                    {"bits_per_word", p.bits_per_word},
                    {"bpw_stderr", p.bpw_stderr},
                    {"kl_nats_per_word", p.kl_nats_per_word},
                    {"kl_stderr", p.kl_stderr},
                    {"n", p.n_samples},
                    {"failures", p.failures},
                    {"stderr_defined", p.stderr_defined}});
  }
  nlohmann::ordered_json doc = {
      {"x_axis", "bits_per_word"}, {"y_axis", "kl_nats_per_word"},
      {"series", series}};
  out << doc.dump(2) << '\n';
}

void WriteSweepGnuplot(std::ostream& out, std::span<const SweepPoint> points) {
  out << "# columns: bits_per_word kl_nats_per_word bpw_stderr kl_stderr "
         "param\n";
  for (Method m : {Method::kArithmetic, Method::kHuffman, Method::kBlock}) {
    bool any = false;
    for (const auto& p : points) {
      if (p.method != m) continue;
      if (!any) out << "\n\n# " << MethodName(m) << '\n';
      any = true;
      out << FormatNumber(p.bits_per_word) << ' '
          << FormatNumber(p.kl_nats_per_word) << ' '
          << FormatNumber(p.bpw_stderr) << ' ' << FormatNumber(p.kl_stderr)
          << ' ' << FormatNumber(p.param) << '\n';
    }
  }
}

}  // namespace stego
