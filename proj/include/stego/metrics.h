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

#ifndef STEGO_METRICS_H_
#define STEGO_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stego/baselines.h"
#include "stego/distribution.h"
#include "stego/language_model.h"

namespace stego {

enum class Method { kArithmetic, kHuffman, kBlock };

const char* MethodName(Method method);
Method ParseMethod(const std::string& name);

// One evaluation sample.
struct StegoRecord {
  std::vector<TokenId> context;
  Method method = Method::kArithmetic;
  double param = 0.0;  // temperature, truncation or block size
  std::size_t message_bits = 0;
  std::vector<TokenId> cover;
  std::vector<double> kl_nats;                // one per cover token
  std::vector<std::uint32_t> bits_consumed;   // one per cover token
};

// Sum of bits_consumed over the number of cover tokens.
double BitsPerWord(const StegoRecord& record);
// Mean per-token KL in nats.
double KlPerWord(const StegoRecord& record);

// KL(q || p) in nats for a q given on a subset of ids and a dense p. Each
// summand q ln(q/p) - q + p is non-negative, so the result is too, and it is
// zero exactly when q == p.
double KlDivergence(std::span<const TokenId> q_ids,
                    std::span<const double> q_probs, std::span<const double> p);

// Per-step KL of each method's induced distribution (uniform message bits)
// from the raw model distribution `p`.
double ArithmeticStepKl(const TokenDistribution& q, std::span<const double> p);
double HuffmanStepKl(const HuffmanTree& tree, std::span<const double> p);
double BlockStepKl(std::span<const std::optional<TokenId>> bin_leaders,
                   int block_size, std::span<const double> p);

// Shannon entropy in bits of a quantized table.
double EntropyBits(const TokenDistribution& q);

struct MethodSpec {
  Method method = Method::kArithmetic;
  double param = 1.0;

  bool operator==(const MethodSpec&) const = default;
};

// Parses "arithmetic:0.4,0.7;huffman:2,8;block:1,3" or "default".
std::vector<MethodSpec> ParseGrid(const std::string& spec);

struct SweepConfig {
  std::vector<MethodSpec> points;
  std::size_t n_samples = 100;
  std::uint64_t seed = 0;
  std::size_t message_bits = 120;
  std::uint32_t arithmetic_top_k = 300;
  int precision = 32;
  std::uint64_t block_seed = 0x5eed;
  // 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;

  // Temperatures 0.4..1.2 (k = 300), Huffman truncation 2^1..2^8 and block
  // sizes 1..5.
  static std::vector<MethodSpec> DefaultGrid();
};

struct SweepPoint {
  Method method = Method::kArithmetic;
  double param = 0.0;
  double bits_per_word = 0.0;
  double bpw_stderr = 0.0;
  double kl_nats_per_word = 0.0;
  double kl_stderr = 0.0;
  std::size_t n_samples = 0;
  std::size_t failures = 0;
  // False when fewer than two samples succeeded; the stderr fields are then 0.
  bool stderr_defined = false;

  bool operator==(const SweepPoint&) const = default;
};

// Seed of one work unit, a pure function of its coordinates.
std::uint64_t DeriveSeed(std::uint64_t global_seed, const MethodSpec& spec,
                         std::size_t sample_index);

// Uniform random bits from a splitmix64 stream.
Bits RandomBits(SplitMix64& rng, std::size_t count);

// Runs one method on one message and records per-step KL and bits.
class SampleRunner {
 public:
  SampleRunner(const LanguageModel& model, const MethodSpec& spec,
               const SweepConfig& config);

  StegoRecord Run(std::span<const TokenId> context,
                  std::span<const std::uint8_t> bits);

 private:
  double StepKl(std::span<const TokenId> history);

  const LanguageModel* model_;
  MethodSpec spec_;
  DistributionSource source_;
  std::optional<HuffmanCoder> huffman_;
  std::optional<BlockCoder> block_;
  std::map<std::vector<TokenId>, double> kl_cache_;
};

// Mean and standard error of per-sample bits/word and KL/word for every
// grid point. Deterministic for a fixed config regardless of thread count.
std::vector<SweepPoint> RunSweep(const LanguageModel& model,
                                 std::span<const std::vector<TokenId>> contexts,
                                 const SweepConfig& config);

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

// Monte Carlo mean per-token entropy (bits) of the modulated, quantized
// distribution along trajectories sampled from that same distribution.
Estimate EntropyPerWord(const LanguageModel& model,
                        std::span<const std::vector<TokenId>> contexts,
                        const ModulationParams& params, std::size_t n_samples,
                        std::size_t tokens_per_sample, std::uint64_t seed);

// Sample mean and stddev / sqrt(n).
Estimate MeanAndStderr(std::span<const double> values);

void WriteSweepCsv(std::ostream& out, std::span<const SweepPoint> points);
void WriteSweepJson(std::ostream& out, std::span<const SweepPoint> points);
// One gnuplot data block per method: bits/word, KL, and both stderrs.
void WriteSweepGnuplot(std::ostream& out, std::span<const SweepPoint> points);

}  // namespace stego

#endif  // STEGO_METRICS_H_
