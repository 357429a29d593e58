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

#include "stego/interval_state.h"

#include <bit>
#include <string>

#include "stego/error.h"

namespace stego {

IntervalState::IntervalState(int precision)
    : precision_(precision),
      half_(std::uint64_t{1} << (precision - 1)),
      quarter_(std::uint64_t{1} << (precision - 2)),
      low_(0),
      high_(std::uint64_t{1} << precision) {
  if (precision < 2 || precision > 62) {
    throw Error(ErrorCode::kInvalidArgument,
                "interval precision must lie in [2, 62]");
  }
}

std::uint64_t IntervalState::Boundary(const TokenDistribution& dist,
                                      std::size_t i) const {
  const unsigned __int128 width = high_ - low_;
  return low_ + static_cast<std::uint64_t>(
                    (width * dist.cumulative(i)) >> dist.precision());
}

std::pair<std::uint64_t, std::uint64_t> IntervalState::SubInterval(
    const TokenDistribution& dist, std::size_t index) const {
  return {Boundary(dist, index), Boundary(dist, index + 1)};
}

std::size_t IntervalState::Locate(const TokenDistribution& dist,
                                  std::uint64_t point) const {
  if (point < low_ || point >= high_) {
    throw Error(ErrorCode::kInvalidArgument, "point outside the interval");
  }
  // Largest i with Boundary(i) <= point; Boundary(0) == low.
  std::size_t lo = 0;
  std::size_t hi = dist.size();
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (Boundary(dist, mid) <= point) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void IntervalState::Narrow(const TokenDistribution& dist, std::size_t index) {
  const auto [lo, hi] = SubInterval(dist, index);
  if (lo >= hi) {
    throw Error(ErrorCode::kDesync,
                "token " + std::to_string(dist.id(index)) +
                    " has no width at the current interval");
  }
  low_ = lo;
  high_ = hi;
}

void IntervalState::Finish(Bits& out) {
  // After renormalization the interval contains [quarter, half) or
  // [half, three quarters), so "01" or "10" followed by any bits stays
  // inside. When both fit, the choice follows the parity of the state.
  const bool low_half = low_ <= quarter_;
  const bool high_half = high_ >= half_ + quarter_;
  const bool first =
      low_half && high_half ? std::popcount(low_ ^ high_) & 1 : !low_half;
  ++pending_;
  Emit(out, first ? 1 : 0);
}

}  // namespace stego
