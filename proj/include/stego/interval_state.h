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

#ifndef STEGO_INTERVAL_STATE_H_
#define STEGO_INTERVAL_STATE_H_

#include <cstddef>
#include <cstdint>
#include <utility>

#include "stego/distribution.h"
#include "stego/types.h"

namespace stego {

// Live interval [low, high) of a fixed-precision binary arithmetic coder
// over [0, 2^precision).
//
// Renormalize() shifts out every leading bit on which low and high - 1
// agree. When the interval straddles the midpoint but lies inside the
// middle half, it is expanded around the midpoint and the undetermined bit
// is tracked as pending; pending bits are emitted, inverted, after the next
// settled bit. Afterwards high - low > 2^(precision - 2) always holds.
class IntervalState {
 public:
  explicit IntervalState(int precision);

  int precision() const { return precision_; }
  std::uint64_t low() const { return low_; }
  std::uint64_t high() const { return high_; }
  std::size_t pending() const { return pending_; }
  // Settled bits emitted so far.
  std::size_t emitted() const { return emitted_; }

  // Bin `index` of `dist` scaled onto the current interval.
  std::pair<std::uint64_t, std::uint64_t> SubInterval(
      const TokenDistribution& dist, std::size_t index) const;

  // Index of the bin whose sub-interval contains `point`, low <= point < high.
  std::size_t Locate(const TokenDistribution& dist, std::uint64_t point) const;

  // Restricts the interval to bin `index`. Throws kDesync if that bin has no
  // width at the current interval size.
  void Narrow(const TokenDistribution& dist, std::size_t index);

  // Settles leading bits, appending them to `out`. For each shift the caller
  // is told how much was subtracted from the register before doubling (0,
  // 2^(precision-1) or 2^(precision-2)) so it can track a code value.
  template <typename OnShift>
  void Renormalize(Bits& out, OnShift&& on_shift) {
    for (;;) {
      if (high_ <= half_) {
        Emit(out, 0);
        on_shift(std::uint64_t{0});
        low_ <<= 1;
        high_ <<= 1;
      } else if (low_ >= half_) {
        Emit(out, 1);
        on_shift(half_);
        low_ = (low_ - half_) << 1;
        high_ = (high_ - half_) << 1;
      } else if (low_ >= quarter_ && high_ <= half_ + quarter_) {
        ++pending_;
        on_shift(quarter_);
        low_ = (low_ - quarter_) << 1;
        high_ = (high_ - quarter_) << 1;
      } else {
        return;
      }
    }
  }

  void Renormalize(Bits& out) {
    Renormalize(out, [](std::uint64_t) {});
  }

  // Appends the shortest fixed suffix (two settled bits plus pending) after
  // which every continuation lies inside the interval.
  void Finish(Bits& out);

 private:
  void Emit(Bits& out, std::uint8_t bit) {
    emitted_ += 1 + pending_;
    out.push_back(bit);
    for (; pending_ > 0; --pending_) out.push_back(bit ^ 1u);
  }

  std::uint64_t Boundary(const TokenDistribution& dist, std::size_t i) const;

  int precision_;
  std::uint64_t half_;
  std::uint64_t quarter_;
  std::uint64_t low_;
  std::uint64_t high_;
  std::size_t pending_ = 0;
  std::size_t emitted_ = 0;
};

}  // namespace stego

#endif  // STEGO_INTERVAL_STATE_H_
