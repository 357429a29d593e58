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

#ifndef STEGO_TYPES_H_
#define STEGO_TYPES_H_

#include <cstdint>
#include <vector>

namespace stego {

using TokenId = std::uint32_t;

// One bit per element, each 0 or 1. Bit order is always most significant
// (first transmitted) first.
using Bits = std::vector<std::uint8_t>;

}  // namespace stego

#endif  // STEGO_TYPES_H_
