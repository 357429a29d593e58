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

#ifndef STEGO_ERROR_H_
#define STEGO_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stego/types.h"

namespace stego {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidDistribution,
  kCannotQuantize,
  kUnknownToken,
  kMessageTooLong,
  kDesync,
  kTruncatedCover,
  kMalformedStream,
  kUnsupportedToken,
  kKeyError,
  kKeyMismatch,
  kProtocol,
  kTimeout,
  kContextTooLong,
  kIo,
  kFormat,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code
// lets callers (and the CLI exit-code table) distinguish failure classes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the steganographic encoders when the token budget runs out before
// the message is fully determined. Carries the partial cover.
class MessageTooLongError : public Error {
 public:
  MessageTooLongError(const std::string& what, std::vector<TokenId> partial,
                      std::size_t consumed_bits)
      : Error(ErrorCode::kMessageTooLong, what),
        partial_(std::move(partial)),
        consumed_bits_(consumed_bits) {}

  const std::vector<TokenId>& partial_tokens() const { return partial_; }
  std::size_t consumed_bits() const { return consumed_bits_; }

 private:
  std::vector<TokenId> partial_;
  std::size_t consumed_bits_;
};

}  // namespace stego

#endif  // STEGO_ERROR_H_
