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

#ifndef STEGO_CLI_H_
#define STEGO_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "stego/error.h"

namespace stego::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitKeyMismatch = 2,
  kExitDesync = 3,
  kExitMessageTooLong = 4,
  kExitProtocol = 5,
  kExitMalformed = 6,
  kExitIo = 7,
};

ExitCode ExitCodeFor(ErrorCode code);

// Runs the tool; args[0] is the program name. Files named "-" are stdin.
int Run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

}  // namespace stego::cli

#endif  // STEGO_CLI_H_
