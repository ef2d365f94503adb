// Copyright 2026 The coxroot Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxroot {

enum class ErrorCode {
  // Graph validation.
  DiagonalNotTwo,
  PositiveOffDiagonal,
  AsymmetricZeroPair,
  UnrecognizedBond,
  ParseError,
  // Graph queries.
  NotOddNeighbors,
  InvalidPath,
  NotUnitalONCyclic,
  NotConnected,
  NoEdge,
  InfiniteBond,
  InvalidArgument,
  // Roots.
  LimitExceeded,
  InfiniteInversionSet,
  NotFinite,
  NegativeRoot,
  // Numbers game.
  IllegalUserMove,
  // Documents and I/O.
  IoError,
  JsonError,
  ValueSyntaxError,
  // Sessions.
  UnknownSession,
  IllegalMove,
  UndoAtRoot,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every coxroot module. The code is stable and is what
/// the CLI and the HTTP service report to callers.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coxroot
