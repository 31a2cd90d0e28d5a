// Copyright 2026 The radiogossip Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "radiogossip/common.hpp"

#include <bit>
#include <cmath>

namespace radiogossip {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDuplicateLabel: return "duplicate label";
    case ErrorCode::kLabelOutOfUniverse: return "label out of universe";
    case ErrorCode::kSelfLoop: return "self-loop";
    case ErrorCode::kIndexOutOfRange: return "node index out of range";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kDisconnected: return "disconnected topology";
    case ErrorCode::kConstructionFailed: return "construction failed";
    case ErrorCode::kVerificationCapExceeded: return "verification cap exceeded";
    case ErrorCode::kModelViolation: return "model violation";
    case ErrorCode::kVerificationFailed: return "verification failed";
  }
  return "unknown error";
}

std::uint32_t ceil_lg(std::uint64_t x) noexcept {
  if (x <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(x - 1));
}

std::uint32_t guarded_lglg(std::uint64_t n) noexcept {
  if (n <= 2) return 1;
  const double v = std::ceil(std::log2(std::log2(static_cast<double>(n))));
  return v < 1.0 ? 1u : static_cast<std::uint32_t>(v);
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t result = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw Error(ErrorCode::kInvalidArgument, "label universe n^c overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

}  // namespace radiogossip
