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

#ifndef RADIOGOSSIP_COMMON_HPP_
#define RADIOGOSSIP_COMMON_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace radiogossip {

/// Node identifier drawn from the label universe [1..N].
using Label = std::uint64_t;
/// Position of a node inside a Topology, 0-based.
using NodeIndex = std::uint32_t;
/// Global synchronous round counter, 0-based.
using Round = std::uint64_t;

inline constexpr Round kNever = std::numeric_limits<Round>::max();

enum class ErrorCode {
  kInvalidArgument = 1,
  kDuplicateLabel,
  kLabelOutOfUniverse,
  kSelfLoop,
  kIndexOutOfRange,
  kParse,
  kIo,
  kDisconnected,
  kConstructionFailed,
  kVerificationCapExceeded,
  kModelViolation,
  kVerificationFailed,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Smallest i with 2^i >= x. ceil_lg(0) and ceil_lg(1) are 0.
std::uint32_t ceil_lg(std::uint64_t x) noexcept;

/// lg lg n with the small-n guard max(1, ceil(log2(log2 n))).
std::uint32_t guarded_lglg(std::uint64_t n) noexcept;

/// base^exp, throwing kInvalidArgument on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp);

}  // namespace radiogossip

#endif  // RADIOGOSSIP_COMMON_HPP_
