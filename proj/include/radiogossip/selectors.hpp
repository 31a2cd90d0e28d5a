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

#ifndef RADIOGOSSIP_SELECTORS_HPP_
#define RADIOGOSSIP_SELECTORS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "radiogossip/common.hpp"

namespace radiogossip {

/// Ordered list of subsets of [1..N] such that every nonempty S with
/// |S| <= k meets some listed set in exactly one element.
struct SelectiveFamily {
  std::uint64_t k = 1;
  Label universe = 1;
  /// Each set is sorted and duplicate-free.
  std::vector<std::vector<Label>> sets;

  std::size_t size() const noexcept { return sets.size(); }

  /// Indices of the sets containing `label`, increasing.
  std::vector<std::uint32_t> membership(Label label) const;
};

enum class FamilyMethod { kWholeUniverse, kSingletons, kGreedy, kRandomSets };

struct FamilyOptions {
  /// Exhaustive verification is allowed while sum_{i<=k} C(N,i) stays below.
  std::uint64_t exhaustive_cap = 10'000'000;
  /// Greedy cover runs for N <= 64 while the witness count stays below this.
  std::uint64_t greedy_witness_limit = 1'000'000;
  std::uint32_t greedy_pool = 64;
  /// Random-sets size is ceil(multiple * k * max(1, lg(N/k))).
  double size_multiple = 3.0;
  std::uint32_t sampled_trials = 20'000;
  std::uint32_t attempts = 8;
};

struct FamilyBuild {
  SelectiveFamily family;
  FamilyMethod method = FamilyMethod::kGreedy;
  /// True when the returned family was proven selective by enumeration.
  bool exhaustively_verified = false;
};

/// Deterministic in (k, N, seed, options). Throws kInvalidArgument unless
/// 1 <= k <= N, and kConstructionFailed if sampled screening keeps finding
/// violations after the attempt budget.
FamilyBuild build_selective_family(std::uint64_t k, Label universe, std::uint64_t seed,
                                   const FamilyOptions& options = {});

/// Unrepaired random family: each label joins each set with probability 1/k.
SelectiveFamily random_family(std::uint64_t k, Label universe, std::size_t size,
                              std::uint64_t seed);

/// Number of nonempty subsets of [1..N] with at most k elements, saturating.
std::uint64_t witness_count(std::uint64_t k, Label universe) noexcept;

struct SelectivityVerdict {
  bool valid = true;
  /// Sorted violating subset when !valid. In exhaustive mode it is the
  /// lexicographically smallest one.
  std::vector<Label> counterexample;
  /// False for sampled screening, which is not a proof.
  bool exhaustive = true;
  std::uint64_t checked = 0;
};

/// Enumerates every witness. Throws kVerificationCapExceeded above `cap`.
SelectivityVerdict verify_exhaustive(const SelectiveFamily& family,
                                     std::uint64_t cap = 10'000'000);

/// Random witnesses with sizes uniform in [1..k].
SelectivityVerdict verify_sampled(const SelectiveFamily& family, std::uint32_t trials,
                                  std::uint64_t seed);

/// Text format: `k N size`, then one sorted set per line.
void write_family(std::ostream& out, const SelectiveFamily& family);
SelectiveFamily read_family(std::istream& in);

std::string to_string(FamilyMethod method);

}  // namespace radiogossip

#endif  // RADIOGOSSIP_SELECTORS_HPP_
