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

#ifndef RADIOGOSSIP_HARNESS_HPP_
#define RADIOGOSSIP_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "radiogossip/broadcast.hpp"
#include "radiogossip/common.hpp"
#include "radiogossip/gossip.hpp"
#include "radiogossip/primitives.hpp"
#include "radiogossip/topology.hpp"

namespace radiogossip {

enum class TopologyFamily : std::uint8_t {
  kPath,
  kCycle,
  kStar,
  kGrid,
  kBalancedBinaryTree,
  kCaterpillar,
  kRandomConnected,
};

enum class LabelMode : std::uint8_t { kConsecutive, kRandomInjective };

/// Families with no randomness in the edge set, in corpus order.
inline constexpr std::array<TopologyFamily, 6> kDeterministicFamilies = {
    TopologyFamily::kPath,  TopologyFamily::kCycle,
    TopologyFamily::kStar,  TopologyFamily::kGrid,
    TopologyFamily::kBalancedBinaryTree, TopologyFamily::kCaterpillar};

std::string to_string(TopologyFamily family);
/// Accepts path, cycle, star, grid, tree (or balanced-binary-tree),
/// caterpillar, random (or random-connected).
std::optional<TopologyFamily> parse_topology_family(const std::string& text);
std::string to_string(LabelMode mode);
/// Accepts consecutive and random.
std::optional<LabelMode> parse_label_mode(const std::string& text);

struct TopologySpec {
  TopologyFamily family = TopologyFamily::kPath;
  std::uint32_t n = 1;
  std::uint32_t c = 2;
  LabelMode labels = LabelMode::kConsecutive;
  std::uint64_t seed = 1;
  /// Edge probability for kRandomConnected.
  double p = 0.1;
  /// Grid width; 0 picks the largest divisor of n not above sqrt(n).
  std::uint32_t grid_width = 0;
};

/// Stable one-line description, e.g. "grid n=16 c=2 labels=random seed=7".
std::string describe(const TopologySpec& spec);
/// 16 hex digits of the FNV-1a hash of describe(spec).
std::string spec_digest(const TopologySpec& spec);

/// Deterministic in its argument. Grids are w x h with node (x, y) at index
/// y*w + x; trees use heap order; caterpillars hang one leg off each spine
/// node; random graphs are G(n, p) joined by extra random edges between
/// components. Throws kInvalidArgument on bad dimensions.
Topology gen_topology(const TopologySpec& spec);

struct Verdict {
  bool valid = true;
  std::vector<std::string> violations;

  void fail(std::string why) {
    valid = false;
    violations.push_back(std::move(why));
  }
  void merge(const Verdict& other);
  /// Violations joined by "; ".
  std::string message() const;
};

/// Every node holds every expected rumor, the leader is the maximum label,
/// all nodes agree on it, and there were 2(n-1) token passes.
Verdict oracle_gossip_check(const Topology& topology, const GossipResult& result);
Verdict oracle_gossip_check(const Topology& topology, const GossipResult& result,
                            const RumorSet& expected);

/// Classification of |neighbors(s) ∩ (Y - X - {h})| computed from adjacency.
EstimateOutcome brute_force_estimate(const Topology& topology, Label initiator, Label helper,
                                     const ExclusionSet& excluded, LabelRange range);
Verdict oracle_estimate_check(const Topology& topology, Label initiator, Label helper,
                              const ExclusionSet& excluded, LabelRange range,
                              const EstimateOutcome& outcome);

/// A found label is an undiscovered neighbour; no answer means there was
/// none; rounds stay within binary_select_round_bound.
Verdict oracle_select_check(const Topology& topology, const SelectRecord& record);

/// Exact stage arithmetic for the selective-family helper variant.
Verdict stage_accounting_check(const ProtocolPlan& plan, const GossipResult& result);

/// Everything above applied to one finished run.
Verdict check_run(const Topology& topology, const ProtocolPlan& plan, const GossipResult& result);

/// Deterministic families x n x label modes, then `random_per_n`
/// random-connected instances per n.
std::vector<TopologySpec> verification_corpus(std::uint32_t c = 2, std::uint64_t seed = 1,
                                              std::uint32_t random_per_n = 25,
                                              const std::vector<std::uint32_t>& ns = {
                                                  1, 2, 3, 4, 8, 16, 32, 64});

struct CorpusOptions {
  std::uint32_t c = 2;
  std::uint64_t seed = 1;
  std::uint32_t random_per_n = 25;
  std::vector<std::uint32_t> ns = {1, 2, 3, 4, 8, 16, 32, 64};
  std::vector<BroadcastKind> kinds = {BroadcastKind::kRoundRobin, BroadcastKind::kSelectiveFlood,
                                      BroadcastKind::kOracleAccounting};
  GossipConfig base;
};

struct CaseReport {
  TopologySpec spec;
  BroadcastKind kind = BroadcastKind::kOracleAccounting;
  Verdict verdict;
  Round total = 0;
};

struct CorpusReport {
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::uint64_t selects_checked = 0;
  /// Largest select duration seen, against the bound for its N.
  Round max_select_rounds = 0;
  std::vector<CaseReport> failed;
  bool passed() const noexcept { return failures == 0; }
};

/// Runs and checks every (spec, kind) pair. `progress` sees each case.
CorpusReport verify_corpus(const CorpusOptions& options,
                           const std::function<void(const CaseReport&)>& progress = {});

struct BenchRecord {
  std::string spec_digest;
  TopologyFamily family = TopologyFamily::kPath;
  BroadcastKind kind = BroadcastKind::kOracleAccounting;
  std::uint32_t n = 0;
  Label universe = 0;
  std::uint64_t seed = 0;
  std::array<Round, 4> stage_rounds{};
  Round total = 0;
  double ratio = 0.0;
};

/// n * lg^2 n * max(1, lg lg n), with lg n taken as at least 1.
double bench_denominator(std::uint32_t n) noexcept;

struct BenchOptions {
  std::vector<std::uint32_t> ns = {8, 16, 32, 64};
  std::uint32_t c = 2;
  std::vector<TopologyFamily> families = {TopologyFamily::kPath, TopologyFamily::kGrid,
                                          TopologyFamily::kRandomConnected};
  std::vector<std::uint64_t> seeds = {1};
  LabelMode labels = LabelMode::kRandomInjective;
  GossipConfig base;
  /// Summary check; 0 disables it.
  double ratio_cap = 0.0;
};

struct BenchSummary {
  std::vector<BenchRecord> records;
  double max_ratio = 0.0;
  /// Mean ratio at the smallest and at the largest n of the sweep.
  double smallest_n_ratio = 0.0;
  double largest_n_ratio = 0.0;
  bool within_cap = true;
};

/// One record per (n, family, seed), sorted by (n, family, seed). Throws
/// kVerificationFailed naming the topology and seed if a run is incomplete.
BenchSummary bench_suite(const BenchOptions& options);

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace radiogossip

#endif  // RADIOGOSSIP_HARNESS_HPP_
