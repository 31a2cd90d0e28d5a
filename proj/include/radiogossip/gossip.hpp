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

#ifndef RADIOGOSSIP_GOSSIP_HPP_
#define RADIOGOSSIP_GOSSIP_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radiogossip/broadcast.hpp"
#include "radiogossip/common.hpp"
#include "radiogossip/payload.hpp"
#include "radiogossip/primitives.hpp"
#include "radiogossip/selectors.hpp"
#include "radiogossip/topology.hpp"
#include "radiogossip/trace.hpp"

namespace radiogossip {

/// Rumors keyed by origin label.
using RumorSet = std::map<Label, Bytes>;

/// Default rumor of a node: the text "rumor:<label>".
Bytes default_rumor(Label origin);
RumorSet initial_rumors(const Topology& topology);

/// How the leader picks its helper.
enum class HelperVariant : std::uint8_t {
  /// First neighbour overheard during leader election; falls back to the
  /// selective-family solicitation when nothing was overheard.
  kOverheard,
  /// Solicit, let neighbours answer on the (n,N)-selective schedule, and
  /// take the first label heard alone.
  kSelectiveFamily,
};

/// Stage tags used in traces, in protocol order.
inline constexpr std::array<const char*, 4> kStageNames = {"select-leader", "designate-helper",
                                                           "token-dfs", "disseminate"};

struct GossipConfig {
  BroadcastKind broadcast = BroadcastKind::kOracleAccounting;
  HelperVariant helper_variant = HelperVariant::kSelectiveFamily;
  BroadcastConfig broadcast_config;
};

/// The DFS token: visited set X, collected rumors, holder and its helper.
struct Token {
  ExclusionSet visited;
  RumorSet collected;
  Label holder = 0;
  Label holder_helper = 0;
};

struct TokenPass {
  Round round = 0;
  Label from = 0;
  Label to = 0;
  bool returning = false;
  /// Visited set carried by the pass.
  std::vector<Label> visited;
};

/// One neighbour search performed by a token holder.
struct SelectRecord {
  Label initiator = 0;
  Label helper = 0;
  std::vector<Label> excluded;
  std::optional<Label> found;
  Round start = 0;
  Round rounds = 0;
  std::uint32_t probes = 0;
};

struct GossipResult {
  Label leader = 0;
  Label helper = 0;
  /// Whether every node ended up believing in the same leader.
  bool leaders_agree = true;
  std::array<Round, 4> stage_rounds{};
  Round total = 0;
  /// Final rumor set of each node, by node index.
  std::vector<RumorSet> final_rumors;
  std::uint64_t token_passes = 0;
  std::vector<TokenPass> token_log;
  std::vector<SelectRecord> select_log;
  Round nb_bound = 0;
  std::size_t family_size = 0;
};

/// Single JSON object: leader, stage1..stage4, total, token_passes.
std::string summary_line(const GossipResult& result);

/// Shared, immutable knowledge every node derives from (n, c) and the
/// protocol constants: the broadcast timetable and the (n,N)-selective family.
struct ProtocolPlan {
  std::uint32_t n = 1;
  Label universe = 1;
  BroadcastPrimitive primitive;
  std::shared_ptr<const SelectiveFamily> family;
  HelperVariant helper_variant = HelperVariant::kSelectiveFamily;

  /// Stage-1 round count: ceil(lg N) * nb_bound (0 for n = 1).
  Round election_rounds() const noexcept;
};

ProtocolPlan make_plan(std::uint32_t n, Label universe, const GossipConfig& config);

struct LeaderElection {
  Label leader = 0;
  Round rounds = 0;
  bool agreed = true;
};

/// Bisects [1..N] ceil(lg N) times; in each iteration the upper half of the
/// live range seeds a broadcast of "1".
LeaderElection select_leader(const Topology& topology, const ProtocolPlan& plan,
                             TraceSink* trace = nullptr);

struct HelperDesignation {
  Label helper = 0;
  Round rounds = 0;
};

/// Always uses the selective-family variant (there is nothing overheard).
HelperDesignation designate_helper(const Topology& topology, const ProtocolPlan& plan, Label leader,
                                   TraceSink* trace = nullptr);

struct TokenTraversal {
  Token token;
  Round rounds = 0;
  std::vector<TokenPass> passes;
  std::vector<SelectRecord> selects;
};

/// Mark-and-pass-token depth-first traversal from the leader via its helper.
TokenTraversal token_dfs(const Topology& topology, const ProtocolPlan& plan, Label leader,
                         Label helper, const RumorSet& rumors, TraceSink* trace = nullptr);

struct Dissemination {
  Round rounds = 0;
  std::vector<RumorSet> final_rumors;
};

/// Single-source broadcast of `collected` from the leader.
Dissemination disseminate(const Topology& topology, const ProtocolPlan& plan, Label leader,
                          const RumorSet& collected, TraceSink* trace = nullptr);

/// Full protocol. Throws kDisconnected before any round on a disconnected
/// topology.
GossipResult gossip(const Topology& topology, const GossipConfig& config,
                    TraceSink* trace = nullptr);
GossipResult gossip(const Topology& topology, const ProtocolPlan& plan, const RumorSet& rumors,
                    TraceSink* trace = nullptr);

/// Bound on stage-3 rounds: 2(n-1) + (2n-1) * 3 * (2 ceil(lg N) + 3).
Round token_stage_bound(std::uint32_t n, Label universe) noexcept;

}  // namespace radiogossip

#endif  // RADIOGOSSIP_GOSSIP_HPP_
