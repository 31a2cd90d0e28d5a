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

#ifndef RADIOGOSSIP_BROADCAST_HPP_
#define RADIOGOSSIP_BROADCAST_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radiogossip/common.hpp"
#include "radiogossip/engine.hpp"
#include "radiogossip/payload.hpp"
#include "radiogossip/selectors.hpp"
#include "radiogossip/topology.hpp"

namespace radiogossip {

enum class BroadcastKind : std::uint8_t { kRoundRobin, kSelectiveFlood, kOracleAccounting };

std::string to_string(BroadcastKind kind);
/// Accepts "roundrobin", "sf" and "oracle".
std::optional<BroadcastKind> parse_broadcast_kind(const std::string& text);

struct BroadcastConfig {
  /// Constant charged by the accounting primitive.
  double c_rb = 1.0;
  std::uint64_t family_seed = 1;
  FamilyOptions family;
};

/// Multi-source broadcast with a fixed, locally computable timetable of
/// nb_bound rounds. Informed nodes join the schedule; nobody needs a
/// completion signal.
struct BroadcastPrimitive {
  BroadcastKind kind = BroadcastKind::kRoundRobin;
  std::uint32_t n = 1;
  Label universe = 1;
  Round nb_bound = 1;
  double c_rb = 1.0;
  /// (n, N)-selective family driving kSelectiveFlood passes.
  std::shared_ptr<const SelectiveFamily> family;

  /// Rounds per pass: N, |F|, or the whole budget for the accounting kind.
  Round pass_length() const noexcept;
};

/// nb_bound = n*N (round robin), n*|F| (selective flood), or
/// max(1, ceil(c_rb * n * lg n * guarded_lglg(n))) (accounting).
BroadcastPrimitive make_broadcast(BroadcastKind kind, std::uint32_t n, Label universe,
                                  const BroadcastConfig& config = {});

/// Accounting budget on its own, for benchmarks and tests.
Round oracle_nb_bound(std::uint32_t n, double c_rb) noexcept;

/// One node's participation in a broadcast timetable starting at `start`.
/// Payload-agnostic: it relays whatever it was seeded with or first heard.
class BroadcastAgent {
 public:
  BroadcastAgent(const BroadcastPrimitive& primitive, Label self);

  /// Starts a run. Nodes that do not know the start yet pass nullopt and
  /// learn it together with the payload.
  void begin(std::optional<Round> start, std::optional<Payload> seed);
  void learn(Payload payload, Round start);
  /// Marks the node informed when the start is already known.
  void learn(Payload payload);

  RoundAction act(Round round) const;
  Round next_activity(Round now) const noexcept;

  bool informed() const noexcept { return payload_.has_value(); }
  const std::optional<Payload>& payload() const noexcept { return payload_; }
  std::optional<Round> start() const noexcept { return start_; }
  /// First round after the timetable, or kNever while the start is unknown.
  Round deadline() const noexcept;

 private:
  bool transmits_at(Round offset) const noexcept;

  const BroadcastPrimitive* primitive_;
  Label self_;
  std::vector<std::uint32_t> membership_;
  std::optional<Round> start_;
  std::optional<Payload> payload_;
};

struct BroadcastOutcome {
  std::vector<Label> informed;
  Round rounds = 0;
  /// Informed flags by node index at the end of every pass.
  std::vector<std::vector<bool>> after_pass;
};

/// Runs the primitive for exactly nb_bound rounds from `initially_informed`.
BroadcastOutcome run_broadcast(const BroadcastPrimitive& primitive, const Topology& topology,
                               const std::vector<Label>& initially_informed, const Payload& payload,
                               TraceSink* trace = nullptr);

}  // namespace radiogossip

#endif  // RADIOGOSSIP_BROADCAST_HPP_
