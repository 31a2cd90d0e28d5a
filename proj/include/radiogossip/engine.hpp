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

#ifndef RADIOGOSSIP_ENGINE_HPP_
#define RADIOGOSSIP_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radiogossip/common.hpp"
#include "radiogossip/payload.hpp"
#include "radiogossip/topology.hpp"
#include "radiogossip/trace.hpp"

namespace radiogossip {

/// What a node does in one round. Exactly one per node per round.
struct RoundAction {
  enum class Kind : std::uint8_t {
    kIdle,
    kListen,
    kTransmit,
    /// Oracle-assisted delivery to the whole connected component. Only the
    /// accounting broadcast uses it; records are flagged in the trace.
    kFlood,
  };

  Kind kind = Kind::kIdle;
  Payload payload;

  static RoundAction idle() { return {}; }
  static RoundAction listen() { return {Kind::kListen, {}}; }
  static RoundAction transmit(Payload p) { return {Kind::kTransmit, std::move(p)}; }
  static RoundAction flood(Payload p) { return {Kind::kFlood, std::move(p)}; }

  bool sends() const noexcept {
    return kind == Kind::kTransmit || kind == Kind::kFlood;
  }
};

/// A delivered message. `sender` is authenticated.
struct Reception {
  Label sender = 0;
  Payload payload;
  bool oracle = false;
};

/// Per-node delivery result: nullopt is silence, which also covers
/// collisions and every non-listening node.
using Inbox = std::optional<Reception>;

/// Collects free-form per-round notes into the trace, when one is attached.
class Annotator {
 public:
  explicit Annotator(std::vector<std::string>* sink = nullptr) : sink_(sink) {}
  bool enabled() const noexcept { return sink_ != nullptr; }
  void add(std::string note) {
    if (sink_ != nullptr) sink_->push_back(std::move(note));
  }

 private:
  std::vector<std::string>* sink_;
};

/// Per-node protocol state machine.
class NodeBehavior {
 public:
  virtual ~NodeBehavior() = default;

  virtual RoundAction act(Round round) = 0;
  virtual void deliver(Round round, const Inbox& inbox, Annotator& notes) = 0;

  /// Earliest round >= `now` in which this node may transmit or react to a
  /// silent round. Until then it only listens or idles, and silence leaves
  /// its state unchanged. The engine skips rounds in which every node is
  /// quiet. The default never allows a skip.
  virtual Round quiet_until(Round now) { return now; }

  /// Earliest round >= `now` from which receptions may matter again. Before
  /// it, deliver() ignores whatever arrives and the node's actions are fixed
  /// in advance. When every node is settled past `now` and nothing is traced,
  /// the engine counts those rounds without stepping them.
  virtual Round settled_until(Round now) { return now; }
};

/// Collision-resolved delivery for one round. A listening node receives iff
/// exactly one neighbour transmits; everything else gets silence. Floods
/// reach every listening node in the flooder's component that would
/// otherwise hear silence; the sender is the lowest-index flooder there.
std::vector<Inbox> step(const Topology& topology,
                        std::span<const RoundAction> actions);

enum class RunOutcome { kHalted, kBudgetExhausted };

struct RunOptions {
  std::string stage = "run";
  Round budget = kNever;
  /// Harness-side predicate, checked before every round.
  std::function<bool()> halt;
};

struct RunResult {
  Round rounds = 0;
  RunOutcome outcome = RunOutcome::kHalted;
};

/// Deterministic single-threaded round driver. Keeps the global round clock
/// across successive run() calls so stages chain on one timeline.
class Engine {
 public:
  explicit Engine(const Topology& topology, TraceSink* trace = nullptr);

  RunResult run(std::span<NodeBehavior* const> nodes, const RunOptions& options);

  Round now() const noexcept { return now_; }

 private:
  friend std::vector<Inbox> step(const Topology&, std::span<const RoundAction>);

  void route(std::span<const RoundAction> actions, std::vector<Inbox>& inboxes);

  const Topology& topology_;
  TraceSink* trace_;
  Round now_ = 0;
  std::vector<RoundAction> actions_;
  std::vector<Inbox> inboxes_;
  // Node that last blocked a settled skip; checked first next time.
  NodeIndex unsettled_hint_ = 0;
  std::vector<std::uint32_t> hits_;
  std::vector<NodeIndex> last_sender_;
  std::vector<NodeIndex> flood_owner_;
  std::vector<NodeIndex> queue_;
};

}  // namespace radiogossip

#endif  // RADIOGOSSIP_ENGINE_HPP_
