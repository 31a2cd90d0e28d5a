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

#include "radiogossip/broadcast.hpp"

#include <algorithm>
#include <cmath>

namespace radiogossip {

std::string to_string(BroadcastKind kind) {
  switch (kind) {
    case BroadcastKind::kRoundRobin: return "roundrobin";
    case BroadcastKind::kSelectiveFlood: return "sf";
    case BroadcastKind::kOracleAccounting: return "oracle";
  }
  return "unknown";
}

std::optional<BroadcastKind> parse_broadcast_kind(const std::string& text) {
  if (text == "roundrobin") return BroadcastKind::kRoundRobin;
  if (text == "sf") return BroadcastKind::kSelectiveFlood;
  if (text == "oracle") return BroadcastKind::kOracleAccounting;
  return std::nullopt;
}

Round BroadcastPrimitive::pass_length() const noexcept {
  switch (kind) {
    case BroadcastKind::kRoundRobin: return universe;
    case BroadcastKind::kSelectiveFlood: return family->size();
    case BroadcastKind::kOracleAccounting: return nb_bound;
  }
  return nb_bound;
}

Round oracle_nb_bound(std::uint32_t n, double c_rb) noexcept {
  const double lg_n = std::log2(static_cast<double>(std::max<std::uint32_t>(n, 1)));
  const double budget = std::ceil(c_rb * n * lg_n * guarded_lglg(n));
  return budget < 1.0 ? 1 : static_cast<Round>(budget);
}

BroadcastPrimitive make_broadcast(BroadcastKind kind, std::uint32_t n, Label universe,
                                  const BroadcastConfig& config) {
  if (n == 0 || universe < n) {
    throw Error(ErrorCode::kInvalidArgument, "broadcast needs n >= 1 and N >= n");
  }
  if (!(config.c_rb > 0.0)) throw Error(ErrorCode::kInvalidArgument, "c_rb must be positive");
  BroadcastPrimitive p;
  p.kind = kind;
  p.n = n;
  p.universe = universe;
  p.c_rb = config.c_rb;
  switch (kind) {
    case BroadcastKind::kRoundRobin:
      if (universe > kNever / n) throw Error(ErrorCode::kInvalidArgument, "n*N overflows");
      p.nb_bound = Round{n} * universe;
      break;
    case BroadcastKind::kSelectiveFlood: {
      auto built = build_selective_family(n, universe, config.family_seed, config.family);
      p.family = std::make_shared<const SelectiveFamily>(std::move(built.family));
      p.nb_bound = Round{n} * p.family->size();
      break;
    }
    case BroadcastKind::kOracleAccounting:
      p.nb_bound = oracle_nb_bound(n, config.c_rb);
      break;
  }
  return p;
}

BroadcastAgent::BroadcastAgent(const BroadcastPrimitive& primitive, Label self)
    : primitive_(&primitive), self_(self) {
  if (primitive.kind == BroadcastKind::kSelectiveFlood) membership_ = primitive.family->membership(self);
}

void BroadcastAgent::begin(std::optional<Round> start, std::optional<Payload> seed) {
  start_ = start;
  payload_ = std::move(seed);
}

void BroadcastAgent::learn(Payload payload, Round start) {
  if (payload_) return;
  payload_ = std::move(payload);
  start_ = start;
}

void BroadcastAgent::learn(Payload payload) {
  if (!payload_) payload_ = std::move(payload);
}

Round BroadcastAgent::deadline() const noexcept {
  return start_ ? *start_ + primitive_->nb_bound : kNever;
}

bool BroadcastAgent::transmits_at(Round offset) const noexcept {
  switch (primitive_->kind) {
    case BroadcastKind::kRoundRobin: return offset % primitive_->universe == self_ - 1;
    case BroadcastKind::kSelectiveFlood:
      return std::binary_search(membership_.begin(), membership_.end(),
                                static_cast<std::uint32_t>(offset % primitive_->family->size()));
    case BroadcastKind::kOracleAccounting: return offset == 0;
  }
  return false;
}

RoundAction BroadcastAgent::act(Round round) const {
  if (!start_ || round < *start_) return RoundAction::listen();
  if (round >= deadline()) return RoundAction::idle();
  const Round offset = round - *start_;
  const bool oracle = primitive_->kind == BroadcastKind::kOracleAccounting;
  if (payload_) {
    if (transmits_at(offset)) {
      return oracle ? RoundAction::flood(*payload_) : RoundAction::transmit(*payload_);
    }
    return oracle ? RoundAction::idle() : RoundAction::listen();
  }
  if (oracle && offset > 0) return RoundAction::idle();
  return RoundAction::listen();
}

Round BroadcastAgent::next_activity(Round now) const noexcept {
  if (!start_ || !payload_) return kNever;
  const Round from = std::max(now, *start_);
  if (from >= deadline()) return kNever;
  const Round offset = from - *start_;
  Round next = kNever;
  switch (primitive_->kind) {
    case BroadcastKind::kRoundRobin: {
      const Round n = primitive_->universe;
      Round slot = offset - offset % n + (self_ - 1);
      if (slot < offset) slot += n;
      next = slot;
      break;
    }
    case BroadcastKind::kSelectiveFlood: {
      if (membership_.empty()) return kNever;
      const Round len = primitive_->family->size();
      const Round base = offset - offset % len;
      auto it = std::lower_bound(membership_.begin(), membership_.end(),
                                 static_cast<std::uint32_t>(offset % len));
      next = it != membership_.end() ? base + *it : base + len + membership_.front();
      break;
    }
    case BroadcastKind::kOracleAccounting:
      next = offset == 0 ? 0 : kNever;
      break;
  }
  if (next == kNever) return kNever;
  const Round round = *start_ + next;
  return round < deadline() ? round : kNever;
}

namespace {

class BroadcastNode final : public NodeBehavior {
 public:
  BroadcastNode(const BroadcastPrimitive& primitive, Label self) : agent_(primitive, self) {}

  BroadcastAgent& agent() { return agent_; }

  RoundAction act(Round round) override { return agent_.act(round); }
  void deliver(Round, const Inbox& inbox, Annotator&) override {
    if (inbox) agent_.learn(inbox->payload);
  }
  Round quiet_until(Round now) override { return agent_.next_activity(now); }
  Round settled_until(Round now) override { return agent_.informed() ? kNever : now; }

 private:
  BroadcastAgent agent_;
};

}  // namespace

BroadcastOutcome run_broadcast(const BroadcastPrimitive& primitive, const Topology& topology,
                               const std::vector<Label>& initially_informed, const Payload& payload,
                               TraceSink* trace) {
  if (topology.size() > primitive.n || topology.universe() > primitive.universe) {
    throw Error(ErrorCode::kInvalidArgument, "topology exceeds the primitive's (n, N)");
  }
  Engine engine(topology, trace);
  std::vector<std::unique_ptr<BroadcastNode>> owned;
  std::vector<NodeBehavior*> nodes;
  for (NodeIndex v = 0; v < topology.size(); ++v) {
    owned.push_back(std::make_unique<BroadcastNode>(primitive, topology.label(v)));
    nodes.push_back(owned.back().get());
  }
  for (Label l : initially_informed) {
    if (!topology.index_of(l)) throw Error(ErrorCode::kInvalidArgument, "seed label not in topology");
  }
  for (NodeIndex v = 0; v < topology.size(); ++v) {
    const bool seeded = std::ranges::find(initially_informed, topology.label(v)) != initially_informed.end();
    owned[v]->agent().begin(engine.now(), seeded ? std::optional<Payload>(payload) : std::nullopt);
  }

  BroadcastOutcome out;
  const Round pass = primitive.pass_length();
  while (out.rounds < primitive.nb_bound) {
    RunOptions options;
    options.stage = "broadcast";
    options.budget = std::min(pass, primitive.nb_bound - out.rounds);
    out.rounds += engine.run(nodes, options).rounds;
    std::vector<bool> flags;
    for (const auto& node : owned) flags.push_back(node->agent().informed());
    out.after_pass.push_back(std::move(flags));
  }
  for (NodeIndex v = 0; v < topology.size(); ++v) {
    if (owned[v]->agent().informed()) out.informed.push_back(topology.label(v));
  }
  return out;
}

}  // namespace radiogossip
