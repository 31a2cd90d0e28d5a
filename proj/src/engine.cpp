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

#include "radiogossip/engine.hpp"

#include <algorithm>
#include <limits>

namespace radiogossip {

namespace {

constexpr NodeIndex kNone = std::numeric_limits<NodeIndex>::max();

}  // namespace

Engine::Engine(const Topology& topology, TraceSink* trace)
    : topology_(topology), trace_(trace) {
  const std::size_t n = topology.size();
  actions_.resize(n);
  inboxes_.resize(n);
  hits_.resize(n);
  last_sender_.resize(n);
  flood_owner_.resize(n);
}

void Engine::route(std::span<const RoundAction> actions, std::vector<Inbox>& inboxes) {
  const Topology& t = topology_;
  const NodeIndex n = t.size();
  std::ranges::fill(hits_, 0u);
  bool any_flood = false;
  for (NodeIndex u = 0; u < n; ++u) {
    const auto kind = actions[u].kind;
    if (kind == RoundAction::Kind::kTransmit) {
      for (NodeIndex v : t.neighbors(u)) {
        ++hits_[v];
        last_sender_[v] = u;
      }
    } else if (kind == RoundAction::Kind::kFlood) {
      any_flood = true;
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    inboxes[v].reset();
    if (actions[v].kind == RoundAction::Kind::kListen && hits_[v] == 1) {
      const NodeIndex u = last_sender_[v];
      inboxes[v] = Reception{t.label(u), actions[u].payload, false};
    }
  }
  if (!any_flood) return;

  // Components are explored from flooders in index order, so each
  // component is owned by its lowest-index flooder.
  std::ranges::fill(flood_owner_, kNone);
  for (NodeIndex s = 0; s < n; ++s) {
    if (actions[s].kind != RoundAction::Kind::kFlood || flood_owner_[s] != kNone) continue;
    queue_.assign(1, s);
    flood_owner_[s] = s;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      for (NodeIndex v : t.neighbors(queue_[head])) {
        if (flood_owner_[v] == kNone) {
          flood_owner_[v] = s;
          queue_.push_back(v);
        }
      }
    }
  }
  for (NodeIndex v = 0; v < n; ++v) {
    const NodeIndex s = flood_owner_[v];
    if (s == kNone || inboxes[v].has_value()) continue;
    if (actions[v].kind != RoundAction::Kind::kListen) continue;
    inboxes[v] = Reception{t.label(s), actions[s].payload, true};
  }
}

std::vector<Inbox> step(const Topology& topology, std::span<const RoundAction> actions) {
  if (actions.size() != topology.size()) {
    throw Error(ErrorCode::kInvalidArgument, "step() needs exactly one action per node");
  }
  Engine engine(topology);
  std::vector<Inbox> inboxes(topology.size());
  engine.route(actions, inboxes);
  return inboxes;
}

RunResult Engine::run(std::span<NodeBehavior* const> nodes, const RunOptions& options) {
  const NodeIndex n = topology_.size();
  if (nodes.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "run() needs exactly one behavior per node");
  }
  RunResult result;
  bool previous_silent = true;
  RoundRecord record;
  std::vector<std::string> notes;

  while (true) {
    if (options.halt && options.halt()) {
      result.outcome = RunOutcome::kHalted;
      return result;
    }
    if (result.rounds >= options.budget) {
      result.outcome = RunOutcome::kBudgetExhausted;
      return result;
    }

    // Rounds in which every node is quiet are all-silence by definition;
    // they are counted but not stepped. Traced runs step every round.
    if (trace_ == nullptr && previous_silent) {
      Round horizon = kNever;
      for (NodeIndex v = 0; v < n && horizon > now_; ++v) {
        horizon = std::min(horizon, nodes[v]->quiet_until(now_));
      }
      if (horizon > now_) {
        if (horizon == kNever && options.budget == kNever) {
          throw Error(ErrorCode::kModelViolation,
                      "stage '" + options.stage + "' stalled: every node is quiet forever");
        }
        const Round left = options.budget - result.rounds;
        const Round skip = std::min(horizon - now_, left);
        now_ += skip;
        result.rounds += skip;
        continue;
      }
    }

    if (trace_ == nullptr) {
      Round horizon = kNever;
      for (NodeIndex i = 0; i < n && horizon > now_; ++i) {
        const NodeIndex v = (unsettled_hint_ + i) % n;
        horizon = std::min(horizon, nodes[v]->settled_until(now_));
        if (horizon <= now_) unsettled_hint_ = v;
      }
      if (horizon > now_ && horizon != kNever) {
        const Round skip = std::min(horizon - now_, options.budget - result.rounds);
        now_ += skip;
        result.rounds += skip;
        continue;
      }
      if (horizon == kNever && options.budget != kNever) {
        now_ += options.budget - result.rounds;
        result.rounds = options.budget;
        continue;
      }
    }

    bool silent = true;
    for (NodeIndex v = 0; v < n; ++v) {
      actions_[v] = nodes[v]->act(now_);
      if (actions_[v].sends()) silent = false;
    }
    route(actions_, inboxes_);

    notes.clear();
    Annotator annotator(trace_ != nullptr ? &notes : nullptr);
    for (NodeIndex v = 0; v < n; ++v) nodes[v]->deliver(now_, inboxes_[v], annotator);

    if (trace_ != nullptr) {
      record.round = now_;
      record.stage = options.stage;
      record.oracle = false;
      record.tx.clear();
      record.rx.clear();
      for (NodeIndex v = 0; v < n; ++v) {
        if (actions_[v].sends()) {
          record.tx.emplace_back(topology_.label(v), actions_[v].payload.digest());
          if (actions_[v].kind == RoundAction::Kind::kFlood) record.oracle = true;
        }
        if (inboxes_[v]) record.rx.emplace_back(topology_.label(v), inboxes_[v]->sender);
      }
      record.notes = notes;
      trace_->record(record);
    }

    previous_silent = silent;
    ++now_;
    ++result.rounds;
  }
}

}  // namespace radiogossip
