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

#include "radiogossip/gossip.hpp"

#include <algorithm>
#include <memory>

#include "json.hpp"
#include "messages.hpp"
#include "protocol_parts.hpp"
#include "radiogossip/engine.hpp"

namespace radiogossip {

Bytes default_rumor(Label origin) {
  const std::string text = "rumor:" + std::to_string(origin);
  return Bytes(text.begin(), text.end());
}

RumorSet initial_rumors(const Topology& topology) {
  RumorSet rumors;
  for (Label l : topology.labels()) rumors.emplace(l, default_rumor(l));
  return rumors;
}

std::string summary_line(const GossipResult& result) {
  nlohmann::ordered_json j;
  j["leader"] = result.leader;
  for (std::size_t s = 0; s < 4; ++s) j["stage" + std::to_string(s + 1)] = result.stage_rounds[s];
  j["total"] = result.total;
  j["token_passes"] = result.token_passes;
  return j.dump();
}

Round ProtocolPlan::election_rounds() const noexcept {
  return n <= 1 ? 0 : Round{ceil_lg(universe)} * primitive.nb_bound;
}

ProtocolPlan make_plan(std::uint32_t n, Label universe, const GossipConfig& config) {
  ProtocolPlan plan;
  plan.n = n;
  plan.universe = universe;
  plan.helper_variant = config.helper_variant;
  plan.primitive = make_broadcast(config.broadcast, n, universe, config.broadcast_config);
  if (plan.primitive.family) {
    plan.family = plan.primitive.family;
  } else {
    auto built = build_selective_family(n, universe, config.broadcast_config.family_seed,
                                        config.broadcast_config.family);
    plan.family = std::make_shared<const SelectiveFamily>(std::move(built.family));
  }
  return plan;
}

Round token_stage_bound(std::uint32_t n, Label universe) noexcept {
  if (n <= 1) return 0;
  return 2 * Round{n - 1} + Round{2 * n - 1} * binary_select_round_bound(universe);
}

namespace {

using detail::BroadcastMsg;
using detail::BroadcastPurpose;
using detail::EstimateSession;
using detail::MsgKind;
using detail::ProbeResponder;
using detail::TokenMsg;

enum class Entry { kElection, kHelper, kToken, kDissemination };

struct NodeSetup {
  Entry entry = Entry::kElection;
  Round start = 0;
  Label leader = 0;
  Label helper = 0;
  /// Rumors the leader holds when entering at dissemination.
  RumorSet collected;
};

// One node running the whole protocol. Stage 1 follows a fixed timetable;
// afterwards every action is a function of what the node has heard.
class ProtocolNode final : public NodeBehavior {
 public:
  enum class Phase { kElecting, kHelper, kEventDriven, kDisseminating };

  ProtocolNode(const ProtocolPlan& plan, Label self, Bytes rumor, const NodeSetup& setup)
      : plan_(plan), self_(self), rumor_(std::move(rumor)), agent_(plan.primitive, self),
        responder_(self) {
    switch (setup.entry) {
      case Entry::kElection:
        election_start_ = setup.start;
        live_ = LabelRange::full(plan.universe);
        start_iteration();
        break;
      case Entry::kHelper:
        enter_post_election(setup.leader, setup.start);
        variant_ = HelperVariant::kSelectiveFamily;
        break;
      case Entry::kToken:
        leader_ = setup.leader;
        if (self_ == leader_) {
          helper_ = setup.helper;
          start_traversal();
        }
        phase_ = Phase::kEventDriven;
        agent_.begin(std::nullopt, std::nullopt);
        break;
      case Entry::kDissemination:
        leader_ = setup.leader;
        phase_ = Phase::kEventDriven;
        agent_.begin(std::nullopt, std::nullopt);
        if (self_ == leader_) start_dissemination(setup.start, setup.collected);
        break;
    }
  }

  // Observers for the harness.
  void settle(Round now) { sync(now); }
  bool leader_known() const noexcept { return phase_ != Phase::kElecting; }
  Label leader() const noexcept { return leader_; }
  bool is_leader() const noexcept { return leader_known() && leader_ == self_; }
  Label helper() const noexcept { return helper_; }
  bool announced() const noexcept { return announced_; }
  bool traversal_done() const noexcept { return traversal_done_; }
  const RumorSet& final_rumors() const noexcept { return final_rumors_; }
  const ExclusionSet& visited() const noexcept { return visited_set_; }
  const RumorSet& collected() const noexcept { return collected_; }
  std::vector<TokenPass>& passes() noexcept { return passes_; }
  std::vector<SelectRecord>& selects() noexcept { return selects_; }

  RoundAction act(Round round) override {
    sync(round);
    switch (phase_) {
      case Phase::kElecting:
        return agent_.act(round);
      case Phase::kHelper:
        return act_helper(round);
      case Phase::kDisseminating:
        return agent_.act(round);
      case Phase::kEventDriven:
        break;
    }
    if (outbox_) return send_token(round);
    if (session_) return session_->act(round);
    if (auto reply = responder_.act(round)) return *reply;
    if (reply_slot(round)) return RoundAction::transmit(detail::encode_helper_reply());
    if (agent_.start()) return agent_.act(round);
    return RoundAction::listen();
  }

  void deliver(Round round, const Inbox& inbox, Annotator& notes) override {
    switch (phase_) {
      case Phase::kElecting:
        if (inbox && detail::kind_of(inbox->payload) == MsgKind::kBroadcast) {
          agent_.learn(inbox->payload);
          if (!inbox->oracle && !overheard_) overheard_ = inbox->sender;
        }
        return;
      case Phase::kHelper:
        if (inbox && detail::kind_of(inbox->payload) == MsgKind::kHelperReply && !first_reply_ &&
            round > solicit_round_ && round <= solicit_round_ + plan_.family->size()) {
          first_reply_ = inbox->sender;
        }
        return;
      case Phase::kDisseminating:
        return;
      case Phase::kEventDriven:
        break;
    }
    // Dissemination only starts once the traversal is over.
    if (agent_.informed()) return;
    if (session_ && round > session_->start()) {
      if (const auto outcome = session_->deliver(round, inbox)) on_outcome(round, *outcome, notes);
      return;
    }
    if (!inbox) return;
    switch (detail::kind_of(inbox->payload)) {
      case MsgKind::kSolicit:
        if (inbox->sender == leader_) {
          solicit_heard_ = round;
          if (!membership_) membership_ = plan_.family->membership(self_);
        }
        break;
      case MsgKind::kProbe:
        responder_.on_probe(round, inbox->sender, detail::decode_probe(inbox->payload));
        break;
      case MsgKind::kToken:
        if (detail::token_target(inbox->payload) == self_) {
          take_token(round, inbox->sender, detail::decode_token(inbox->payload));
        }
        break;
      case MsgKind::kBroadcast: {
        if (agent_.informed()) break;
        auto msg = detail::decode_broadcast(inbox->payload);
        if (msg.purpose != BroadcastPurpose::kDissemination) break;
        agent_.learn(inbox->payload, msg.start);
        final_rumors_ = std::move(msg.rumors);
        break;
      }
      default:
        break;
    }
  }

  Round quiet_until(Round now) override {
    sync(now);
    switch (phase_) {
      case Phase::kElecting:
        return std::min(agent_.next_activity(now), iteration_end());
      case Phase::kHelper:
        if (variant_ == HelperVariant::kOverheard && overheard_) return std::max(now, helper_start_);
        if (now <= solicit_round_) return solicit_round_;
        return std::max(now, solicit_round_ + plan_.family->size() + 1);
      case Phase::kDisseminating:
        return agent_.next_activity(now);
      case Phase::kEventDriven:
        break;
    }
    if (outbox_ || session_) return now;
    Round next = std::min(responder_.next_activity(now), agent_.next_activity(now));
    return std::min(next, next_reply_slot(now));
  }

  Round settled_until(Round now) override {
    sync(now);
    switch (phase_) {
      case Phase::kElecting:
        if (agent_.informed() && (overheard_ || plan_.helper_variant != HelperVariant::kOverheard)) {
          return iteration_end();
        }
        return now;
      case Phase::kHelper:
        return now;
      case Phase::kDisseminating:
        return kNever;
      case Phase::kEventDriven:
        break;
    }
    return agent_.informed() ? kNever : now;
  }

 private:
  Round nb() const noexcept { return plan_.primitive.nb_bound; }
  std::uint32_t iterations() const noexcept { return ceil_lg(plan_.universe); }
  Round iteration_end() const noexcept { return election_start_ + (iteration_ + 1) * nb(); }

  void start_iteration() {
    const Round start = election_start_ + iteration_ * nb();
    const Label mid = live_.lo + (live_.hi - live_.lo) / 2;
    std::optional<Payload> seed;
    if (live_.lo < live_.hi && self_ > mid && self_ <= live_.hi) {
      seed = detail::encode_broadcast(BroadcastMsg{BroadcastPurpose::kElection, start, {}});
    }
    agent_.begin(start, std::move(seed));
  }

  // Applies every timetable boundary that lies at or before now.
  void sync(Round now) {
    while (phase_ == Phase::kElecting && now >= iteration_end()) {
      const Label mid = live_.lo + (live_.hi - live_.lo) / 2;
      if (agent_.informed()) {
        live_.lo = mid + 1;
      } else {
        live_.hi = mid;
      }
      ++iteration_;
      if (iteration_ >= iterations()) {
        enter_post_election(live_.lo, election_start_ + iteration_ * nb());
      } else {
        start_iteration();
      }
    }
  }

  void enter_post_election(Label leader, Round boundary) {
    leader_ = leader;
    variant_ = plan_.helper_variant;
    if (self_ == leader_) {
      phase_ = Phase::kHelper;
      helper_start_ = boundary;
      solicit_round_ = boundary;
      if (variant_ == HelperVariant::kOverheard && !overheard_) {
        variant_ = HelperVariant::kSelectiveFamily;
      }
    } else {
      phase_ = Phase::kEventDriven;
      agent_.begin(std::nullopt, std::nullopt);
    }
  }

  RoundAction act_helper(Round round) {
    if (variant_ == HelperVariant::kOverheard) {
      if (round < helper_start_) return RoundAction::listen();
      helper_ = *overheard_;
      return announce();
    }
    if (round == solicit_round_) return RoundAction::transmit(detail::encode_solicit());
    if (round <= solicit_round_ + plan_.family->size()) return RoundAction::listen();
    if (!first_reply_) {
      throw Error(ErrorCode::kModelViolation,
                  "leader " + std::to_string(self_) + " heard no neighbour on the selective schedule");
    }
    helper_ = *first_reply_;
    return announce();
  }

  RoundAction announce() {
    announced_ = true;
    phase_ = Phase::kEventDriven;
    agent_.begin(std::nullopt, std::nullopt);
    start_traversal();
    return RoundAction::transmit(detail::encode_announce(helper_));
  }

  void start_traversal() {
    visited_ = true;
    visited_set_ = ExclusionSet{self_};
    collected_ = RumorSet{{self_, rumor_}};
    outbox_ = TokenMsg{helper_, false, visited_set_, collected_};
  }

  RoundAction send_token(Round round) {
    TokenMsg msg = std::move(*outbox_);
    outbox_.reset();
    passes_.push_back(TokenPass{round, self_, msg.target, msg.returning,
                                std::vector<Label>(msg.visited.labels().begin(), msg.visited.labels().end())});
    return RoundAction::transmit(detail::encode_token(msg));
  }

  void take_token(Round round, Label sender, TokenMsg msg) {
    if (!visited_) {
      visited_ = true;
      parent_ = sender;
    }
    visited_set_ = std::move(msg.visited);
    visited_set_.insert(self_);
    collected_ = std::move(msg.rumors);
    collected_.emplace(self_, rumor_);
    const Label helper = self_ == leader_ ? helper_ : parent_;
    driver_.emplace(plan_.n, plan_.universe);
    current_ = SelectRecord{self_, helper,
                            std::vector<Label>(visited_set_.labels().begin(), visited_set_.labels().end()),
                            std::nullopt, round + 1, 0, 0};
    session_.emplace(self_, helper, visited_set_, std::get<LabelRange>(driver_->next()), round + 1);
  }

  void on_outcome(Round round, const EstimateOutcome& outcome, Annotator& notes) {
    if (notes.enabled()) notes.add(session_->describe(outcome));
    session_.reset();
    driver_->record(outcome);
    const auto next = driver_->next();
    if (const auto* range = std::get_if<LabelRange>(&next)) {
      session_.emplace(self_, current_.helper, visited_set_, *range, round + 1);
      return;
    }
    current_.found = std::get<SelectDriver::Done>(next).found;
    current_.rounds = round + 1 - current_.start;
    current_.probes = driver_->probes();
    selects_.push_back(current_);
    driver_.reset();
    if (current_.found) {
      outbox_ = TokenMsg{*current_.found, false, visited_set_, collected_};
    } else if (self_ == leader_) {
      traversal_done_ = true;
      start_dissemination(round + 1, collected_);
    } else {
      outbox_ = TokenMsg{parent_, true, visited_set_, collected_};
    }
  }

  void start_dissemination(Round start, const RumorSet& collected) {
    phase_ = Phase::kDisseminating;
    final_rumors_ = collected;
    agent_.begin(start, detail::encode_broadcast(
                            BroadcastMsg{BroadcastPurpose::kDissemination, start, collected}));
  }

  bool reply_slot(Round round) const {
    if (solicit_heard_ == kNever || round <= solicit_heard_) return false;
    const Round offset = round - solicit_heard_ - 1;
    if (offset >= plan_.family->size()) return false;
    return std::binary_search(membership_->begin(), membership_->end(),
                              static_cast<std::uint32_t>(offset));
  }

  Round next_reply_slot(Round now) const {
    if (solicit_heard_ == kNever) return kNever;
    const Round first = solicit_heard_ + 1;
    const Round offset = now > first ? now - first : 0;
    auto it = std::lower_bound(membership_->begin(), membership_->end(),
                               static_cast<std::uint32_t>(std::min<Round>(offset, plan_.family->size())));
    if (it == membership_->end()) return kNever;
    return first + *it;
  }

  const ProtocolPlan& plan_;
  Label self_;
  Bytes rumor_;
  Phase phase_ = Phase::kElecting;
  HelperVariant variant_ = HelperVariant::kSelectiveFamily;

  // Leader election.
  BroadcastAgent agent_;
  Round election_start_ = 0;
  std::uint32_t iteration_ = 0;
  LabelRange live_;
  std::optional<Label> overheard_;
  Label leader_ = 0;

  // Helper designation.
  Label helper_ = 0;
  Round helper_start_ = kNever;
  Round solicit_round_ = kNever;
  Round solicit_heard_ = kNever;
  std::optional<Label> first_reply_;
  std::optional<std::vector<std::uint32_t>> membership_;
  bool announced_ = false;

  // Token traversal.
  ProbeResponder responder_;
  bool visited_ = false;
  Label parent_ = 0;
  ExclusionSet visited_set_;
  RumorSet collected_;
  std::optional<SelectDriver> driver_;
  std::optional<EstimateSession> session_;
  SelectRecord current_;
  std::optional<TokenMsg> outbox_;
  bool traversal_done_ = false;

  RumorSet final_rumors_;
  std::vector<TokenPass> passes_;
  std::vector<SelectRecord> selects_;
};

struct Network {
  std::vector<std::unique_ptr<ProtocolNode>> owned;
  std::vector<NodeBehavior*> nodes;

  Network(const Topology& topology, const ProtocolPlan& plan, const RumorSet& rumors,
          const NodeSetup& setup) {
    for (NodeIndex v = 0; v < topology.size(); ++v) {
      const Label l = topology.label(v);
      auto it = rumors.find(l);
      owned.push_back(std::make_unique<ProtocolNode>(
          plan, l, it != rumors.end() ? it->second : default_rumor(l), setup));
      nodes.push_back(owned.back().get());
    }
  }

  ProtocolNode& at(const Topology& topology, Label label) {
    const auto v = topology.index_of(label);
    if (!v) throw Error(ErrorCode::kInvalidArgument, "label " + std::to_string(label) + " not in topology");
    return *owned[*v];
  }

  ProtocolNode* self_declared_leader() {
    ProtocolNode* found = nullptr;
    for (auto& node : owned) {
      if (node->is_leader()) {
        if (found != nullptr) throw Error(ErrorCode::kModelViolation, "two nodes claim leadership");
        found = node.get();
      }
    }
    if (found == nullptr) throw Error(ErrorCode::kModelViolation, "no node claims leadership");
    return found;
  }

  std::vector<TokenPass> merged_passes() {
    std::vector<TokenPass> all;
    for (auto& node : owned) {
      for (auto& p : node->passes()) all.push_back(p);
    }
    std::ranges::sort(all, {}, &TokenPass::round);
    return all;
  }

  std::vector<SelectRecord> merged_selects() {
    std::vector<SelectRecord> all;
    for (auto& node : owned) {
      for (auto& s : node->selects()) all.push_back(s);
    }
    std::ranges::sort(all, {}, &SelectRecord::start);
    return all;
  }
};

void require_plan_fits(const Topology& topology, const ProtocolPlan& plan) {
  if (plan.n != topology.size() || plan.universe != topology.universe()) {
    throw Error(ErrorCode::kInvalidArgument, "protocol plan was made for a different (n, N)");
  }
}

}  // namespace

LeaderElection select_leader(const Topology& topology, const ProtocolPlan& plan, TraceSink* trace) {
  require_plan_fits(topology, plan);
  if (topology.size() == 1) return {topology.label(0), 0, true};
  Network net(topology, plan, {}, NodeSetup{Entry::kElection, 0, 0, 0, {}});
  Engine engine(topology, trace);
  RunOptions options;
  options.stage = kStageNames[0];
  options.budget = plan.election_rounds();
  LeaderElection out;
  out.rounds = engine.run(net.nodes, options).rounds;
  for (auto& node : net.owned) node->settle(engine.now());
  out.leader = net.owned.front()->leader();
  for (auto& node : net.owned) out.agreed = out.agreed && node->leader() == out.leader;
  return out;
}

HelperDesignation designate_helper(const Topology& topology, const ProtocolPlan& plan, Label leader,
                                   TraceSink* trace) {
  require_plan_fits(topology, plan);
  if (topology.size() < 2) throw Error(ErrorCode::kInvalidArgument, "helper designation needs n >= 2");
  Network net(topology, plan, {}, NodeSetup{Entry::kHelper, 0, leader, 0, {}});
  ProtocolNode& lead = net.at(topology, leader);
  Engine engine(topology, trace);
  RunOptions options;
  options.stage = kStageNames[1];
  options.halt = [&lead] { return lead.announced(); };
  const Round rounds = engine.run(net.nodes, options).rounds;
  return {lead.helper(), rounds};
}

TokenTraversal token_dfs(const Topology& topology, const ProtocolPlan& plan, Label leader, Label helper,
                         const RumorSet& rumors, TraceSink* trace) {
  require_plan_fits(topology, plan);
  if (topology.size() < 2) throw Error(ErrorCode::kInvalidArgument, "token traversal needs n >= 2");
  Network net(topology, plan, rumors, NodeSetup{Entry::kToken, 0, leader, helper, {}});
  ProtocolNode& lead = net.at(topology, leader);
  Engine engine(topology, trace);
  RunOptions options;
  options.stage = kStageNames[2];
  options.halt = [&lead] { return lead.traversal_done(); };
  TokenTraversal out;
  out.rounds = engine.run(net.nodes, options).rounds;
  out.token = Token{lead.visited(), lead.collected(), leader, helper};
  out.passes = net.merged_passes();
  out.selects = net.merged_selects();
  return out;
}

Dissemination disseminate(const Topology& topology, const ProtocolPlan& plan, Label leader,
                          const RumorSet& collected, TraceSink* trace) {
  require_plan_fits(topology, plan);
  Dissemination out;
  if (topology.size() == 1) {
    out.final_rumors.push_back(collected);
    return out;
  }
  Network net(topology, plan, {}, NodeSetup{Entry::kDissemination, 0, leader, 0, collected});
  Engine engine(topology, trace);
  RunOptions options;
  options.stage = kStageNames[3];
  options.budget = plan.primitive.nb_bound;
  out.rounds = engine.run(net.nodes, options).rounds;
  for (auto& node : net.owned) out.final_rumors.push_back(node->final_rumors());
  return out;
}

GossipResult gossip(const Topology& topology, const GossipConfig& config, TraceSink* trace) {
  if (!topology.connected()) {
    throw Error(ErrorCode::kDisconnected, "gossiping needs a connected topology");
  }
  const ProtocolPlan plan = make_plan(topology.size(), topology.universe(), config);
  return gossip(topology, plan, initial_rumors(topology), trace);
}

GossipResult gossip(const Topology& topology, const ProtocolPlan& plan, const RumorSet& rumors,
                    TraceSink* trace) {
  if (!topology.connected()) {
    throw Error(ErrorCode::kDisconnected, "gossiping needs a connected topology");
  }
  require_plan_fits(topology, plan);
  GossipResult result;
  result.nb_bound = plan.primitive.nb_bound;
  result.family_size = plan.family->size();
  if (topology.size() == 1) {
    const Label l = topology.label(0);
    result.leader = l;
    auto it = rumors.find(l);
    result.final_rumors.push_back(RumorSet{{l, it != rumors.end() ? it->second : default_rumor(l)}});
    return result;
  }

  Network net(topology, plan, rumors, NodeSetup{Entry::kElection, 0, 0, 0, {}});
  Engine engine(topology, trace);

  RunOptions election;
  election.stage = kStageNames[0];
  election.budget = plan.election_rounds();
  result.stage_rounds[0] = engine.run(net.nodes, election).rounds;
  for (auto& node : net.owned) node->settle(engine.now());
  ProtocolNode* leader = net.self_declared_leader();
  result.leader = leader->leader();
  for (auto& node : net.owned) result.leaders_agree = result.leaders_agree && node->leader() == result.leader;

  RunOptions helper;
  helper.stage = kStageNames[1];
  helper.halt = [leader] { return leader->announced(); };
  result.stage_rounds[1] = engine.run(net.nodes, helper).rounds;
  result.helper = leader->helper();

  RunOptions traversal;
  traversal.stage = kStageNames[2];
  traversal.halt = [leader] { return leader->traversal_done(); };
  result.stage_rounds[2] = engine.run(net.nodes, traversal).rounds;

  RunOptions dissemination;
  dissemination.stage = kStageNames[3];
  dissemination.budget = plan.primitive.nb_bound;
  result.stage_rounds[3] = engine.run(net.nodes, dissemination).rounds;

  for (Round r : result.stage_rounds) result.total += r;
  for (auto& node : net.owned) result.final_rumors.push_back(node->final_rumors());
  result.token_log = net.merged_passes();
  result.token_passes = result.token_log.size();
  result.select_log = net.merged_selects();
  return result;
}

}  // namespace radiogossip
