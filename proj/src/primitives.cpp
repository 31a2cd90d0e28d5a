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

#include "radiogossip/primitives.hpp"

#include <algorithm>
#include <cstdio>
#include <memory>

#include "protocol_parts.hpp"
#include "radiogossip/engine.hpp"

namespace radiogossip {

ExclusionSet::ExclusionSet(std::initializer_list<Label> labels)
    : ExclusionSet(std::vector<Label>(labels)) {}

ExclusionSet::ExclusionSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::ranges::sort(labels_);
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
}

bool ExclusionSet::contains(Label l) const noexcept {
  return std::binary_search(labels_.begin(), labels_.end(), l);
}

bool ExclusionSet::insert(Label l) {
  auto it = std::ranges::lower_bound(labels_, l);
  if (it != labels_.end() && *it == l) return false;
  labels_.insert(it, l);
  return true;
}

std::string to_string(const EstimateOutcome& outcome) {
  switch (outcome.kind) {
    case EstimateOutcome::Kind::kZeroNew: return "zero";
    case EstimateOutcome::Kind::kOneNew: return "one(" + std::to_string(outcome.label) + ")";
    case EstimateOutcome::Kind::kTwoPlus: return "two-plus";
  }
  return "?";
}

bool in_probe_slice(Label label, Label helper, const ExclusionSet& excluded, LabelRange range) {
  return range.contains(label) && label != helper && !excluded.contains(label);
}

bool in_echo_slice(Label label, Label helper, const ExclusionSet& excluded, LabelRange range) {
  return label == helper || (range.contains(label) && !excluded.contains(label));
}

Round binary_select_round_bound(Label universe) noexcept {
  return kEstimateRounds * (2 * Round{ceil_lg(universe)} + 3);
}

SelectDriver::SelectDriver(std::uint32_t n, Label universe)
    : universe_(universe), exponent_(ceil_lg(n)), range_(LabelRange::full(universe)) {}

std::variant<LabelRange, SelectDriver::Done> SelectDriver::next() const {
  switch (phase_) {
    case Phase::kExistence: return LabelRange::full(universe_);
    case Phase::kDoubling: return LabelRange{1, Label{1} << exponent_};
    case Phase::kBisect:
      if (range_.lo == range_.hi) return range_;
      return LabelRange{range_.lo, range_.lo + (range_.hi - range_.lo) / 2};
    case Phase::kDone: break;
  }
  return Done{found_};
}

void SelectDriver::enter_bisect(Label lo, Label hi) {
  phase_ = Phase::kBisect;
  range_ = {lo, hi};
}

void SelectDriver::record(const EstimateOutcome& outcome) {
  using Kind = EstimateOutcome::Kind;
  ++probes_;
  switch (phase_) {
    case Phase::kExistence:
      if (outcome.kind == Kind::kZeroNew) {
        phase_ = Phase::kDone;
      } else if (exponent_ < 64 && (Label{1} << exponent_) < universe_) {
        phase_ = Phase::kDoubling;
      } else {
        enter_bisect(1, universe_);
      }
      return;
    case Phase::kDoubling: {
      const Label top = Label{1} << exponent_;
      if (outcome.kind == Kind::kOneNew) {
        found_ = outcome.label;
        phase_ = Phase::kDone;
      } else if (outcome.kind == Kind::kTwoPlus) {
        enter_bisect(1, top);
      } else if ((top << 1) < universe_) {
        ++exponent_;
      } else {
        enter_bisect(1, universe_);
      }
      return;
    }
    case Phase::kBisect: {
      if (range_.lo == range_.hi) {
        if (outcome.kind != Kind::kOneNew) {
          throw Error(ErrorCode::kModelViolation,
                      "bisection reached label " + std::to_string(range_.lo) +
                          " but the confirming estimate disagrees");
        }
        found_ = outcome.label;
        phase_ = Phase::kDone;
        return;
      }
      const Label mid = range_.lo + (range_.hi - range_.lo) / 2;
      if (outcome.kind == Kind::kOneNew) {
        found_ = outcome.label;
        phase_ = Phase::kDone;
      } else if (outcome.kind == Kind::kTwoPlus) {
        range_.hi = mid;
      } else {
        range_.lo = mid + 1;
      }
      return;
    }
    case Phase::kDone:
      throw Error(ErrorCode::kInvalidArgument, "select already finished");
  }
}

namespace detail {

EstimateSession::EstimateSession(Label self, Label helper, const ExclusionSet& excluded,
                                 LabelRange range, Round start)
    : self_(self),
      helper_(helper),
      range_(range),
      start_(start),
      probe_(encode_probe(ProbeMsg{helper, range, excluded})),
      excluded_digest_(digest_of(excluded)) {}

RoundAction EstimateSession::act(Round round) const {
  return round == start_ ? RoundAction::transmit(probe_) : RoundAction::listen();
}

std::optional<EstimateOutcome> EstimateSession::deliver(Round round, const Inbox& inbox) {
  auto reply_sender = [&]() -> std::optional<Label> {
    if (!inbox) return std::nullopt;
    if (kind_of(inbox->payload) != MsgKind::kReply || decode_reply(inbox->payload) != self_) {
      throw Error(ErrorCode::kModelViolation,
                  "estimate at " + std::to_string(self_) + " heard a foreign message");
    }
    return inbox->sender;
  };
  if (round == start_ + 1) {
    first_ = reply_sender();
    return std::nullopt;
  }
  if (round != start_ + 2) return std::nullopt;
  const std::optional<Label> second = reply_sender();
  if (first_ && second) {
    throw Error(ErrorCode::kModelViolation,
                "estimate at " + std::to_string(self_) + " heard both listening steps");
  }
  if (first_) return EstimateOutcome::one(*first_);
  if (second) {
    if (*second != helper_) {
      throw Error(ErrorCode::kModelViolation,
                  "estimate at " + std::to_string(self_) + " heard " + std::to_string(*second) +
                      " alone in the echo step instead of the helper");
    }
    return EstimateOutcome::zero();
  }
  return EstimateOutcome::two_plus();
}

std::string EstimateSession::describe(const EstimateOutcome& outcome) const {
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(excluded_digest_));
  return "estimate s=" + std::to_string(self_) + " h=" + std::to_string(helper_) + " X=" +
         digest + " Y=" + std::to_string(range_.lo) + ".." + std::to_string(range_.hi) +
         " outcome=" + to_string(outcome);
}

void ProbeResponder::on_probe(Round round, Label initiator, const ProbeMsg& probe) {
  first_ = in_probe_slice(self_, probe.helper, probe.excluded, probe.range) ? round + 1 : kNever;
  second_ = in_echo_slice(self_, probe.helper, probe.excluded, probe.range) ? round + 2 : kNever;
  if (first_ != kNever || second_ != kNever) reply_ = encode_reply(initiator);
}

std::optional<RoundAction> ProbeResponder::act(Round round) {
  if (round == first_) {
    first_ = kNever;
    return RoundAction::transmit(reply_);
  }
  if (round == second_) {
    second_ = kNever;
    return RoundAction::transmit(reply_);
  }
  if (first_ < round) first_ = kNever;
  if (second_ < round) second_ = kNever;
  return std::nullopt;
}

Round ProbeResponder::next_activity(Round now) const noexcept {
  Round next = kNever;
  if (first_ >= now) next = std::min(next, first_);
  if (second_ >= now) next = std::min(next, second_);
  return next;
}

}  // namespace detail

namespace {

using detail::EstimateSession;
using detail::ProbeResponder;

class ResponderNode final : public NodeBehavior {
 public:
  explicit ResponderNode(Label self) : responder_(self) {}

  RoundAction act(Round round) override {
    if (auto reply = responder_.act(round)) return *reply;
    return RoundAction::listen();
  }
  void deliver(Round round, const Inbox& inbox, Annotator&) override {
    if (inbox && detail::kind_of(inbox->payload) == detail::MsgKind::kProbe) {
      responder_.on_probe(round, inbox->sender, detail::decode_probe(inbox->payload));
    }
  }
  Round quiet_until(Round now) override { return responder_.next_activity(now); }

 private:
  ProbeResponder responder_;
};

// Runs either a single estimate or a full select from the initiator.
class InitiatorNode final : public NodeBehavior {
 public:
  InitiatorNode(Label self, Label helper, ExclusionSet excluded, std::optional<SelectDriver> driver,
                LabelRange single_range, Round start)
      : self_(self), helper_(helper), excluded_(std::move(excluded)), driver_(std::move(driver)) {
    if (driver_) {
      open(std::get<LabelRange>(driver_->next()), start);
    } else {
      open(single_range, start);
    }
  }

  RoundAction act(Round round) override {
    return session_ ? session_->act(round) : RoundAction::idle();
  }

  void deliver(Round round, const Inbox& inbox, Annotator& notes) override {
    if (!session_) return;
    const auto outcome = session_->deliver(round, inbox);
    if (!outcome) return;
    if (notes.enabled()) notes.add(session_->describe(*outcome));
    last_ = *outcome;
    session_.reset();
    if (!driver_) {
      finished_ = true;
      return;
    }
    driver_->record(*outcome);
    const auto next = driver_->next();
    if (const auto* range = std::get_if<LabelRange>(&next)) {
      open(*range, round + 1);
    } else {
      found_ = std::get<SelectDriver::Done>(next).found;
      finished_ = true;
    }
  }

  bool finished() const noexcept { return finished_; }
  EstimateOutcome last() const noexcept { return last_; }
  std::optional<Label> found() const noexcept { return found_; }
  std::uint32_t probes() const noexcept { return driver_ ? driver_->probes() : 1; }

 private:
  void open(LabelRange range, Round start) {
    session_.emplace(self_, helper_, excluded_, range, start);
  }

  Label self_;
  Label helper_;
  ExclusionSet excluded_;
  std::optional<SelectDriver> driver_;
  std::optional<EstimateSession> session_;
  bool finished_ = false;
  EstimateOutcome last_;
  std::optional<Label> found_;
};

struct PrimitiveRun {
  Round rounds = 0;
  std::unique_ptr<InitiatorNode> initiator;
};

PrimitiveRun run_primitive(const Topology& topology, Label initiator, Label helper,
                           const ExclusionSet& excluded, std::optional<SelectDriver> driver,
                           LabelRange range, const char* stage, TraceSink* trace) {
  const auto s = topology.index_of(initiator);
  if (!s) throw Error(ErrorCode::kInvalidArgument, "initiator label not in topology");
  if (!topology.index_of(helper)) throw Error(ErrorCode::kInvalidArgument, "helper label not in topology");

  Engine engine(topology, trace);
  std::vector<std::unique_ptr<NodeBehavior>> owned;
  std::vector<NodeBehavior*> nodes;
  PrimitiveRun run;
  for (NodeIndex v = 0; v < topology.size(); ++v) {
    if (v == *s) {
      run.initiator = std::make_unique<InitiatorNode>(initiator, helper, excluded, driver, range,
                                                      engine.now());
      nodes.push_back(run.initiator.get());
    } else {
      owned.push_back(std::make_unique<ResponderNode>(topology.label(v)));
      nodes.push_back(owned.back().get());
    }
  }
  InitiatorNode* init = run.initiator.get();
  RunOptions options;
  options.stage = stage;
  options.halt = [init] { return init->finished(); };
  run.rounds = engine.run(nodes, options).rounds;
  return run;
}

}  // namespace

EstimateReport estimate(const Topology& topology, Label initiator, Label helper,
                        const ExclusionSet& excluded, LabelRange range, TraceSink* trace) {
  auto run = run_primitive(topology, initiator, helper, excluded, std::nullopt, range, "estimate",
                           trace);
  return {run.initiator->last(), run.rounds};
}

SelectReport binary_select(const Topology& topology, Label initiator, Label helper,
                           const ExclusionSet& excluded, TraceSink* trace) {
  SelectDriver driver(topology.size(), topology.universe());
  auto run = run_primitive(topology, initiator, helper, excluded, driver, LabelRange{}, "binary-select",
                           trace);
  return {run.initiator->found(), run.rounds, run.initiator->probes()};
}

}  // namespace radiogossip
