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

#ifndef RADIOGOSSIP_SRC_PROTOCOL_PARTS_HPP_
#define RADIOGOSSIP_SRC_PROTOCOL_PARTS_HPP_

#include <optional>

#include "messages.hpp"
#include "radiogossip/engine.hpp"
#include "radiogossip/primitives.hpp"

namespace radiogossip::detail {

// Initiator side of one estimate: transmit at start, listen at start+1 and
// start+2, classify after the last delivery.
class EstimateSession {
 public:
  EstimateSession(Label self, Label helper, const ExclusionSet& excluded, LabelRange range,
                  Round start);

  Round start() const noexcept { return start_; }
  LabelRange range() const noexcept { return range_; }
  RoundAction act(Round round) const;
  /// Returns the outcome on the final round, nullopt before it.
  std::optional<EstimateOutcome> deliver(Round round, const Inbox& inbox);
  std::string describe(const EstimateOutcome& outcome) const;

 private:
  Label self_;
  Label helper_;
  LabelRange range_;
  Round start_;
  Payload probe_;
  std::uint64_t excluded_digest_;
  std::optional<Label> first_;
};

// Neighbour side: on hearing a probe, answer in the first listening step if
// in Y - X - {h} and in the second if in (Y - X) ∪ {h}.
class ProbeResponder {
 public:
  explicit ProbeResponder(Label self) : self_(self) {}

  void on_probe(Round round, Label initiator, const ProbeMsg& probe);
  /// The reply to transmit this round, if one is scheduled.
  std::optional<RoundAction> act(Round round);
  Round next_activity(Round now) const noexcept;

 private:
  Label self_;
  Round first_ = kNever;
  Round second_ = kNever;
  Payload reply_;
};

}  // namespace radiogossip::detail

#endif  // RADIOGOSSIP_SRC_PROTOCOL_PARTS_HPP_
