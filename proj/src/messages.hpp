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

#ifndef RADIOGOSSIP_SRC_MESSAGES_HPP_
#define RADIOGOSSIP_SRC_MESSAGES_HPP_

#include <cstdint>

#include "radiogossip/gossip.hpp"
#include "radiogossip/payload.hpp"
#include "radiogossip/primitives.hpp"

namespace radiogossip::detail {

enum class MsgKind : std::uint8_t {
  kUnknown = 0,
  kBroadcast = 1,
  kSolicit = 2,
  kHelperReply = 3,
  kAnnounce = 4,
  kProbe = 5,
  kReply = 6,
  kToken = 7,
};

enum class BroadcastPurpose : std::uint8_t { kElection = 1, kDissemination = 2 };

struct ProbeMsg {
  Label helper = 0;
  LabelRange range;
  ExclusionSet excluded;
};

struct TokenMsg {
  Label target = 0;
  bool returning = false;
  ExclusionSet visited;
  RumorSet rumors;
};

struct BroadcastMsg {
  BroadcastPurpose purpose = BroadcastPurpose::kElection;
  Round start = 0;
  RumorSet rumors;
};

MsgKind kind_of(const Payload& payload) noexcept;

Payload encode_probe(const ProbeMsg& msg);
ProbeMsg decode_probe(const Payload& payload);

Payload encode_reply(Label initiator);
Label decode_reply(const Payload& payload);

Payload encode_token(const TokenMsg& msg);
TokenMsg decode_token(const Payload& payload);
/// Reads only the addressee, so bystanders skip the full decode.
Label token_target(const Payload& payload);

Payload encode_broadcast(const BroadcastMsg& msg);
BroadcastMsg decode_broadcast(const Payload& payload);

Payload encode_solicit();
Payload encode_helper_reply();
Payload encode_announce(Label helper);
Label decode_announce(const Payload& payload);

std::uint64_t digest_of(const ExclusionSet& set);

}  // namespace radiogossip::detail

#endif  // RADIOGOSSIP_SRC_MESSAGES_HPP_
