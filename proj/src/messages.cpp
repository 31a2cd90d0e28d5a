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

#include "messages.hpp"

namespace radiogossip::detail {

namespace {

void write_rumors(PayloadWriter& w, const RumorSet& rumors) {
  w.varint(rumors.size());
  for (const auto& [origin, body] : rumors) {
    w.varint(origin);
    w.blob(body);
  }
}

RumorSet read_rumors(PayloadReader& r) {
  RumorSet rumors;
  const std::uint64_t count = r.varint();
  for (std::uint64_t i = 0; i < count; ++i) {
    const Label origin = r.varint();
    rumors.emplace(origin, r.blob());
  }
  return rumors;
}

void expect(PayloadReader& r, MsgKind kind) {
  if (r.u8() != static_cast<std::uint8_t>(kind)) {
    throw Error(ErrorCode::kParse, "unexpected message kind");
  }
}

}  // namespace

MsgKind kind_of(const Payload& payload) noexcept {
  const auto bytes = payload.bytes();
  if (bytes.empty() || bytes[0] < 1 || bytes[0] > 7) return MsgKind::kUnknown;
  return static_cast<MsgKind>(bytes[0]);
}

Payload encode_probe(const ProbeMsg& msg) {
  PayloadWriter w;
  w.u8(static_cast<std::uint8_t>(MsgKind::kProbe))
      .varint(msg.helper)
      .varint(msg.range.lo)
      .varint(msg.range.hi)
      .labels(msg.excluded.labels());
  return std::move(w).finish();
}

ProbeMsg decode_probe(const Payload& payload) {
  PayloadReader r(payload);
  expect(r, MsgKind::kProbe);
  ProbeMsg msg;
  msg.helper = r.varint();
  msg.range.lo = r.varint();
  msg.range.hi = r.varint();
  msg.excluded = ExclusionSet(r.labels());
  return msg;
}

Payload encode_reply(Label initiator) {
  PayloadWriter w;
  w.u8(static_cast<std::uint8_t>(MsgKind::kReply)).varint(initiator);
  return std::move(w).finish();
}

Label decode_reply(const Payload& payload) {
  PayloadReader r(payload);
  expect(r, MsgKind::kReply);
  return r.varint();
}

Payload encode_token(const TokenMsg& msg) {
  PayloadWriter w;
  w.u8(static_cast<std::uint8_t>(MsgKind::kToken))
      .varint(msg.target)
      .u8(msg.returning ? 1 : 0)
      .labels(msg.visited.labels());
  write_rumors(w, msg.rumors);
  return std::move(w).finish();
}

TokenMsg decode_token(const Payload& payload) {
  PayloadReader r(payload);
  expect(r, MsgKind::kToken);
  TokenMsg msg;
  msg.target = r.varint();
  msg.returning = r.u8() != 0;
  msg.visited = ExclusionSet(r.labels());
  msg.rumors = read_rumors(r);
  return msg;
}

Label token_target(const Payload& payload) {
  PayloadReader r(payload);
  expect(r, MsgKind::kToken);
  return r.varint();
}

Payload encode_broadcast(const BroadcastMsg& msg) {
  PayloadWriter w;
  w.u8(static_cast<std::uint8_t>(MsgKind::kBroadcast))
      .u8(static_cast<std::uint8_t>(msg.purpose))
      .varint(msg.start);
  write_rumors(w, msg.rumors);
  return std::move(w).finish();
}

BroadcastMsg decode_broadcast(const Payload& payload) {
  PayloadReader r(payload);
  expect(r, MsgKind::kBroadcast);
  BroadcastMsg msg;
  msg.purpose = static_cast<BroadcastPurpose>(r.u8());
  msg.start = r.varint();
  msg.rumors = read_rumors(r);
  return msg;
}

Payload encode_solicit() {
  PayloadWriter w;
  w.u8(static_cast<std::uint8_t>(MsgKind::kSolicit));
  return std::move(w).finish();
}

Payload encode_helper_reply() {
  PayloadWriter w;
  w.u8(static_cast<std::uint8_t>(MsgKind::kHelperReply));
  return std::move(w).finish();
}

Payload encode_announce(Label helper) {
  PayloadWriter w;
  w.u8(static_cast<std::uint8_t>(MsgKind::kAnnounce)).varint(helper);
  return std::move(w).finish();
}

Label decode_announce(const Payload& payload) {
  PayloadReader r(payload);
  expect(r, MsgKind::kAnnounce);
  return r.varint();
}

std::uint64_t digest_of(const ExclusionSet& set) {
  PayloadWriter w;
  w.labels(set.labels());
  return std::move(w).finish().digest();
}

}  // namespace radiogossip::detail
