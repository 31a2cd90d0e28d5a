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

#ifndef RADIOGOSSIP_TRACE_HPP_
#define RADIOGOSSIP_TRACE_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "radiogossip/common.hpp"

namespace radiogossip {

/// One simulated round as seen by an omniscient observer.
struct RoundRecord {
  Round round = 0;
  std::string stage;
  /// True when the engine performed an oracle-assisted flood this round.
  bool oracle = false;
  /// (transmitter label, payload digest), in node-index order.
  std::vector<std::pair<Label, std::uint64_t>> tx;
  /// (receiver label, sender label), in node-index order.
  std::vector<std::pair<Label, Label>> rx;
  std::vector<std::string> notes;
};

/// Single JSON object per round: round, stage, tx, rx (+ oracle, notes).
std::string to_json_line(const RoundRecord& record);

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void record(const RoundRecord& record) = 0;
};

/// In-memory trace, mostly for tests and determinism checks.
class ExecutionTrace final : public TraceSink {
 public:
  void record(const RoundRecord& record) override;

  const std::vector<RoundRecord>& records() const noexcept { return records_; }
  std::map<std::string, Round> stage_rounds() const;
  std::string to_jsonl() const;

 private:
  std::vector<RoundRecord> records_;
};

/// Streams records as line-delimited JSON.
class JsonlTraceWriter final : public TraceSink {
 public:
  explicit JsonlTraceWriter(std::ostream& out) : out_(out) {}
  void record(const RoundRecord& record) override;

 private:
  std::ostream& out_;
};

}  // namespace radiogossip

#endif  // RADIOGOSSIP_TRACE_HPP_
