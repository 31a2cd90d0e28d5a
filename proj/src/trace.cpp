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

#include "radiogossip/trace.hpp"

#include <cstdio>
#include <ostream>

#include "json.hpp"

namespace radiogossip {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::string to_json_line(const RoundRecord& record) {
  nlohmann::ordered_json j;
  j["round"] = record.round;
  j["stage"] = record.stage;
  auto tx = nlohmann::ordered_json::array();
  for (const auto& [label, digest] : record.tx) {
    tx.push_back(std::to_string(label) + ":" + hex64(digest));
  }
  j["tx"] = std::move(tx);
  auto rx = nlohmann::ordered_json::array();
  for (const auto& [label, sender] : record.rx) {
    rx.push_back(std::to_string(label) + ":" + std::to_string(sender));
  }
  j["rx"] = std::move(rx);
  if (record.oracle) j["oracle"] = true;
  if (!record.notes.empty()) j["notes"] = record.notes;
  return j.dump();
}

void ExecutionTrace::record(const RoundRecord& record) { records_.push_back(record); }

std::map<std::string, Round> ExecutionTrace::stage_rounds() const {
  std::map<std::string, Round> out;
  for (const auto& r : records_) ++out[r.stage];
  return out;
}

std::string ExecutionTrace::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    out += to_json_line(r);
    out += '\n';
  }
  return out;
}

void JsonlTraceWriter::record(const RoundRecord& record) {
  out_ << to_json_line(record) << '\n';
}

}  // namespace radiogossip
