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

#ifndef RADIOGOSSIP_PAYLOAD_HPP_
#define RADIOGOSSIP_PAYLOAD_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "radiogossip/common.hpp"

namespace radiogossip {

using Bytes = std::vector<std::uint8_t>;

/// 64-bit FNV-1a over raw bytes. Used for trace digests.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

/// Immutable message body. Copies share the underlying buffer.
class Payload {
 public:
  Payload();
  explicit Payload(Bytes bytes);
  static Payload from_string(std::string_view text);

  std::span<const std::uint8_t> bytes() const noexcept;
  std::size_t size() const noexcept { return bytes().size(); }
  bool empty() const noexcept { return size() == 0; }
  std::uint64_t digest() const noexcept;

  friend bool operator==(const Payload& a, const Payload& b) noexcept;

 private:
  struct Data {
    Bytes bytes;
    std::uint64_t digest;
  };
  std::shared_ptr<const Data> data_;
};

/// Canonical encoder: varint integers, length-prefixed blobs, and label
/// sets written as sorted deltas, so equal content gives equal bytes.
class PayloadWriter {
 public:
  PayloadWriter& u8(std::uint8_t value);
  PayloadWriter& varint(std::uint64_t value);
  PayloadWriter& blob(std::span<const std::uint8_t> data);
  /// `labels` must be strictly increasing.
  PayloadWriter& labels(std::span<const Label> labels);

  Payload finish() &&;

 private:
  Bytes out_;
};

/// Decoder matching PayloadWriter. Throws Error(kParse) on truncation.
class PayloadReader {
 public:
  explicit PayloadReader(const Payload& payload);

  std::uint8_t u8();
  std::uint64_t varint();
  Bytes blob();
  std::vector<Label> labels();
  bool done() const noexcept { return pos_ == data_.size(); }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace radiogossip

#endif  // RADIOGOSSIP_PAYLOAD_HPP_
