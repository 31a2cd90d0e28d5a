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

#include "radiogossip/payload.hpp"

#include <algorithm>

namespace radiogossip {

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ull;
  }
  return h;
}

Payload::Payload() : Payload(Bytes{}) {}

Payload::Payload(Bytes bytes) {
  const std::uint64_t digest = fnv1a64(bytes);
  data_ = std::make_shared<const Data>(Data{std::move(bytes), digest});
}

Payload Payload::from_string(std::string_view text) {
  return Payload(Bytes(text.begin(), text.end()));
}

std::span<const std::uint8_t> Payload::bytes() const noexcept {
  return data_->bytes;
}

std::uint64_t Payload::digest() const noexcept { return data_->digest; }

bool operator==(const Payload& a, const Payload& b) noexcept {
  if (a.data_ == b.data_) return true;
  return a.data_->digest == b.data_->digest &&
         std::ranges::equal(a.data_->bytes, b.data_->bytes);
}

PayloadWriter& PayloadWriter::u8(std::uint8_t value) {
  out_.push_back(value);
  return *this;
}

PayloadWriter& PayloadWriter::varint(std::uint64_t value) {
  while (value >= 0x80) {
    out_.push_back(static_cast<std::uint8_t>(value | 0x80));
    value >>= 7;
  }
  out_.push_back(static_cast<std::uint8_t>(value));
  return *this;
}

PayloadWriter& PayloadWriter::blob(std::span<const std::uint8_t> data) {
  varint(data.size());
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}

PayloadWriter& PayloadWriter::labels(std::span<const Label> labels) {
  varint(labels.size());
  Label prev = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0 && labels[i] <= prev) {
      throw Error(ErrorCode::kInvalidArgument, "label set must be strictly increasing");
    }
    varint(labels[i] - prev);
    prev = labels[i];
  }
  return *this;
}

Payload PayloadWriter::finish() && { return Payload(std::move(out_)); }

PayloadReader::PayloadReader(const Payload& payload) : data_(payload.bytes()) {}

std::uint8_t PayloadReader::u8() {
  if (pos_ >= data_.size()) throw Error(ErrorCode::kParse, "payload truncated");
  return data_[pos_++];
}

std::uint64_t PayloadReader::varint() {
  std::uint64_t value = 0;
  for (unsigned shift = 0; shift < 64; shift += 7) {
    const std::uint8_t b = u8();
    value |= static_cast<std::uint64_t>(b & 0x7f) << shift;
    if ((b & 0x80) == 0) return value;
  }
  throw Error(ErrorCode::kParse, "varint too long");
}

Bytes PayloadReader::blob() {
  const std::uint64_t len = varint();
  if (len > data_.size() - pos_) throw Error(ErrorCode::kParse, "payload truncated");
  Bytes out(data_.begin() + static_cast<std::ptrdiff_t>(pos_),
            data_.begin() + static_cast<std::ptrdiff_t>(pos_ + len));
  pos_ += len;
  return out;
}

std::vector<Label> PayloadReader::labels() {
  const std::uint64_t count = varint();
  if (count > data_.size() - pos_) throw Error(ErrorCode::kParse, "payload truncated");
  std::vector<Label> out;
  out.reserve(count);
  Label prev = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    prev += varint();
    out.push_back(prev);
  }
  return out;
}

}  // namespace radiogossip
