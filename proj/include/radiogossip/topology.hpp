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

#ifndef RADIOGOSSIP_TOPOLOGY_HPP_
#define RADIOGOSSIP_TOPOLOGY_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radiogossip/common.hpp"

namespace radiogossip {

using Edge = std::pair<NodeIndex, NodeIndex>;

/// Immutable bidirectional radio network with injective labels in [1..n^c].
///
/// Adjacency is symmetric and irreflexive; duplicate edges collapse. The
/// diameter is computed once at construction (nullopt when disconnected).
class Topology {
 public:
  /// Validates and builds a topology. Throws Error with kDuplicateLabel,
  /// kLabelOutOfUniverse, kSelfLoop or kIndexOutOfRange on the corresponding
  /// violation, and kInvalidArgument for size mismatches.
  static Topology build(std::uint32_t n, std::uint32_t c,
                        std::span<const Edge> edges,
                        std::span<const Label> labels);

  std::uint32_t size() const noexcept { return n_; }
  std::uint32_t exponent() const noexcept { return c_; }
  /// N = n^c.
  Label universe() const noexcept { return universe_; }

  Label label(NodeIndex v) const { return labels_.at(v); }
  std::span<const Label> labels() const noexcept { return labels_; }
  std::optional<NodeIndex> index_of(Label label) const;

  std::span<const NodeIndex> neighbors(NodeIndex v) const;
  bool adjacent(NodeIndex u, NodeIndex v) const;
  std::size_t degree(NodeIndex v) const { return neighbors(v).size(); }

  /// Canonical edge list: u < v, sorted.
  std::vector<Edge> edges() const;

  bool connected() const noexcept { return diameter_.has_value(); }
  std::optional<std::uint32_t> diameter() const noexcept { return diameter_; }

  /// Hop distances from `source`; unreachable nodes get UINT32_MAX.
  std::vector<std::uint32_t> distances_from(NodeIndex source) const;

  Label max_label() const;

 private:
  Topology() = default;

  std::uint32_t n_ = 0;
  std::uint32_t c_ = 1;
  Label universe_ = 1;
  std::vector<Label> labels_;
  std::vector<std::pair<Label, NodeIndex>> by_label_;
  std::vector<std::uint32_t> offsets_;
  std::vector<NodeIndex> adjacency_;
  std::optional<std::uint32_t> diameter_;
};

bool is_connected(const Topology& topology);

/// Text format: `n c`, then the labels by node index, then `u v` edge lines.
/// `#` starts a comment that runs to the end of the line.
Topology read_topology(std::istream& in);
Topology load_topology(const std::string& path);
void write_topology(std::ostream& out, const Topology& topology);
void save_topology(const std::string& path, const Topology& topology);

}  // namespace radiogossip

#endif  // RADIOGOSSIP_TOPOLOGY_HPP_
