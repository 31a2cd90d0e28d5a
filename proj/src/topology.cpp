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

#include "radiogossip/topology.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace radiogossip {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

}  // namespace

Topology Topology::build(std::uint32_t n, std::uint32_t c,
                         std::span<const Edge> edges,
                         std::span<const Label> labels) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "node count must be positive");
  if (c == 0) throw Error(ErrorCode::kInvalidArgument, "label exponent must be >= 1");
  if (labels.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected " + std::to_string(n) + " labels, got " +
                    std::to_string(labels.size()));
  }

  Topology t;
  t.n_ = n;
  t.c_ = c;
  t.universe_ = checked_pow(n, c);
  t.labels_.assign(labels.begin(), labels.end());

  for (NodeIndex v = 0; v < n; ++v) {
    const Label l = t.labels_[v];
    if (l < 1 || l > t.universe_) {
      throw Error(ErrorCode::kLabelOutOfUniverse,
                  "label " + std::to_string(l) + " of node " + std::to_string(v) +
                      " is outside [1.." + std::to_string(t.universe_) + "]");
    }
    t.by_label_.emplace_back(l, v);
  }
  std::ranges::sort(t.by_label_);
  for (std::size_t i = 1; i < t.by_label_.size(); ++i) {
    if (t.by_label_[i].first == t.by_label_[i - 1].first) {
      throw Error(ErrorCode::kDuplicateLabel,
                  "label " + std::to_string(t.by_label_[i].first) +
                      " is shared by nodes " + std::to_string(t.by_label_[i - 1].second) +
                      " and " + std::to_string(t.by_label_[i].second));
    }
  }

  std::vector<Edge> sym;
  sym.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") references a node outside [0.." + std::to_string(n - 1) + "]");
    }
    if (u == v) {
      throw Error(ErrorCode::kSelfLoop, "self-loop at node " + std::to_string(u));
    }
    sym.emplace_back(u, v);
    sym.emplace_back(v, u);
  }
  std::ranges::sort(sym);
  sym.erase(std::unique(sym.begin(), sym.end()), sym.end());

  t.offsets_.assign(n + 1, 0);
  for (const auto& e : sym) ++t.offsets_[e.first + 1];
  for (std::uint32_t v = 0; v < n; ++v) t.offsets_[v + 1] += t.offsets_[v];
  t.adjacency_.reserve(sym.size());
  for (const auto& e : sym) t.adjacency_.push_back(e.second);

  std::uint32_t diameter = 0;
  for (NodeIndex v = 0; v < n; ++v) {
    const auto dist = t.distances_from(v);
    for (std::uint32_t d : dist) {
      if (d == kUnreached) {
        t.diameter_.reset();
        return t;
      }
      diameter = std::max(diameter, d);
    }
  }
  t.diameter_ = diameter;
  return t;
}

std::optional<NodeIndex> Topology::index_of(Label label) const {
  auto it = std::ranges::lower_bound(by_label_, std::pair<Label, NodeIndex>{label, 0});
  if (it == by_label_.end() || it->first != label) return std::nullopt;
  return it->second;
}

std::span<const NodeIndex> Topology::neighbors(NodeIndex v) const {
  if (v >= n_) throw Error(ErrorCode::kIndexOutOfRange, "node index out of range");
  return std::span<const NodeIndex>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

bool Topology::adjacent(NodeIndex u, NodeIndex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  for (NodeIndex u = 0; u < n_; ++u) {
    for (NodeIndex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<std::uint32_t> Topology::distances_from(NodeIndex source) const {
  std::vector<std::uint32_t> dist(n_, kUnreached);
  std::vector<NodeIndex> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeIndex u = queue[head];
    for (NodeIndex v : neighbors(u)) {
      if (dist[v] == kUnreached) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

Label Topology::max_label() const { return by_label_.back().first; }

bool is_connected(const Topology& topology) { return topology.connected(); }

namespace {

// Strips comments and blank lines, returning the remaining logical lines.
std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    lines.push_back(line);
  }
  return lines;
}

template <typename T>
std::vector<T> parse_numbers(const std::string& line, std::size_t line_no) {
  std::istringstream is(line);
  std::vector<T> out;
  std::string token;
  while (is >> token) {
    if (token.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": expected a non-negative integer, got '" + token + "'");
    }
    try {
      const unsigned long long v = std::stoull(token);
      if (v > std::numeric_limits<T>::max()) throw std::out_of_range("value");
      out.push_back(static_cast<T>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": value out of range");
    }
  }
  return out;
}

}  // namespace

Topology read_topology(std::istream& in) {
  const auto lines = content_lines(in);
  if (lines.size() < 2) throw Error(ErrorCode::kParse, "topology needs a header and a label line");
  const auto header = parse_numbers<std::uint32_t>(lines[0], 1);
  if (header.size() != 2) throw Error(ErrorCode::kParse, "header must be 'n c'");
  const auto labels = parse_numbers<Label>(lines[1], 2);
  std::vector<Edge> edges;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto pair = parse_numbers<NodeIndex>(lines[i], i + 1);
    if (pair.size() != 2) throw Error(ErrorCode::kParse, "edge line must be 'u v'");
    edges.emplace_back(pair[0], pair[1]);
  }
  return Topology::build(header[0], header[1], edges, labels);
}

Topology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_topology(in);
}

void write_topology(std::ostream& out, const Topology& topology) {
  out << topology.size() << ' ' << topology.exponent() << '\n';
  for (NodeIndex v = 0; v < topology.size(); ++v) {
    if (v > 0) out << ' ';
    out << topology.label(v);
  }
  out << '\n';
  for (const auto& [u, v] : topology.edges()) out << u << ' ' << v << '\n';
}

void save_topology(const std::string& path, const Topology& topology) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  write_topology(out, topology);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace radiogossip
