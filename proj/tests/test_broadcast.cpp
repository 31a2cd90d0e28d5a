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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

#include "radiogossip/broadcast.hpp"
#include "radiogossip/trace.hpp"
#include "rng.hpp"

using namespace radiogossip;

namespace {

const Payload kOne = Payload::from_string("1");

// Multi-source BFS distances by node index, from the edge list only.
std::vector<std::uint32_t> layers(const Topology& t, const std::vector<Label>& seeds) {
  std::vector<std::vector<NodeIndex>> adj(t.size());
  for (auto [u, v] : t.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::uint32_t> dist(t.size(), UINT32_MAX);
  std::queue<NodeIndex> q;
  for (NodeIndex v = 0; v < t.size(); ++v) {
    if (std::find(seeds.begin(), seeds.end(), t.label(v)) != seeds.end()) {
      dist[v] = 0;
      q.push(v);
    }
  }
  while (!q.empty()) {
    const NodeIndex u = q.front();
    q.pop();
    for (NodeIndex v : adj[u]) {
      if (dist[v] == UINT32_MAX) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    }
  }
  return dist;
}

Topology grid4x4() {
  std::vector<Edge> edges;
  std::vector<Label> labels;
  for (std::uint32_t y = 0; y < 4; ++y) {
    for (std::uint32_t x = 0; x < 4; ++x) {
      const std::uint32_t v = 4 * y + x;
      labels.push_back(16 * v + 7);
      if (x < 3) edges.emplace_back(v, v + 1);
      if (y < 3) edges.emplace_back(v, v + 4);
    }
  }
  return Topology::build(16, 2, edges, labels);
}

}  // namespace

TEST_CASE("round budgets") {
  CHECK(make_broadcast(BroadcastKind::kRoundRobin, 4, 4).nb_bound == 16);
  BroadcastConfig cfg;
  cfg.c_rb = 1.0;
  CHECK(make_broadcast(BroadcastKind::kOracleAccounting, 16, 4096, cfg).nb_bound == 128);
  CHECK(oracle_nb_bound(16, 1.0) == 128);
  // lg lg 2 is floored to 1: 2 * 1 * 1
  CHECK(oracle_nb_bound(2, 1.0) == 2);
  CHECK(oracle_nb_bound(1, 1.0) == 1);
  CHECK(oracle_nb_bound(16, 0.5) == 64);
  const auto sf = make_broadcast(BroadcastKind::kSelectiveFlood, 4, 16, cfg);
  const auto family = build_selective_family(4, 16, cfg.family_seed, cfg.family);
  CHECK(sf.family->size() == family.family.size());
  CHECK(sf.nb_bound == 4 * family.family.size());
  CHECK(sf.pass_length() == family.family.size());
  CHECK_THROWS_AS(make_broadcast(BroadcastKind::kRoundRobin, 5, 4), Error);
}

TEST_CASE("kind names") {
  CHECK(parse_broadcast_kind("roundrobin") == BroadcastKind::kRoundRobin);
  CHECK(parse_broadcast_kind("sf") == BroadcastKind::kSelectiveFlood);
  CHECK(parse_broadcast_kind("oracle") == BroadcastKind::kOracleAccounting);
  CHECK_FALSE(parse_broadcast_kind("flood").has_value());
  CHECK(to_string(BroadcastKind::kSelectiveFlood) == "sf");
}

TEST_CASE("empty seed set informs nobody and still takes the whole budget") {
  std::vector<Edge> edges{{0, 1}, {1, 2}};
  const Topology t = Topology::build(3, 2, edges, std::vector<Label>{1, 2, 3});
  for (auto kind : {BroadcastKind::kRoundRobin, BroadcastKind::kSelectiveFlood,
                    BroadcastKind::kOracleAccounting}) {
    const auto p = make_broadcast(kind, 3, 9);
    const auto out = run_broadcast(p, t, {}, kOne);
    CHECK(out.informed.empty());
    CHECK(out.rounds == p.nb_bound);
  }
}

TEST_CASE("round robin on a path of 5, labels decreasing from the source: one layer per pass") {
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  const Topology t = Topology::build(5, 1, edges, std::vector<Label>{5, 4, 3, 2, 1});
  const auto p = make_broadcast(BroadcastKind::kRoundRobin, 5, 5);
  ExecutionTrace trace;
  const auto out = run_broadcast(p, t, {5}, kOne, &trace);
  CHECK(out.informed.size() == 5);
  const auto dist = layers(t, {5});
  REQUIRE(out.after_pass.size() == 5);
  for (std::size_t pass = 0; pass < 5; ++pass) {
    for (NodeIndex v = 0; v < 5; ++v) CHECK(out.after_pass[pass][v] == (dist[v] <= pass + 1));
  }
  CHECK(trace.records().size() == 25);
}

TEST_CASE("round robin on a path of 4 with labels 4,3,2,1") {
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}};
  const Topology t = Topology::build(4, 1, edges, std::vector<Label>{4, 3, 2, 1});
  const auto out = run_broadcast(make_broadcast(BroadcastKind::kRoundRobin, 4, 4), t, {4}, kOne);
  REQUIRE(out.after_pass.size() == 4);
  CHECK(out.after_pass[0] == std::vector<bool>{true, true, false, false});
  CHECK(out.after_pass[1] == std::vector<bool>{true, true, true, false});
  CHECK(out.after_pass[2] == std::vector<bool>{true, true, true, true});
}

TEST_CASE("selective flood from three sources on a 4x4 grid") {
  const Topology t = grid4x4();
  const auto p = make_broadcast(BroadcastKind::kSelectiveFlood, 16, 256);
  const std::vector<Label> seeds{t.label(0), t.label(9), t.label(15)};
  const auto out = run_broadcast(p, t, seeds, kOne);
  CHECK(out.informed.size() == 16);
  CHECK(out.rounds == p.nb_bound);
  const auto dist = layers(t, seeds);
  for (std::size_t pass = 0; pass < out.after_pass.size(); ++pass) {
    for (NodeIndex v = 0; v < 16; ++v) {
      if (dist[v] <= pass + 1) CHECK(out.after_pass[pass][v]);
    }
  }
}

TEST_CASE("layer progress and reachable closure on random graphs") {
  detail::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(11));
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) {
        if (rng.chance(0.3)) edges.emplace_back(u, v);
      }
    }
    std::set<Label> pool;
    while (pool.size() < n) pool.insert(rng.below(Label{n} * n) + 1);
    std::vector<Label> labels(pool.begin(), pool.end());
    const Topology t = Topology::build(n, 2, edges, labels);
    std::vector<Label> seeds{labels[rng.below(n)]};
    if (rng.chance(0.5)) seeds.push_back(labels[rng.below(n)]);
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    const auto dist = layers(t, seeds);
    for (auto kind : {BroadcastKind::kRoundRobin, BroadcastKind::kSelectiveFlood,
                      BroadcastKind::kOracleAccounting}) {
      const auto p = make_broadcast(kind, n, Label{n} * n);
      const auto out = run_broadcast(p, t, seeds, kOne);
      std::vector<Label> reachable;
      for (NodeIndex v = 0; v < n; ++v) {
        if (dist[v] != UINT32_MAX) reachable.push_back(t.label(v));
      }
      CHECK(out.informed == reachable);
      for (std::size_t pass = 0; pass < out.after_pass.size(); ++pass) {
        for (NodeIndex v = 0; v < n; ++v) {
          if (kind != BroadcastKind::kOracleAccounting && dist[v] <= pass + 1) {
            CHECK(out.after_pass[pass][v]);
          }
          if (pass > 0 && out.after_pass[pass - 1][v]) CHECK(out.after_pass[pass][v]);
        }
      }
    }
  }
}

TEST_CASE("accounting broadcast is one flagged flood, then idle") {
  const Topology t = grid4x4();
  const auto p = make_broadcast(BroadcastKind::kOracleAccounting, 16, 4096);
  ExecutionTrace trace;
  const auto out = run_broadcast(p, t, {t.label(5)}, kOne, &trace);
  CHECK(out.informed.size() == 16);
  REQUIRE(trace.records().size() == 128);
  CHECK(trace.records()[0].oracle);
  CHECK(trace.records()[0].rx.size() == 15);
  for (std::size_t r = 1; r < trace.records().size(); ++r) {
    CHECK(trace.records()[r].tx.empty());
    CHECK_FALSE(trace.records()[r].oracle);
  }
}

TEST_CASE("agents learn the start together with the payload") {
  const auto p = make_broadcast(BroadcastKind::kRoundRobin, 2, 4);
  BroadcastAgent agent(p, 3);
  agent.begin(std::nullopt, std::nullopt);
  CHECK(agent.deadline() == kNever);
  CHECK(agent.act(0).kind == RoundAction::Kind::kListen);
  agent.learn(kOne, 10);
  CHECK(agent.informed());
  CHECK(agent.deadline() == 18);
  // label 3 transmits at offset 2 of each pass of 4 rounds
  CHECK(agent.next_activity(11) == 12);
  CHECK(agent.act(12).kind == RoundAction::Kind::kTransmit);
  CHECK(agent.act(13).kind == RoundAction::Kind::kListen);
  CHECK(agent.next_activity(13) == 16);
  CHECK(agent.next_activity(17) == kNever);
  CHECK(agent.act(18).kind == RoundAction::Kind::kIdle);
}
