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
#include <set>

#include "radiogossip/gossip.hpp"
#include "radiogossip/trace.hpp"
#include "rng.hpp"

using namespace radiogossip;

namespace {

Topology build(std::uint32_t c, std::vector<Label> labels, std::vector<Edge> edges) {
  return Topology::build(static_cast<std::uint32_t>(labels.size()), c, edges, labels);
}

Topology path_of(std::vector<Label> labels, std::uint32_t c = 2) {
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < labels.size(); ++i) edges.emplace_back(i, i + 1);
  return build(c, std::move(labels), edges);
}

GossipConfig config_for(BroadcastKind kind, HelperVariant variant = HelperVariant::kSelectiveFamily) {
  GossipConfig cfg;
  cfg.broadcast = kind;
  cfg.helper_variant = variant;
  return cfg;
}

constexpr BroadcastKind kAllKinds[] = {BroadcastKind::kRoundRobin, BroadcastKind::kSelectiveFlood,
                                       BroadcastKind::kOracleAccounting};

// Replays the pass log against a stack: forward passes go to a node that
// has not held the token and must be a neighbour of the holder; returns go
// back to the node that sent the token forward.
void check_dfs(const Topology& t, Label leader, const std::vector<TokenPass>& passes) {
  std::vector<Label> stack{leader};
  std::set<Label> held{leader};
  std::set<std::pair<Label, Label>> tree;
  for (const auto& p : passes) {
    REQUIRE(!stack.empty());
    CHECK(p.from == stack.back());
    CHECK(t.adjacent(*t.index_of(p.from), *t.index_of(p.to)));
    CHECK(std::vector<Label>(held.begin(), held.end()) == p.visited);
    if (!p.returning) {
      CHECK_FALSE(held.contains(p.to));
      held.insert(p.to);
      tree.emplace(std::min(p.from, p.to), std::max(p.from, p.to));
      stack.push_back(p.to);
    } else {
      REQUIRE(stack.size() >= 2);
      CHECK(p.to == stack[stack.size() - 2]);
      stack.pop_back();
    }
  }
  CHECK(stack == std::vector<Label>{leader});
  CHECK(held.size() == t.size());
  CHECK(tree.size() == t.size() - 1);
}

}  // namespace

TEST_SUITE("leader election") {
  TEST_CASE("single node is its own leader in 0 rounds") {
    const Topology t = build(2, {1}, {});
    const auto plan = make_plan(1, 1, GossipConfig{});
    const auto out = select_leader(t, plan);
    CHECK(out.leader == 1);
    CHECK(out.rounds == 0);
  }

  TEST_CASE("labels {5, 9, 2} on a path elect 9 under every primitive") {
    const Topology t = path_of({5, 9, 2});
    for (auto kind : kAllKinds) {
      const auto plan = make_plan(3, 9, config_for(kind));
      const auto out = select_leader(t, plan);
      CHECK(out.leader == 9);
      CHECK(out.agreed);
      CHECK(out.rounds == 4 * plan.primitive.nb_bound);
    }
  }

  TEST_CASE("round robin, n = 3, c = 2: 4 iterations of 27 rounds") {
    const Topology t = path_of({5, 9, 2});
    const auto plan = make_plan(3, 9, config_for(BroadcastKind::kRoundRobin));
    CHECK(plan.election_rounds() == 108);
    CHECK(select_leader(t, plan).rounds == 108);
  }

  TEST_CASE("maximum label wins wherever it sits") {
    detail::Rng rng(8);
    for (int trial = 0; trial < 30; ++trial) {
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(10));
      std::set<Label> pool;
      while (pool.size() < n) pool.insert(rng.below(Label{n} * n) + 1);
      std::vector<Label> labels(pool.begin(), pool.end());
      for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[rng.below(i)]);
      const Topology t = path_of(labels);
      const auto plan = make_plan(n, Label{n} * n, config_for(BroadcastKind::kSelectiveFlood));
      CHECK(select_leader(t, plan).leader == *pool.rbegin());
    }
  }
}

TEST_SUITE("helper designation") {
  TEST_CASE("leader with one neighbour picks it") {
    const Topology t = path_of({9, 5, 2});
    const auto plan = make_plan(3, 9, GossipConfig{});
    const auto out = designate_helper(t, plan, 9);
    CHECK(out.helper == 5);
    CHECK(out.rounds == 2 + plan.family->size());
  }

  TEST_CASE("leader with three neighbours picks the first one isolated by the schedule") {
    const Topology t = build(2, {16, 3, 7, 11}, {{0, 1}, {0, 2}, {0, 3}});
    const auto plan = make_plan(4, 16, GossipConfig{});
    const auto out = designate_helper(t, plan, 16);
    std::optional<Label> expected;
    for (const auto& set : plan.family->sets) {
      std::vector<Label> hit;
      for (Label l : {3, 7, 11}) {
        if (std::binary_search(set.begin(), set.end(), l)) hit.push_back(l);
      }
      if (hit.size() == 1) {
        expected = hit[0];
        break;
      }
    }
    REQUIRE(expected.has_value());
    CHECK(out.helper == *expected);
    CHECK(out.rounds == 2 + plan.family->size());
  }

  TEST_CASE("designation needs a second node") {
    const Topology t = build(2, {1}, {});
    const auto plan = make_plan(1, 1, GossipConfig{});
    CHECK_THROWS_AS(designate_helper(t, plan, 1), Error);
  }
}

TEST_SUITE("token traversal") {
  TEST_CASE("two nodes: leader to helper and back") {
    const Topology t = build(2, {4, 3}, {{0, 1}});
    const auto plan = make_plan(2, 4, GossipConfig{});
    const auto out = token_dfs(t, plan, 4, 3, initial_rumors(t));
    REQUIRE(out.passes.size() == 2);
    CHECK(out.passes[0].from == 4);
    CHECK(out.passes[0].to == 3);
    CHECK(out.passes[1].to == 4);
    CHECK(out.passes[1].returning);
    CHECK(out.token.visited == ExclusionSet{3, 4});
    CHECK(out.token.collected == initial_rumors(t));
    // pass, select at 3 (1 estimate), pass back, select at 4 (1 estimate)
    CHECK(out.rounds == 8);
  }

  TEST_CASE("path of 4 with the leader at one end follows the path") {
    const Topology t = path_of({8, 3, 6, 1});
    const auto plan = make_plan(4, 16, GossipConfig{});
    const auto out = token_dfs(t, plan, 8, 3, initial_rumors(t));
    REQUIRE(out.passes.size() == 6);
    const std::vector<std::pair<Label, Label>> expected{{8, 3}, {3, 6}, {6, 1}, {1, 6}, {6, 3}, {3, 8}};
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(out.passes[i].from == expected[i].first);
      CHECK(out.passes[i].to == expected[i].second);
      CHECK(out.passes[i].returning == (i >= 3));
    }
    CHECK(out.token.collected.size() == 4);
    CHECK(out.rounds <= token_stage_bound(4, 16));
    check_dfs(t, 8, out.passes);
  }

  TEST_CASE("star with the leader at the centre visits each leaf once") {
    const Topology t = build(2, {10, 2, 5, 7}, {{0, 1}, {0, 2}, {0, 3}});
    const auto plan = make_plan(4, 16, GossipConfig{});
    const auto out = token_dfs(t, plan, 10, 5, initial_rumors(t));
    CHECK(out.passes.size() == 6);
    std::multiset<Label> forward;
    for (const auto& p : out.passes) {
      if (!p.returning) forward.insert(p.to);
    }
    CHECK(forward == std::multiset<Label>{2, 5, 7});
    CHECK(out.token.visited == ExclusionSet{2, 5, 7, 10});
    check_dfs(t, 10, out.passes);
  }
}

TEST_SUITE("dissemination") {
  TEST_CASE("single node: nothing to do") {
    const Topology t = build(2, {1}, {});
    const auto plan = make_plan(1, 1, GossipConfig{});
    const auto out = disseminate(t, plan, 1, initial_rumors(t));
    CHECK(out.rounds == 0);
  }

  TEST_CASE("path of 5, round robin: everyone ends with 5 rumors at the deadline") {
    const Topology t = path_of({3, 1, 4, 5, 2}, 1);
    const auto plan = make_plan(5, 5, config_for(BroadcastKind::kRoundRobin));
    const RumorSet all = initial_rumors(t);
    const auto out = disseminate(t, plan, 5, all);
    CHECK(out.rounds == plan.primitive.nb_bound);
    CHECK(out.rounds == 25);
    for (const auto& held : out.final_rumors) CHECK(held == all);
  }
}

TEST_SUITE("whole protocol") {
  TEST_CASE("single node completes in 0 rounds") {
    const Topology t = build(3, {1}, {});
    const auto r = gossip(t, GossipConfig{});
    CHECK(r.total == 0);
    CHECK(r.token_passes == 0);
    REQUIRE(r.final_rumors.size() == 1);
    CHECK(r.final_rumors[0].size() == 1);
  }

  TEST_CASE("disconnected topologies are rejected before any round") {
    const Topology t = build(2, {1, 2, 3, 4}, {{0, 1}, {2, 3}});
    ExecutionTrace trace;
    try {
      gossip(t, GossipConfig{}, &trace);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDisconnected);
    }
    CHECK(trace.records().empty());
  }

  TEST_CASE("path {5, 9, 2}: complete, leader 9, stage arithmetic") {
    const Topology t = path_of({5, 9, 2});
    for (auto kind : kAllKinds) {
      const auto plan = make_plan(3, 9, config_for(kind));
      const auto r = gossip(t, plan, initial_rumors(t));
      CAPTURE(to_string(kind));
      CHECK(r.leader == 9);
      CHECK(r.leaders_agree);
      for (const auto& held : r.final_rumors) CHECK(held == initial_rumors(t));
      CHECK(r.stage_rounds[0] == 4 * plan.primitive.nb_bound);
      CHECK(r.stage_rounds[1] == 2 + plan.family->size());
      CHECK(r.stage_rounds[2] <= token_stage_bound(3, 9));
      CHECK(r.stage_rounds[3] == plan.primitive.nb_bound);
      CHECK(r.total == r.stage_rounds[0] + r.stage_rounds[1] + r.stage_rounds[2] + r.stage_rounds[3]);
      CHECK(r.token_passes == 4);
      check_dfs(t, 9, r.token_log);
    }
  }

  TEST_CASE("traced stages match the reported counts and one neighbourhood is active at a time") {
    detail::Rng rng(12);
    for (int trial = 0; trial < 12; ++trial) {
      const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(9));
      std::vector<Edge> edges;
      for (std::uint32_t v = 1; v < n; ++v) edges.emplace_back(rng.below(v), v);
      for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
          if (rng.chance(0.2)) edges.emplace_back(u, v);
        }
      }
      std::set<Label> pool;
      while (pool.size() < n) pool.insert(rng.below(Label{n} * n) + 1);
      const Topology t = build(2, std::vector<Label>(pool.begin(), pool.end()), edges);
      ExecutionTrace trace;
      const auto r = gossip(t, config_for(kAllKinds[trial % 3]), &trace);
      const auto per_stage = trace.stage_rounds();
      for (std::size_t s = 0; s < 4; ++s) {
        const auto it = per_stage.find(kStageNames[s]);
        CHECK((it == per_stage.end() ? 0 : it->second) == r.stage_rounds[s]);
      }
      for (std::size_t i = 0; i < trace.records().size(); ++i) CHECK(trace.records()[i].round == i);
      for (const auto& rec : trace.records()) {
        if (rec.stage != kStageNames[2] || rec.tx.empty()) continue;
        bool covered = false;
        for (NodeIndex c = 0; c < t.size() && !covered; ++c) {
          covered = std::all_of(rec.tx.begin(), rec.tx.end(), [&](const auto& tx) {
            const NodeIndex v = *t.index_of(tx.first);
            return v == c || t.adjacent(c, v);
          });
        }
        CHECK(covered);
      }
      check_dfs(t, r.leader, r.token_log);
    }
  }

  TEST_CASE("every select in a run is sound and within its bound") {
    const Topology t = build(3, {12, 40, 7, 33, 21, 2}, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {4, 5}, {0, 5}, {2, 4}});
    const auto r = gossip(t, GossipConfig{});
    CHECK_FALSE(r.select_log.empty());
    for (const auto& s : r.select_log) {
      const NodeIndex si = *t.index_of(s.initiator);
      CHECK(t.adjacent(si, *t.index_of(s.helper)));
      std::vector<Label> undiscovered;
      for (NodeIndex v : t.neighbors(si)) {
        const Label l = t.label(v);
        if (!std::binary_search(s.excluded.begin(), s.excluded.end(), l)) undiscovered.push_back(l);
      }
      if (s.found) {
        CHECK(std::find(undiscovered.begin(), undiscovered.end(), *s.found) != undiscovered.end());
      } else {
        CHECK(undiscovered.empty());
      }
      CHECK(s.rounds <= binary_select_round_bound(216));
    }
    // n - 2 successful selects (the helper is found in stage 2) plus one
    // failing select per node
    CHECK(r.select_log.size() == (6 - 2) + 6);
  }

  TEST_CASE("overheard helper: one announce round when something was heard") {
    const Topology t = path_of({5, 9, 2});
    for (auto kind : {BroadcastKind::kRoundRobin, BroadcastKind::kSelectiveFlood}) {
      const auto r = gossip(t, config_for(kind, HelperVariant::kOverheard));
      CHECK(r.stage_rounds[1] == 1);
      CHECK((r.helper == 5 || r.helper == 2));
      for (const auto& held : r.final_rumors) CHECK(held.size() == 3);
    }
    // the accounting flood is not a radio transmission, so nothing is overheard
    const auto plan = make_plan(3, 9, config_for(BroadcastKind::kOracleAccounting, HelperVariant::kOverheard));
    const auto r = gossip(t, plan, initial_rumors(t));
    CHECK(r.stage_rounds[1] == 2 + plan.family->size());
  }

  TEST_CASE("traces are byte-identical across runs") {
    const Topology t = build(2, {3, 14, 8, 1, 11}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    for (auto kind : kAllKinds) {
      ExecutionTrace a;
      ExecutionTrace b;
      gossip(t, config_for(kind), &a);
      gossip(t, config_for(kind), &b);
      CHECK(a.to_jsonl() == b.to_jsonl());
      CHECK_FALSE(a.to_jsonl().empty());
    }
  }

  TEST_CASE("skipping silent rounds does not change the outcome") {
    const Topology t = build(2, {3, 14, 8, 1, 11}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    for (auto kind : kAllKinds) {
      ExecutionTrace trace;
      const auto traced = gossip(t, config_for(kind), &trace);
      const auto fast = gossip(t, config_for(kind));
      CHECK(traced.stage_rounds == fast.stage_rounds);
      CHECK(traced.final_rumors == fast.final_rumors);
      CHECK(traced.token_log.size() == fast.token_log.size());
    }
  }

  TEST_CASE("custom rumors travel intact") {
    const Topology t = path_of({2, 7, 4, 9});
    RumorSet rumors;
    for (Label l : {2, 7, 4, 9}) rumors[l] = Bytes(l, static_cast<std::uint8_t>(l));
    const auto plan = make_plan(4, 16, GossipConfig{});
    const auto r = gossip(t, plan, rumors);
    for (const auto& held : r.final_rumors) CHECK(held == rumors);
  }

  TEST_CASE("summary line") {
    const Topology t = path_of({5, 9, 2});
    const auto r = gossip(t, config_for(BroadcastKind::kRoundRobin));
    const std::string line = summary_line(r);
    CHECK(line.rfind(R"({"leader":9,"stage1":108,"stage2":)", 0) == 0);
    CHECK(line.find(R"("token_passes":4})") != std::string::npos);
  }

  TEST_CASE("stage 3 bound formula") {
    CHECK(token_stage_bound(1, 1) == 0);
    CHECK(token_stage_bound(4, 16) == 6 + 7 * 33);
  }
}
