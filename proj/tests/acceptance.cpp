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


// Acceptance run: one PASS/FAIL line per criterion. Expected values are
// computed here from first principles (adjacency, label arithmetic, subset
// enumeration) rather than taken from the library's own checkers.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "radiogossip/engine.hpp"
#include "radiogossip/gossip.hpp"
#include "radiogossip/harness.hpp"
#include "radiogossip/primitives.hpp"
#include "radiogossip/selectors.hpp"
#include "radiogossip/topology.hpp"
#include "radiogossip/trace.hpp"

using namespace radiogossip;

namespace {

// Largest bench ratio on the first green run (oracle accounting, c_rb = 1,
// n in {8..256}, path/grid/random, random labels, seed 1).
constexpr double kHeadlineBaseline = 4.670633;
constexpr double kHeadlineSlack = 1.10;
constexpr double kTrendSlack = 1.10;

constexpr double kCorpusSeconds = 120.0;
constexpr double kEstimateSeconds = 30.0;
constexpr double kHeadlineSeconds = 300.0;
constexpr int kEstimateCases = 12'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void verdict(bool ok, const std::string& name, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// Smallest i with 2^i >= x, by repeated doubling.
std::uint64_t lg_up(std::uint64_t x) {
  std::uint64_t i = 0;
  std::uint64_t p = 1;
  while (p < x) {
    p *= 2;
    ++i;
  }
  return i;
}

std::uint64_t select_bound(Label universe) { return 3 * (2 * lg_up(universe) + 3); }

Bytes rumor_of(Label origin) {
  const std::string text = "acceptance/" + std::to_string(origin);
  return Bytes(text.begin(), text.end());
}

std::uint64_t expected_nb(BroadcastKind kind, std::uint32_t n, Label universe, std::size_t family) {
  switch (kind) {
    case BroadcastKind::kRoundRobin:
      return std::uint64_t{n} * universe;
    case BroadcastKind::kSelectiveFlood:
      return std::uint64_t{n} * family;
    case BroadcastKind::kOracleAccounting: {
      const double lg = std::log2(static_cast<double>(n));
      const double lglg = n <= 2 ? 1.0 : std::max(1.0, std::ceil(std::log2(lg)));
      return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n * lg * lglg)));
    }
  }
  return 0;
}

struct PlanKey {
  std::uint32_t n;
  Label universe;
  BroadcastKind kind;
  auto operator<=>(const PlanKey&) const = default;
};

class Plans {
 public:
  const ProtocolPlan& get(std::uint32_t n, Label universe, BroadcastKind kind) {
    const PlanKey key{n, universe, kind};
    auto it = plans_.find(key);
    if (it == plans_.end()) {
      GossipConfig config;
      config.broadcast = kind;
      it = plans_.emplace(key, make_plan(n, universe, config)).first;
    }
    return it->second;
  }

 private:
  std::map<PlanKey, ProtocolPlan> plans_;
};

// Soundness of one select against the adjacency list.
bool select_sound(const Topology& t, const SelectRecord& s, std::string& why) {
  const auto si = t.index_of(s.initiator);
  const auto hi = t.index_of(s.helper);
  if (!si || !hi || !t.adjacent(*si, *hi)) {
    why = "helper " + std::to_string(s.helper) + " is not a neighbour of " + std::to_string(s.initiator);
    return false;
  }
  const std::set<Label> excluded(s.excluded.begin(), s.excluded.end());
  std::set<Label> fresh;
  for (NodeIndex v : t.neighbors(*si)) {
    if (!excluded.count(t.label(v))) fresh.insert(t.label(v));
  }
  if (s.found && !fresh.count(*s.found)) {
    why = std::to_string(s.initiator) + " returned " + std::to_string(*s.found) + ", not a fresh neighbour";
    return false;
  }
  if (!s.found && !fresh.empty()) {
    why = std::to_string(s.initiator) + " gave up with fresh neighbours left";
    return false;
  }
  if (s.rounds > select_bound(t.universe())) {
    why = "select took " + std::to_string(s.rounds) + " rounds";
    return false;
  }
  return true;
}

struct CorpusTally {
  std::uint64_t instances = 0;
  std::uint64_t incomplete = 0;
  std::uint64_t wrong_leader = 0;
  std::set<BroadcastKind> kinds;
  std::set<LabelMode> modes;
  std::uint32_t max_n = 0;
  std::string first_problem;

  std::uint64_t selects = 0;
  std::uint64_t unsound_selects = 0;
  std::uint64_t max_select_rounds = 0;
  std::string first_unsound;

  std::uint64_t accounting_failures = 0;
  std::string first_accounting;
};

void check_accounting(const ProtocolPlan& plan, BroadcastKind kind, std::uint32_t n,
                      Label universe, const GossipResult& r, CorpusTally& tally,
                      const std::string& name) {
  std::vector<std::string> problems;
  if (n == 1) {
    // Nothing to elect, discover or disseminate.
    if (r.total != 0) problems.push_back("n = 1 took rounds");
  } else {
    const std::size_t f = plan.family->size();
    const std::uint64_t nb = expected_nb(kind, n, universe, f);
    if (r.stage_rounds[0] != lg_up(universe) * nb) problems.push_back("stage1");
    if (r.stage_rounds[1] != 2 + f) problems.push_back("stage2");
    const std::uint64_t bound = 2 * std::uint64_t{n - 1} + (2 * std::uint64_t{n} - 1) * select_bound(universe);
    if (r.stage_rounds[2] > bound) problems.push_back("stage3");
    if (r.stage_rounds[3] != nb) problems.push_back("stage4");
  }
  if (r.token_passes != 2 * std::uint64_t{n - 1}) problems.push_back("token passes");
  if (r.total != r.stage_rounds[0] + r.stage_rounds[1] + r.stage_rounds[2] + r.stage_rounds[3]) {
    problems.push_back("total");
  }
  if (!problems.empty()) {
    ++tally.accounting_failures;
    if (tally.first_accounting.empty()) tally.first_accounting = name + " " + problems.front();
  }
}

CorpusTally run_corpus(Plans& plans, double& elapsed) {
  CorpusTally tally;
  const auto t0 = Clock::now();
  const std::vector<BroadcastKind> kinds = {BroadcastKind::kRoundRobin, BroadcastKind::kSelectiveFlood,
                                            BroadcastKind::kOracleAccounting};
  for (const TopologySpec& spec : verification_corpus()) {
    const Topology t = gen_topology(spec);
    RumorSet rumors;
    Label max_label = 0;
    for (NodeIndex v = 0; v < t.size(); ++v) {
      rumors[t.label(v)] = rumor_of(t.label(v));
      max_label = std::max(max_label, t.label(v));
    }
    for (BroadcastKind kind : kinds) {
      const std::string name = describe(spec) + " " + to_string(kind);
      const ProtocolPlan& plan = plans.get(t.size(), t.universe(), kind);
      const GossipResult r = gossip(t, plan, rumors);
      ++tally.instances;
      tally.kinds.insert(kind);
      tally.modes.insert(spec.labels);
      tally.max_n = std::max(tally.max_n, t.size());

      bool complete = r.final_rumors.size() == t.size();
      for (NodeIndex v = 0; complete && v < t.size(); ++v) complete = r.final_rumors[v] == rumors;
      if (!complete) {
        ++tally.incomplete;
        if (tally.first_problem.empty()) tally.first_problem = name + " incomplete";
      }
      if (r.leader != max_label || !r.leaders_agree) {
        ++tally.wrong_leader;
        if (tally.first_problem.empty()) tally.first_problem = name + " leader " + std::to_string(r.leader);
      }

      for (const SelectRecord& s : r.select_log) {
        ++tally.selects;
        tally.max_select_rounds = std::max<std::uint64_t>(tally.max_select_rounds, s.rounds);
        std::string why;
        if (!select_sound(t, s, why)) {
          ++tally.unsound_selects;
          if (tally.first_unsound.empty()) tally.first_unsound = name + ": " + why;
        }
      }
      check_accounting(plan, kind, t.size(), t.universe(), r, tally, name);
    }
  }
  elapsed = seconds_since(t0);
  return tally;
}

// ---- estimate -------------------------------------------------------------

struct RandomSource {
  std::uint64_t state;
  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  bool coin(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }
};

void criterion_estimate() {
  RandomSource rng{20261015};
  const auto t0 = Clock::now();
  int mismatches = 0;
  std::string first;
  std::map<std::string, int> seen;
  for (int trial = 0; trial < kEstimateCases; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(11));
    const Label universe = Label{n} * n;
    std::vector<Label> pool(universe);
    for (Label l = 0; l < universe; ++l) pool[l] = l + 1;
    for (std::size_t i = 0; i < n; ++i) std::swap(pool[i], pool[i + rng.below(universe - i)]);
    std::vector<Label> labels(pool.begin(), pool.begin() + n);

    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::vector<Edge> edges;
    const double p = 0.2 + 0.6 * static_cast<double>(rng.below(100)) / 100.0;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) {
        if (rng.coin(p)) {
          edges.emplace_back(u, v);
          adj[u][v] = adj[v][u] = true;
        }
      }
    }
    // The initiator needs a helper neighbour.
    const std::uint32_t s = static_cast<std::uint32_t>(rng.below(n));
    std::vector<std::uint32_t> nbrs;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (adj[s][v]) nbrs.push_back(v);
    }
    if (nbrs.empty()) {
      const std::uint32_t v = (s + 1) % n;
      edges.emplace_back(std::min(s, v), std::max(s, v));
      adj[s][v] = adj[v][s] = true;
      nbrs.push_back(v);
    }
    const std::uint32_t h = nbrs[rng.below(nbrs.size())];

    std::vector<Label> excluded;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (v == s || v == h || rng.coin(0.3)) excluded.push_back(labels[v]);
    }
    std::sort(excluded.begin(), excluded.end());
    Label lo = 1 + rng.below(universe);
    Label hi = 1 + rng.below(universe);
    if (rng.coin(0.25)) {
      lo = 1;
      hi = universe;
    }
    if (lo > hi) std::swap(lo, hi);

    std::vector<Label> slice;
    for (std::uint32_t v = 0; v < n; ++v) {
      const Label l = labels[v];
      if (!adj[s][v] || v == h || l < lo || l > hi) continue;
      if (std::binary_search(excluded.begin(), excluded.end(), l)) continue;
      slice.push_back(l);
    }
    const EstimateOutcome expected = slice.empty()       ? EstimateOutcome::zero()
                                     : slice.size() == 1 ? EstimateOutcome::one(slice[0])
                                                         : EstimateOutcome::two_plus();
    ++seen[slice.empty() ? "zero" : slice.size() == 1 ? "one" : "many"];

    const Topology t = Topology::build(n, 2, edges, labels);
    const auto got = estimate(t, labels[s], labels[h], ExclusionSet(excluded), LabelRange{lo, hi});
    if (!(got.outcome == expected) || got.rounds != 3) {
      ++mismatches;
      if (first.empty()) first = "trial " + std::to_string(trial) + " got " + to_string(got.outcome);
    }
  }
  const double elapsed = seconds_since(t0);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d cases (zero %d, one %d, many %d), %d mismatches, %.2fs (limit %.0fs)%s%s",
                kEstimateCases, seen["zero"], seen["one"], seen["many"], mismatches, elapsed,
                kEstimateSeconds, first.empty() ? "" : "; first: ", first.c_str());
  const bool covered = seen["zero"] > 0 && seen["one"] > 0 && seen["many"] > 0;
  verdict(mismatches == 0 && covered && elapsed < kEstimateSeconds, "estimate-oracle-equivalence", buf);
}

// ---- selective families ---------------------------------------------------

// Every nonempty subset of size <= k, as a bitmask over [1..N], must meet
// some set in exactly one element.
bool selective_by_masks(const SelectiveFamily& f, std::uint64_t k, Label universe, std::uint64_t& checked) {
  std::vector<std::uint32_t> masks;
  for (const auto& set : f.sets) {
    std::uint32_t m = 0;
    for (Label l : set) m |= 1u << (l - 1);
    masks.push_back(m);
  }
  const std::uint32_t limit = 1u << universe;
  for (std::uint32_t s = 1; s < limit; ++s) {
    if (static_cast<std::uint64_t>(__builtin_popcount(s)) > k) continue;
    ++checked;
    bool hit = false;
    for (std::uint32_t m : masks) {
      if (__builtin_popcount(s & m) == 1) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

void criterion_families() {
  struct Row {
    std::uint64_t k;
    Label universe;
    std::size_t size;
    FamilyMethod method;
  };
  std::vector<Row> rows;
  int invalid = 0;
  int library_disagrees = 0;
  std::uint64_t witnesses = 0;
  std::string first;
  for (Label universe = 1; universe <= 16; ++universe) {
    for (std::uint64_t k = 1; k <= 4 && k <= universe; ++k) {
      const FamilyBuild b = build_selective_family(k, universe, 1);
      std::uint64_t checked = 0;
      const bool ok = selective_by_masks(b.family, k, universe, checked);
      witnesses += checked;
      if (!ok) {
        ++invalid;
        if (first.empty()) first = "k=" + std::to_string(k) + " N=" + std::to_string(universe);
      }
      if (verify_exhaustive(b.family).valid != ok) ++library_disagrees;
      rows.push_back({k, universe, b.family.size(), b.method});
    }
  }
  // Reference size k * lg(2N / k), with f taken from the smallest instance
  // of the sweep and then held fixed.
  auto reference = [](const Row& r) {
    return static_cast<double>(r.k) * std::log2(2.0 * static_cast<double>(r.universe) / static_cast<double>(r.k));
  };
  const double f = static_cast<double>(rows.front().size) / reference(rows.front());
  int oversize = 0;
  double worst = 0.0;
  for (const Row& r : rows) {
    const double ratio = static_cast<double>(r.size) / reference(r);
    worst = std::max(worst, ratio);
    if (static_cast<double>(r.size) > f * reference(r) + 1e-9) ++oversize;
  }
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "%zu families (N<=16, k<=4), %llu witnesses enumerated, %d not selective, "
                "%d library disagreements; size <= f*k*lg(2N/k) with f=%.3f from (k=%llu,N=%llu): "
                "%d over, max size/(k lg(2N/k)) = %.3f%s%s",
                rows.size(), static_cast<unsigned long long>(witnesses), invalid, library_disagrees, f,
                static_cast<unsigned long long>(rows.front().k),
                static_cast<unsigned long long>(rows.front().universe), oversize, worst,
                first.empty() ? "" : "; first invalid: ", first.c_str());
  verdict(invalid == 0 && library_disagrees == 0 && oversize == 0, "selective-family-selectivity", buf);

  // Same tracking restricted to greedy-built families, reported only.
  const Row* smallest = nullptr;
  for (const Row& r : rows) {
    if (r.method == FamilyMethod::kGreedy && smallest == nullptr) smallest = &r;
  }
  if (smallest != nullptr) {
    const double fg = static_cast<double>(smallest->size) / reference(*smallest);
    int over = 0;
    double gworst = 0.0;
    for (const Row& r : rows) {
      if (r.method != FamilyMethod::kGreedy) continue;
      gworst = std::max(gworst, static_cast<double>(r.size) / reference(r));
      if (static_cast<double>(r.size) > fg * reference(r) + 1e-9) ++over;
    }
    std::printf("NOTE greedy-only size tracking: f=%.3f from (k=%llu,N=%llu), %d over, max ratio %.3f\n", fg,
                static_cast<unsigned long long>(smallest->k),
                static_cast<unsigned long long>(smallest->universe), over, gworst);
  }
}

// ---- headline -------------------------------------------------------------

void criterion_headline() {
  const auto t0 = Clock::now();
  const std::vector<std::uint32_t> ns = {8, 16, 32, 64, 128, 256};
  const std::vector<TopologyFamily> families = {TopologyFamily::kPath, TopologyFamily::kGrid,
                                                TopologyFamily::kRandomConnected};
  std::map<std::uint32_t, std::vector<double>> by_n;
  double max_ratio = 0.0;
  int incomplete = 0;
  for (std::uint32_t n : ns) {
    GossipConfig config;
    config.broadcast = BroadcastKind::kOracleAccounting;
    config.broadcast_config.c_rb = 1.0;
    for (TopologyFamily family : families) {
      TopologySpec spec;
      spec.family = family;
      spec.n = n;
      spec.labels = LabelMode::kRandomInjective;
      spec.seed = 1;
      const Topology t = gen_topology(spec);
      const ProtocolPlan plan = make_plan(n, t.universe(), config);
      RumorSet rumors;
      for (NodeIndex v = 0; v < n; ++v) rumors[t.label(v)] = rumor_of(t.label(v));
      const GossipResult r = gossip(t, plan, rumors);
      for (const auto& held : r.final_rumors) {
        if (held != rumors) {
          ++incomplete;
          break;
        }
      }
      const double lg = std::log2(static_cast<double>(n));
      const double denom = n * lg * lg * std::max(1.0, std::log2(lg));
      const double ratio = static_cast<double>(r.total) / denom;
      by_n[n].push_back(ratio);
      max_ratio = std::max(max_ratio, ratio);
    }
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  const double first = mean(by_n[ns.front()]);
  const double last = mean(by_n[ns.back()]);
  const double elapsed = seconds_since(t0);
  std::ostringstream per_n;
  for (std::uint32_t n : ns) {
    char item[48];
    std::snprintf(item, sizeof item, "%s%u:%.3f", n == ns.front() ? "" : " ", n, mean(by_n[n]));
    per_n << item;
  }
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "max ratio %.6f vs baseline %.6f x %.2f = %.6f; mean ratio by n [%s]; "
                "largest/smallest = %.3f (limit %.2f); %d incomplete; %.1fs (limit %.0fs)",
                max_ratio, kHeadlineBaseline, kHeadlineSlack, kHeadlineBaseline * kHeadlineSlack,
                per_n.str().c_str(), last / first, kTrendSlack, incomplete, elapsed, kHeadlineSeconds);
  verdict(max_ratio <= kHeadlineBaseline * kHeadlineSlack && last <= kTrendSlack * first && incomplete == 0 &&
              elapsed < kHeadlineSeconds,
          "headline-scaling", buf);
}

// ---- determinism ----------------------------------------------------------

class StringSink final : public TraceSink {
 public:
  void record(const RoundRecord& record) override {
    text_ += to_json_line(record);
    text_ += '\n';
  }
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

void criterion_determinism(Plans& plans) {
  // Traced runs cannot skip quiet rounds, so round robin and selective flood
  // are traced up to n = 16 and oracle accounting across the whole corpus.
  std::uint64_t runs = 0;
  std::uint64_t bytes = 0;
  int differing = 0;
  std::string first;
  for (const TopologySpec& spec : verification_corpus()) {
    for (BroadcastKind kind : {BroadcastKind::kRoundRobin, BroadcastKind::kSelectiveFlood,
                               BroadcastKind::kOracleAccounting}) {
      if (kind != BroadcastKind::kOracleAccounting && spec.n > 16) continue;
      if (spec.family == TopologyFamily::kRandomConnected && spec.seed % 5 != 1) continue;
      std::string traces[2];
      std::string summaries[2];
      for (int rep = 0; rep < 2; ++rep) {
        // Regenerate everything per repetition.
        const Topology t = gen_topology(spec);
        RumorSet rumors;
        for (NodeIndex v = 0; v < t.size(); ++v) rumors[t.label(v)] = rumor_of(t.label(v));
        StringSink sink;
        const GossipResult r = gossip(t, plans.get(t.size(), t.universe(), kind), rumors, &sink);
        traces[rep] = sink.text();
        summaries[rep] = summary_line(r);
      }
      ++runs;
      bytes += traces[0].size();
      if (traces[0] != traces[1] || summaries[0] != summaries[1]) {
        ++differing;
        if (first.empty()) first = describe(spec) + " " + to_string(kind);
      }
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu instances traced twice, %.1f MB per pass, %d differing%s%s",
                static_cast<unsigned long long>(runs), static_cast<double>(bytes) / 1e6, differing,
                first.empty() ? "" : "; first: ", first.c_str());
  verdict(differing == 0 && runs > 0, "determinism", buf);
}

// ---- collision model ------------------------------------------------------

void criterion_collisions() {
  int checks = 0;
  int bad = 0;
  std::string first;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++bad;
      if (first.empty()) first = what;
    }
  };
  const Payload ping = Payload::from_string("ping");
  const Payload pong = Payload::from_string("pong");

  {
    // Star: centre 0 with leaves 1..3.
    const std::vector<Edge> edges{{0, 1}, {0, 2}, {0, 3}};
    const std::vector<Label> labels{10, 3, 7, 12};
    const Topology t = Topology::build(4, 2, edges, labels);
    std::vector<RoundAction> a{RoundAction::listen(), RoundAction::transmit(ping),
                               RoundAction::transmit(pong), RoundAction::listen()};
    auto in = step(t, a);
    expect(!in[0].has_value(), "two transmitters collide at the centre");
    expect(!in[3].has_value(), "a leaf hears nothing from other leaves");

    a = {RoundAction::listen(), RoundAction::idle(), RoundAction::transmit(pong), RoundAction::listen()};
    in = step(t, a);
    expect(in[0].has_value() && in[0]->sender == 7 && in[0]->payload == pong,
           "single transmitter delivered with its own label");

    a = {RoundAction::transmit(ping), RoundAction::transmit(pong), RoundAction::listen(), RoundAction::idle()};
    in = step(t, a);
    expect(!in[0].has_value() && !in[1].has_value(), "transmitters hear nothing");
    expect(in[2].has_value() && in[2]->sender == 10, "listener hears the centre");
    expect(!in[3].has_value(), "idle nodes receive nothing");
  }

  // Randomised law over arbitrary graphs.
  RandomSource rng{7};
  for (int trial = 0; trial < 3000; ++trial) {
    const std::uint32_t n = 2 + static_cast<std::uint32_t>(rng.below(12));
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
      for (std::uint32_t v = u + 1; v < n; ++v) {
        if (rng.coin(0.35)) {
          edges.emplace_back(u, v);
          adj[u][v] = adj[v][u] = true;
        }
      }
    }
    std::vector<Label> labels;
    for (std::uint32_t v = 0; v < n; ++v) labels.push_back(Label{n} * n - v);
    const Topology t = Topology::build(n, 2, edges, labels);
    std::vector<RoundAction> a;
    std::vector<int> kind(n);
    for (std::uint32_t v = 0; v < n; ++v) {
      kind[v] = static_cast<int>(rng.below(3));
      a.push_back(kind[v] == 0   ? RoundAction::idle()
                  : kind[v] == 1 ? RoundAction::listen()
                                 : RoundAction::transmit(Payload::from_string("m" + std::to_string(v))));
    }
    const auto in = step(t, a);
    for (std::uint32_t v = 0; v < n; ++v) {
      std::vector<std::uint32_t> talkers;
      for (std::uint32_t u = 0; u < n; ++u) {
        if (adj[v][u] && kind[u] == 2) talkers.push_back(u);
      }
      const bool should_hear = kind[v] == 1 && talkers.size() == 1;
      bool ok = in[v].has_value() == should_hear;
      if (ok && should_hear) {
        ok = in[v]->sender == labels[talkers[0]] &&
             in[v]->payload == Payload::from_string("m" + std::to_string(talkers[0])) && !in[v]->oracle;
      }
      expect(ok, "random trial " + std::to_string(trial) + " node " + std::to_string(v));
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d reception checks, %d wrong%s%s", checks, bad,
                first.empty() ? "" : "; first: ", first.c_str());
  verdict(bad == 0, "collision-model", buf);
}

}  // namespace

int main() {
  Plans plans;
  double corpus_seconds = 0.0;
  const CorpusTally c = run_corpus(plans, corpus_seconds);
  {
    char buf[384];
    std::snprintf(buf, sizeof buf,
                  "%llu instances (n<=%u, %zu label modes, %zu broadcast kinds), %llu incomplete, "
                  "%llu wrong leader, %.1fs (limit %.0fs)%s%s",
                  static_cast<unsigned long long>(c.instances), c.max_n, c.modes.size(), c.kinds.size(),
                  static_cast<unsigned long long>(c.incomplete),
                  static_cast<unsigned long long>(c.wrong_leader), corpus_seconds, kCorpusSeconds,
                  c.first_problem.empty() ? "" : "; first: ", c.first_problem.c_str());
    verdict(c.instances >= 400 && c.max_n <= 64 && c.modes.size() == 2 && c.kinds.size() == 3 &&
                c.incomplete == 0 && c.wrong_leader == 0 && corpus_seconds < kCorpusSeconds,
            "gossip-completeness", buf);
  }

  criterion_estimate();

  {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%llu selects oracle-checked, %llu unsound or over bound, max %llu rounds%s%s",
                  static_cast<unsigned long long>(c.selects), static_cast<unsigned long long>(c.unsound_selects),
                  static_cast<unsigned long long>(c.max_select_rounds),
                  c.first_unsound.empty() ? "" : "; first: ", c.first_unsound.c_str());
    verdict(c.selects > 0 && c.unsound_selects == 0, "binary-select-bounds", buf);
  }

  criterion_families();

  {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%llu runs checked for exact stage arithmetic, %llu mismatches%s%s",
                  static_cast<unsigned long long>(c.instances),
                  static_cast<unsigned long long>(c.accounting_failures),
                  c.first_accounting.empty() ? "" : "; first: ", c.first_accounting.c_str());
    verdict(c.accounting_failures == 0, "stage-accounting", buf);
  }

  criterion_headline();
  criterion_determinism(plans);
  criterion_collisions();

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "SOME FAIL", failures);
  return failures == 0 ? 0 : 1;
}
