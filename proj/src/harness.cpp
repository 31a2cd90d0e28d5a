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


#include "radiogossip/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "radiogossip/payload.hpp"
#include "rng.hpp"

namespace radiogossip {

namespace {

constexpr std::array<const char*, 7> kFamilyNames = {
    "path", "cycle", "star", "grid", "balanced-binary-tree", "caterpillar", "random-connected"};

std::uint32_t grid_width(const TopologySpec& spec) {
  if (spec.grid_width != 0) {
    if (spec.n % spec.grid_width != 0) {
      throw Error(ErrorCode::kInvalidArgument, "grid width " + std::to_string(spec.grid_width) +
                                                   " does not divide n = " + std::to_string(spec.n));
    }
    return spec.grid_width;
  }
  std::uint32_t w = 1;
  for (std::uint32_t d = 1; std::uint64_t{d} * d <= spec.n; ++d) {
    if (spec.n % d == 0) w = d;
  }
  return w;
}

// Union-find over node indices, used to patch random graphs together.
class Components {
 public:
  explicit Components(std::uint32_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }
  std::uint32_t find(std::uint32_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void join(std::uint32_t a, std::uint32_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::uint32_t> parent_;
};

std::vector<Edge> random_connected_edges(std::uint32_t n, double p, std::uint64_t seed) {
  detail::Rng rng(detail::mix_seed(seed, 0x6564676573ull));
  std::vector<Edge> edges;
  Components comps(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (rng.chance(p)) {
        edges.emplace_back(i, j);
        comps.join(i, j);
      }
    }
  }
  // Components in order of their smallest index; each later one is tied to
  // a random node of everything before it.
  std::vector<std::vector<std::uint32_t>> groups;
  std::map<std::uint32_t, std::size_t> group_of_root;
  for (std::uint32_t v = 0; v < n; ++v) {
    auto [it, fresh] = group_of_root.emplace(comps.find(v), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(v);
  }
  std::vector<std::uint32_t> joined = groups.empty() ? std::vector<std::uint32_t>{} : groups[0];
  for (std::size_t g = 1; g < groups.size(); ++g) {
    const std::uint32_t u = groups[g][rng.below(groups[g].size())];
    const std::uint32_t v = joined[rng.below(joined.size())];
    edges.emplace_back(std::min(u, v), std::max(u, v));
    joined.insert(joined.end(), groups[g].begin(), groups[g].end());
  }
  return edges;
}

std::vector<Label> make_labels(const TopologySpec& spec, Label universe) {
  std::vector<Label> labels;
  labels.reserve(spec.n);
  if (spec.labels == LabelMode::kConsecutive) {
    for (std::uint32_t i = 0; i < spec.n; ++i) labels.push_back(i + 1);
    return labels;
  }
  detail::Rng rng(detail::mix_seed(spec.seed, 0x6c6162656c73ull));
  std::set<Label> used;
  while (labels.size() < spec.n) {
    const Label l = rng.below(universe) + 1;
    if (used.insert(l).second) labels.push_back(l);
  }
  return labels;
}

}  // namespace

std::string to_string(TopologyFamily family) { return kFamilyNames[static_cast<std::size_t>(family)]; }

std::optional<TopologyFamily> parse_topology_family(const std::string& text) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (text == kFamilyNames[i]) return static_cast<TopologyFamily>(i);
  }
  if (text == "tree") return TopologyFamily::kBalancedBinaryTree;
  if (text == "random") return TopologyFamily::kRandomConnected;
  return std::nullopt;
}

std::string to_string(LabelMode mode) {
  return mode == LabelMode::kConsecutive ? "consecutive" : "random";
}

std::optional<LabelMode> parse_label_mode(const std::string& text) {
  if (text == "consecutive") return LabelMode::kConsecutive;
  if (text == "random" || text == "random-injective") return LabelMode::kRandomInjective;
  return std::nullopt;
}

std::string describe(const TopologySpec& spec) {
  std::ostringstream out;
  out << to_string(spec.family) << " n=" << spec.n << " c=" << spec.c
      << " labels=" << to_string(spec.labels) << " seed=" << spec.seed;
  if (spec.family == TopologyFamily::kRandomConnected) out << " p=" << spec.p;
  if (spec.family == TopologyFamily::kGrid && spec.grid_width != 0) out << " w=" << spec.grid_width;
  return out.str();
}

std::string spec_digest(const TopologySpec& spec) {
  const std::string text = describe(spec);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(Bytes(text.begin(), text.end()))));
  return buf;
}

Topology gen_topology(const TopologySpec& spec) {
  if (spec.n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be positive");
  if (spec.c == 0) throw Error(ErrorCode::kInvalidArgument, "c must be at least 1");
  if (spec.family == TopologyFamily::kRandomConnected && !(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "edge probability must lie in [0, 1]");
  }
  const std::uint32_t n = spec.n;
  const Label universe = checked_pow(n, spec.c);
  std::vector<Edge> edges;
  switch (spec.family) {
    case TopologyFamily::kPath:
      for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case TopologyFamily::kCycle:
      for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
      if (n >= 3) edges.emplace_back(0, n - 1);
      break;
    case TopologyFamily::kStar:
      for (std::uint32_t i = 1; i < n; ++i) edges.emplace_back(0, i);
      break;
    case TopologyFamily::kGrid: {
      const std::uint32_t w = grid_width(spec);
      const std::uint32_t h = n / w;
      for (std::uint32_t y = 0; y < h; ++y) {
        for (std::uint32_t x = 0; x < w; ++x) {
          const std::uint32_t v = y * w + x;
          if (x + 1 < w) edges.emplace_back(v, v + 1);
          if (y + 1 < h) edges.emplace_back(v, v + w);
        }
      }
      break;
    }
    case TopologyFamily::kBalancedBinaryTree:
      for (std::uint32_t i = 1; i < n; ++i) edges.emplace_back((i - 1) / 2, i);
      break;
    case TopologyFamily::kCaterpillar: {
      const std::uint32_t spine = (n + 1) / 2;
      for (std::uint32_t i = 0; i + 1 < spine; ++i) edges.emplace_back(i, i + 1);
      for (std::uint32_t j = spine; j < n; ++j) edges.emplace_back(j - spine, j);
      break;
    }
    case TopologyFamily::kRandomConnected:
      edges = random_connected_edges(n, spec.p, spec.seed);
      break;
  }
  const std::vector<Label> labels = make_labels(spec, universe);
  return Topology::build(n, spec.c, edges, labels);
}

void Verdict::merge(const Verdict& other) {
  if (!other.valid) valid = false;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

std::string Verdict::message() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

Verdict oracle_gossip_check(const Topology& topology, const GossipResult& result) {
  return oracle_gossip_check(topology, result, initial_rumors(topology));
}

Verdict oracle_gossip_check(const Topology& topology, const GossipResult& result,
                            const RumorSet& expected) {
  Verdict verdict;
  const std::uint32_t n = topology.size();
  if (result.final_rumors.size() != n) {
    verdict.fail("expected " + std::to_string(n) + " final rumor sets, got " +
                 std::to_string(result.final_rumors.size()));
  } else {
    for (NodeIndex v = 0; v < n; ++v) {
      const Label who = topology.label(v);
      const RumorSet& held = result.final_rumors[v];
      for (const auto& [origin, body] : expected) {
        auto it = held.find(origin);
        if (it == held.end()) {
          verdict.fail("node " + std::to_string(who) + " lacks the rumor of " + std::to_string(origin));
        } else if (it->second != body) {
          verdict.fail("node " + std::to_string(who) + " holds a corrupted rumor of " +
                       std::to_string(origin));
        }
      }
      for (const auto& entry : held) {
        if (!expected.contains(entry.first)) {
          verdict.fail("node " + std::to_string(who) + " holds an unknown rumor of " +
                       std::to_string(entry.first));
        }
      }
    }
  }
  if (result.leader != topology.max_label()) {
    verdict.fail("leader " + std::to_string(result.leader) + " is not the maximum label " +
                 std::to_string(topology.max_label()));
  }
  if (!result.leaders_agree) verdict.fail("nodes disagree on the leader");
  const std::uint64_t passes = n >= 2 ? 2 * std::uint64_t{n - 1} : 0;
  if (result.token_passes != passes) {
    verdict.fail("expected " + std::to_string(passes) + " token passes, got " +
                 std::to_string(result.token_passes));
  }
  return verdict;
}

EstimateOutcome brute_force_estimate(const Topology& topology, Label initiator, Label helper,
                                     const ExclusionSet& excluded, LabelRange range) {
  const auto s = topology.index_of(initiator);
  if (!s) throw Error(ErrorCode::kInvalidArgument, "initiator not in topology");
  std::vector<Label> slice;
  for (NodeIndex u : topology.neighbors(*s)) {
    const Label l = topology.label(u);
    if (range.contains(l) && !excluded.contains(l) && l != helper) slice.push_back(l);
  }
  if (slice.empty()) return EstimateOutcome::zero();
  if (slice.size() == 1) return EstimateOutcome::one(slice.front());
  return EstimateOutcome::two_plus();
}

Verdict oracle_estimate_check(const Topology& topology, Label initiator, Label helper,
                              const ExclusionSet& excluded, LabelRange range,
                              const EstimateOutcome& outcome) {
  Verdict verdict;
  const EstimateOutcome truth = brute_force_estimate(topology, initiator, helper, excluded, range);
  if (truth != outcome) {
    verdict.fail("estimate by " + std::to_string(initiator) + " over " + std::to_string(range.lo) +
                 ".." + std::to_string(range.hi) + " said " + to_string(outcome) + ", oracle says " +
                 to_string(truth));
  }
  return verdict;
}

Verdict oracle_select_check(const Topology& topology, const SelectRecord& record) {
  Verdict verdict;
  const auto s = topology.index_of(record.initiator);
  const auto h = topology.index_of(record.helper);
  const std::string who = "select by " + std::to_string(record.initiator);
  if (!s || !h) {
    verdict.fail(who + " names a label outside the topology");
    return verdict;
  }
  if (!topology.adjacent(*s, *h)) verdict.fail(who + " used non-neighbour helper " + std::to_string(record.helper));
  const ExclusionSet excluded(record.excluded);
  std::vector<Label> undiscovered;
  for (NodeIndex u : topology.neighbors(*s)) {
    if (!excluded.contains(topology.label(u))) undiscovered.push_back(topology.label(u));
  }
  if (record.found) {
    if (std::find(undiscovered.begin(), undiscovered.end(), *record.found) == undiscovered.end()) {
      verdict.fail(who + " returned " + std::to_string(*record.found) +
                   ", which is not an undiscovered neighbour");
    }
  } else if (!undiscovered.empty()) {
    verdict.fail(who + " found nothing although " + std::to_string(undiscovered.size()) +
                 " neighbours are undiscovered");
  }
  const Round bound = binary_select_round_bound(topology.universe());
  if (record.rounds > bound) {
    verdict.fail(who + " took " + std::to_string(record.rounds) + " rounds, bound " + std::to_string(bound));
  }
  if (record.rounds != kEstimateRounds * record.probes) {
    verdict.fail(who + " spent " + std::to_string(record.rounds) + " rounds on " +
                 std::to_string(record.probes) + " estimates");
  }
  return verdict;
}

Verdict stage_accounting_check(const ProtocolPlan& plan, const GossipResult& result) {
  Verdict verdict;
  auto expect = [&verdict](const char* what, Round got, Round want) {
    if (got != want) {
      verdict.fail(std::string(what) + " took " + std::to_string(got) + " rounds, expected " +
                   std::to_string(want));
    }
  };
  const Round sum = result.stage_rounds[0] + result.stage_rounds[1] + result.stage_rounds[2] +
                    result.stage_rounds[3];
  expect("the whole protocol", result.total, sum);
  if (plan.n <= 1) {
    expect("the whole protocol", result.total, 0);
    return verdict;
  }
  expect("stage 1", result.stage_rounds[0], plan.election_rounds());
  const Round solicited = 2 + plan.family->size();
  if (plan.helper_variant == HelperVariant::kSelectiveFamily) {
    expect("stage 2", result.stage_rounds[1], solicited);
  } else if (result.stage_rounds[1] != 1 && result.stage_rounds[1] != solicited) {
    verdict.fail("stage 2 took " + std::to_string(result.stage_rounds[1]) + " rounds, expected 1 or " +
                 std::to_string(solicited));
  }
  const Round bound = token_stage_bound(plan.n, plan.universe);
  if (result.stage_rounds[2] > bound) {
    verdict.fail("stage 3 took " + std::to_string(result.stage_rounds[2]) + " rounds, bound " +
                 std::to_string(bound));
  }
  expect("stage 4", result.stage_rounds[3], plan.primitive.nb_bound);
  return verdict;
}

Verdict check_run(const Topology& topology, const ProtocolPlan& plan, const GossipResult& result) {
  Verdict verdict = oracle_gossip_check(topology, result);
  verdict.merge(stage_accounting_check(plan, result));
  for (const auto& record : result.select_log) verdict.merge(oracle_select_check(topology, record));
  return verdict;
}

std::vector<TopologySpec> verification_corpus(std::uint32_t c, std::uint64_t seed,
                                              std::uint32_t random_per_n,
                                              const std::vector<std::uint32_t>& ns) {
  std::vector<TopologySpec> corpus;
  for (std::uint32_t n : ns) {
    for (TopologyFamily family : kDeterministicFamilies) {
      for (LabelMode mode : {LabelMode::kConsecutive, LabelMode::kRandomInjective}) {
        TopologySpec spec;
        spec.family = family;
        spec.n = n;
        spec.c = c;
        spec.labels = mode;
        spec.seed = detail::mix_seed(seed, n);
        corpus.push_back(spec);
      }
    }
    for (std::uint32_t i = 0; i < random_per_n; ++i) {
      TopologySpec spec;
      spec.family = TopologyFamily::kRandomConnected;
      spec.n = n;
      spec.c = c;
      spec.labels = i % 2 == 0 ? LabelMode::kRandomInjective : LabelMode::kConsecutive;
      spec.seed = detail::mix_seed(seed + 1 + i, n);
      corpus.push_back(spec);
    }
  }
  return corpus;
}

namespace {

// Plans depend only on (n, N, configuration), so corpus and bench runs share
// them across topologies.
class PlanCache {
 public:
  explicit PlanCache(GossipConfig base) : base_(std::move(base)) {}

  const ProtocolPlan& get(std::uint32_t n, Label universe, BroadcastKind kind) {
    const auto key = std::make_tuple(n, universe, kind);
    auto it = plans_.find(key);
    if (it == plans_.end()) {
      GossipConfig config = base_;
      config.broadcast = kind;
      it = plans_.emplace(key, make_plan(n, universe, config)).first;
    }
    return it->second;
  }

 private:
  GossipConfig base_;
  std::map<std::tuple<std::uint32_t, Label, BroadcastKind>, ProtocolPlan> plans_;
};

}  // namespace

CorpusReport verify_corpus(const CorpusOptions& options,
                           const std::function<void(const CaseReport&)>& progress) {
  CorpusReport report;
  PlanCache plans(options.base);
  for (const TopologySpec& spec :
       verification_corpus(options.c, options.seed, options.random_per_n, options.ns)) {
    const Topology topology = gen_topology(spec);
    for (BroadcastKind kind : options.kinds) {
      CaseReport entry;
      entry.spec = spec;
      entry.kind = kind;
      try {
        const ProtocolPlan& plan = plans.get(topology.size(), topology.universe(), kind);
        const GossipResult result = gossip(topology, plan, initial_rumors(topology));
        entry.verdict = check_run(topology, plan, result);
        entry.total = result.total;
        report.selects_checked += result.select_log.size();
        for (const auto& s : result.select_log) {
          report.max_select_rounds = std::max(report.max_select_rounds, s.rounds);
        }
      } catch (const Error& e) {
        entry.verdict.fail(std::string(to_string(e.code())) + ": " + e.what());
      }
      ++report.instances;
      if (!entry.verdict.valid) {
        ++report.failures;
        report.failed.push_back(entry);
      }
      if (progress) progress(entry);
    }
  }
  return report;
}

double bench_denominator(std::uint32_t n) noexcept {
  const double lg = std::max(1.0, std::log2(static_cast<double>(n)));
  const double lglg = std::max(1.0, std::log2(lg));
  return static_cast<double>(n) * lg * lg * lglg;
}

BenchSummary bench_suite(const BenchOptions& options) {
  BenchSummary summary;
  PlanCache plans(options.base);
  for (std::uint32_t n : options.ns) {
    for (TopologyFamily family : options.families) {
      for (std::uint64_t seed : options.seeds) {
        TopologySpec spec;
        spec.family = family;
        spec.n = n;
        spec.c = options.c;
        spec.labels = options.labels;
        spec.seed = seed;
        const Topology topology = gen_topology(spec);
        const ProtocolPlan& plan = plans.get(n, topology.universe(), options.base.broadcast);
        const GossipResult result = gossip(topology, plan, initial_rumors(topology));
        const Verdict verdict = oracle_gossip_check(topology, result);
        if (!verdict.valid) {
          throw Error(ErrorCode::kVerificationFailed,
                      "bench instance '" + describe(spec) + "' (seed " + std::to_string(seed) +
                          ") failed: " + verdict.message());
        }
        BenchRecord record;
        record.spec_digest = spec_digest(spec);
        record.family = family;
        record.kind = options.base.broadcast;
        record.n = n;
        record.universe = topology.universe();
        record.seed = seed;
        record.stage_rounds = result.stage_rounds;
        record.total = result.total;
        record.ratio = static_cast<double>(result.total) / bench_denominator(n);
        summary.records.push_back(record);
      }
    }
  }
  std::stable_sort(summary.records.begin(), summary.records.end(),
                   [](const BenchRecord& a, const BenchRecord& b) {
                     return std::tie(a.n, a.family, a.seed) < std::tie(b.n, b.family, b.seed);
                   });
  if (summary.records.empty()) return summary;
  const std::uint32_t lo = summary.records.front().n;
  const std::uint32_t hi = summary.records.back().n;
  double lo_sum = 0, hi_sum = 0;
  int lo_count = 0, hi_count = 0;
  for (const auto& r : summary.records) {
    summary.max_ratio = std::max(summary.max_ratio, r.ratio);
    if (r.n == lo) lo_sum += r.ratio, ++lo_count;
    if (r.n == hi) hi_sum += r.ratio, ++hi_count;
  }
  summary.smallest_n_ratio = lo_sum / lo_count;
  summary.largest_n_ratio = hi_sum / hi_count;
  summary.within_cap = options.ratio_cap <= 0.0 || summary.max_ratio <= options.ratio_cap;
  return summary;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << "spec_digest,family,broadcast,n,N,seed,stage1,stage2,stage3,stage4,total,ratio\n";
  char ratio[32];
  for (const auto& r : records) {
    std::snprintf(ratio, sizeof ratio, "%.6f", r.ratio);
    out << r.spec_digest << ',' << to_string(r.family) << ',' << to_string(r.kind) << ',' << r.n << ','
        << r.universe << ',' << r.seed << ',' << r.stage_rounds[0] << ',' << r.stage_rounds[1] << ','
        << r.stage_rounds[2] << ',' << r.stage_rounds[3] << ',' << r.total << ',' << ratio << '\n';
  }
}

}  // namespace radiogossip
