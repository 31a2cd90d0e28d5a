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


#include "radiogossip/radiogossip.h"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "radiogossip/gossip.hpp"
#include "radiogossip/harness.hpp"
#include "radiogossip/selectors.hpp"
#include "radiogossip/topology.hpp"
#include "radiogossip/trace.hpp"

struct rg_topology {
  radiogossip::Topology topology;
};

struct rg_result {
  radiogossip::GossipResult result;
  radiogossip::ProtocolPlan plan;
  std::string summary;
};

struct rg_family {
  radiogossip::SelectiveFamily family;
};

namespace {

using radiogossip::Error;
using radiogossip::ErrorCode;

thread_local std::string last_error;

rg_status fail(rg_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

rg_status status_of(ErrorCode code) { return static_cast<rg_status>(static_cast<int>(code)); }

// Runs `body`, translating exceptions into status codes.
template <typename F>
rg_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RG_ERR_INTERNAL, e.what());
  }
}

std::vector<std::string> split_list(const char* text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

radiogossip::BroadcastKind broadcast_kind(const char* text) {
  const auto kind = radiogossip::parse_broadcast_kind(text != nullptr ? text : "oracle");
  if (!kind) throw Error(ErrorCode::kInvalidArgument, std::string("unknown broadcast kind '") + text + "'");
  return *kind;
}

radiogossip::GossipConfig gossip_config(const rg_gossip_config* config) {
  rg_gossip_config defaults;
  rg_gossip_config_init(&defaults);
  if (config == nullptr) config = &defaults;
  radiogossip::GossipConfig out;
  out.broadcast = broadcast_kind(config->broadcast);
  if (!(config->c_rb > 0.0)) throw Error(ErrorCode::kInvalidArgument, "c_rb must be positive");
  out.broadcast_config.c_rb = config->c_rb;
  out.broadcast_config.family_seed = config->family_seed;
  switch (config->helper_variant) {
    case 'a':
    case 'A':
      out.helper_variant = radiogossip::HelperVariant::kOverheard;
      break;
    case 'b':
    case 'B':
      out.helper_variant = radiogossip::HelperVariant::kSelectiveFamily;
      break;
    default:
      throw Error(ErrorCode::kInvalidArgument, "helper variant must be 'a' or 'b'");
  }
  return out;
}

}  // namespace

extern "C" {

const char* rg_version(void) { return "1.0.0"; }

const char* rg_status_name(rg_status status) {
  if (status == RG_OK) return "ok";
  if (status == RG_ERR_INTERNAL) return "internal error";
  if (status >= RG_ERR_INVALID_ARGUMENT && status <= RG_ERR_VERIFICATION_FAILED) {
    return radiogossip::to_string(static_cast<ErrorCode>(status));
  }
  return "unknown status";
}

const char* rg_last_error(void) { return last_error.c_str(); }

rg_status rg_topology_create(uint32_t n, uint32_t c, const uint32_t* edges, size_t edge_count,
                             const uint64_t* labels, rg_topology** out) {
  return guarded([&] {
    if (out == nullptr || labels == nullptr || (edges == nullptr && edge_count > 0)) {
      return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    }
    std::vector<radiogossip::Edge> list;
    for (size_t i = 0; i < edge_count; ++i) list.emplace_back(edges[2 * i], edges[2 * i + 1]);
    std::vector<radiogossip::Label> label_list(labels, labels + n);
    *out = new rg_topology{radiogossip::Topology::build(n, c, list, label_list)};
    return RG_OK;
  });
}

rg_status rg_topology_load(const char* path, rg_topology** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    *out = new rg_topology{radiogossip::load_topology(path)};
    return RG_OK;
  });
}

rg_status rg_topology_save(const rg_topology* topology, const char* path) {
  return guarded([&] {
    if (topology == nullptr || path == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    radiogossip::save_topology(path, topology->topology);
    return RG_OK;
  });
}

void rg_topology_free(rg_topology* topology) { delete topology; }

void rg_topology_spec_init(rg_topology_spec* spec) {
  if (spec == nullptr) return;
  *spec = rg_topology_spec{"path", 1, 2, "consecutive", 1, 0.1, 0};
}

rg_status rg_topology_generate(const rg_topology_spec* spec, rg_topology** out) {
  return guarded([&] {
    if (spec == nullptr || out == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    radiogossip::TopologySpec s;
    const auto family = radiogossip::parse_topology_family(spec->family != nullptr ? spec->family : "");
    if (!family) return fail(RG_ERR_INVALID_ARGUMENT, "unknown topology family");
    const auto labels = radiogossip::parse_label_mode(spec->labels != nullptr ? spec->labels : "");
    if (!labels) return fail(RG_ERR_INVALID_ARGUMENT, "unknown label mode");
    s.family = *family;
    s.labels = *labels;
    s.n = spec->n;
    s.c = spec->c;
    s.seed = spec->seed;
    s.p = spec->p;
    s.grid_width = spec->grid_width;
    *out = new rg_topology{radiogossip::gen_topology(s)};
    return RG_OK;
  });
}

uint32_t rg_topology_size(const rg_topology* topology) { return topology ? topology->topology.size() : 0; }

uint64_t rg_topology_universe(const rg_topology* topology) {
  return topology ? topology->topology.universe() : 0;
}

uint64_t rg_topology_label(const rg_topology* topology, uint32_t index) {
  if (topology == nullptr || index >= topology->topology.size()) return 0;
  return topology->topology.label(index);
}

size_t rg_topology_edge_count(const rg_topology* topology) {
  return topology ? topology->topology.edges().size() : 0;
}

int rg_topology_connected(const rg_topology* topology) {
  return topology && topology->topology.connected() ? 1 : 0;
}

int64_t rg_topology_diameter(const rg_topology* topology) {
  if (topology == nullptr || !topology->topology.diameter()) return -1;
  return *topology->topology.diameter();
}

void rg_gossip_config_init(rg_gossip_config* config) {
  if (config == nullptr) return;
  *config = rg_gossip_config{"oracle", 1.0, 'b', 1};
}

rg_status rg_gossip_run(const rg_topology* topology, const rg_gossip_config* config,
                        const char* trace_path, rg_result** out) {
  return guarded([&] {
    if (topology == nullptr || out == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    const auto& t = topology->topology;
    if (!t.connected()) return fail(RG_ERR_DISCONNECTED, "gossiping needs a connected topology");
    auto holder = std::make_unique<rg_result>();
    holder->plan = radiogossip::make_plan(t.size(), t.universe(), gossip_config(config));
    if (trace_path != nullptr) {
      std::ofstream file(trace_path, std::ios::binary);
      if (!file) return fail(RG_ERR_IO, std::string("cannot open ") + trace_path);
      radiogossip::JsonlTraceWriter writer(file);
      holder->result = radiogossip::gossip(t, holder->plan, radiogossip::initial_rumors(t), &writer);
      if (!file) return fail(RG_ERR_IO, std::string("failed writing ") + trace_path);
    } else {
      holder->result = radiogossip::gossip(t, holder->plan, radiogossip::initial_rumors(t));
    }
    holder->summary = radiogossip::summary_line(holder->result);
    *out = holder.release();
    return RG_OK;
  });
}

void rg_result_free(rg_result* result) { delete result; }

uint64_t rg_result_leader(const rg_result* r) { return r ? r->result.leader : 0; }
uint64_t rg_result_helper(const rg_result* r) { return r ? r->result.helper : 0; }
int rg_result_leaders_agree(const rg_result* r) { return r && r->result.leaders_agree ? 1 : 0; }

uint64_t rg_result_stage_rounds(const rg_result* r, int stage) {
  if (r == nullptr || stage < 1 || stage > 4) return 0;
  return r->result.stage_rounds[stage - 1];
}

uint64_t rg_result_total(const rg_result* r) { return r ? r->result.total : 0; }
uint64_t rg_result_token_passes(const rg_result* r) { return r ? r->result.token_passes : 0; }
uint64_t rg_result_nb_bound(const rg_result* r) { return r ? r->result.nb_bound : 0; }

size_t rg_result_rumor_count(const rg_result* r, uint32_t index) {
  if (r == nullptr || index >= r->result.final_rumors.size()) return 0;
  return r->result.final_rumors[index].size();
}

const char* rg_result_summary(const rg_result* r) { return r ? r->summary.c_str() : ""; }

rg_status rg_result_check(const rg_topology* topology, const rg_result* result) {
  return guarded([&] {
    if (topology == nullptr || result == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    const auto verdict = radiogossip::check_run(topology->topology, result->plan, result->result);
    if (!verdict.valid) return fail(RG_ERR_VERIFICATION_FAILED, verdict.message());
    return RG_OK;
  });
}

rg_status rg_family_build(uint64_t k, uint64_t universe, uint64_t seed, rg_family** out) {
  return guarded([&] {
    if (out == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    *out = new rg_family{radiogossip::build_selective_family(k, universe, seed).family};
    return RG_OK;
  });
}

rg_status rg_family_load(const char* path, rg_family** out) {
  return guarded([&] {
    if (path == nullptr || out == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    std::ifstream in(path);
    if (!in) return fail(RG_ERR_IO, std::string("cannot open ") + path);
    *out = new rg_family{radiogossip::read_family(in)};
    return RG_OK;
  });
}

rg_status rg_family_save(const rg_family* family, const char* path) {
  return guarded([&] {
    if (family == nullptr || path == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    std::ofstream out(path);
    if (!out) return fail(RG_ERR_IO, std::string("cannot open ") + path);
    radiogossip::write_family(out, family->family);
    if (!out) return fail(RG_ERR_IO, std::string("failed writing ") + path);
    return RG_OK;
  });
}

void rg_family_free(rg_family* family) { delete family; }
size_t rg_family_size(const rg_family* f) { return f ? f->family.size() : 0; }
uint64_t rg_family_k(const rg_family* f) { return f ? f->family.k : 0; }
uint64_t rg_family_universe(const rg_family* f) { return f ? f->family.universe : 0; }

rg_status rg_family_verify(const rg_family* family, uint64_t cap, int* valid) {
  return guarded([&] {
    if (family == nullptr || valid == nullptr) return fail(RG_ERR_INVALID_ARGUMENT, "null argument");
    const auto verdict = radiogossip::verify_exhaustive(family->family, cap);
    *valid = verdict.valid ? 1 : 0;
    if (!verdict.valid) {
      std::string witness;
      for (auto l : verdict.counterexample) witness += (witness.empty() ? "" : ",") + std::to_string(l);
      last_error = "no set isolates an element of {" + witness + "}";
    }
    return RG_OK;
  });
}

void rg_corpus_options_init(rg_corpus_options* options) {
  if (options == nullptr) return;
  *options = rg_corpus_options{2, 1, 25, nullptr, 0, nullptr};
}

rg_status rg_verify_corpus(const rg_corpus_options* options, rg_case_callback callback, void* user,
                           uint64_t* instances, uint64_t* failures) {
  return guarded([&] {
    rg_corpus_options defaults;
    rg_corpus_options_init(&defaults);
    if (options == nullptr) options = &defaults;
    radiogossip::CorpusOptions o;
    o.c = options->c;
    o.seed = options->seed;
    o.random_per_n = options->random_per_n;
    if (options->ns != nullptr) o.ns.assign(options->ns, options->ns + options->ns_count);
    if (options->broadcasts != nullptr) {
      o.kinds.clear();
      for (const auto& name : split_list(options->broadcasts)) o.kinds.push_back(broadcast_kind(name.c_str()));
    }
    std::function<void(const radiogossip::CaseReport&)> progress;
    if (callback != nullptr) {
      progress = [&](const radiogossip::CaseReport& c) {
        const std::string description = radiogossip::describe(c.spec);
        const std::string kind = radiogossip::to_string(c.kind);
        const std::string message = c.verdict.message();
        callback(description.c_str(), kind.c_str(), c.verdict.valid ? 1 : 0, message.c_str(), user);
      };
    }
    const auto report = radiogossip::verify_corpus(o, progress);
    if (instances != nullptr) *instances = report.instances;
    if (failures != nullptr) *failures = report.failures;
    if (!report.passed()) {
      return fail(RG_ERR_VERIFICATION_FAILED,
                  std::to_string(report.failures) + " of " + std::to_string(report.instances) +
                      " corpus instances failed");
    }
    return RG_OK;
  });
}

void rg_bench_options_init(rg_bench_options* options) {
  if (options == nullptr) return;
  *options = rg_bench_options{nullptr, 0, 2, "path,grid,random", nullptr, 0, "random", "oracle", 1.0, 0.0};
}

rg_status rg_bench_run(const rg_bench_options* options, const char* csv_path, rg_line_callback line,
                       void* user, rg_bench_summary* summary) {
  return guarded([&] {
    rg_bench_options defaults;
    rg_bench_options_init(&defaults);
    if (options == nullptr) options = &defaults;
    radiogossip::BenchOptions o;
    if (options->ns != nullptr) o.ns.assign(options->ns, options->ns + options->ns_count);
    if (options->seeds != nullptr) o.seeds.assign(options->seeds, options->seeds + options->seeds_count);
    o.c = options->c;
    if (options->families != nullptr) {
      o.families.clear();
      for (const auto& name : split_list(options->families)) {
        const auto family = radiogossip::parse_topology_family(name);
        if (!family) return fail(RG_ERR_INVALID_ARGUMENT, "unknown topology family '" + name + "'");
        o.families.push_back(*family);
      }
    }
    if (options->labels != nullptr) {
      const auto mode = radiogossip::parse_label_mode(options->labels);
      if (!mode) return fail(RG_ERR_INVALID_ARGUMENT, "unknown label mode");
      o.labels = *mode;
    }
    o.base.broadcast = broadcast_kind(options->broadcast);
    if (!(options->c_rb > 0.0)) return fail(RG_ERR_INVALID_ARGUMENT, "c_rb must be positive");
    o.base.broadcast_config.c_rb = options->c_rb;
    o.ratio_cap = options->ratio_cap;

    const auto result = radiogossip::bench_suite(o);
    std::ostringstream csv;
    radiogossip::write_bench_csv(csv, result.records);
    const std::string text = csv.str();
    if (csv_path != nullptr) {
      std::ofstream file(csv_path);
      if (!file) return fail(RG_ERR_IO, std::string("cannot open ") + csv_path);
      file << text;
      if (!file) return fail(RG_ERR_IO, std::string("failed writing ") + csv_path);
    }
    if (line != nullptr) {
      std::istringstream lines(text);
      std::string row;
      while (std::getline(lines, row)) line(row.c_str(), user);
    }
    if (summary != nullptr) {
      summary->records = result.records.size();
      summary->max_ratio = result.max_ratio;
      summary->smallest_n_ratio = result.smallest_n_ratio;
      summary->largest_n_ratio = result.largest_n_ratio;
      summary->within_cap = result.within_cap ? 1 : 0;
    }
    if (!result.within_cap) {
      return fail(RG_ERR_VERIFICATION_FAILED, "ratio " + std::to_string(result.max_ratio) +
                                                  " exceeds the cap " + std::to_string(options->ratio_cap));
    }
    return RG_OK;
  });
}

}  // extern "C"
