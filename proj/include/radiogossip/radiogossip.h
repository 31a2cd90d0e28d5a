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


/* C interface to the radiogossip simulator. All objects are opaque handles
 * released with the matching *_free function. Functions returning rg_status
 * leave a thread-local message behind for rg_last_error() on failure. */

#ifndef RADIOGOSSIP_RADIOGOSSIP_H_
#define RADIOGOSSIP_RADIOGOSSIP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(RG_BUILDING_LIBRARY)
#define RG_API __attribute__((visibility("default")))
#else
#define RG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rg_status {
  RG_OK = 0,
  RG_ERR_INVALID_ARGUMENT = 1,
  RG_ERR_DUPLICATE_LABEL = 2,
  RG_ERR_LABEL_OUT_OF_UNIVERSE = 3,
  RG_ERR_SELF_LOOP = 4,
  RG_ERR_INDEX_OUT_OF_RANGE = 5,
  RG_ERR_PARSE = 6,
  RG_ERR_IO = 7,
  RG_ERR_DISCONNECTED = 8,
  RG_ERR_CONSTRUCTION_FAILED = 9,
  RG_ERR_VERIFICATION_CAP_EXCEEDED = 10,
  RG_ERR_MODEL_VIOLATION = 11,
  RG_ERR_VERIFICATION_FAILED = 12,
  RG_ERR_INTERNAL = 100
} rg_status;

typedef struct rg_topology rg_topology;
typedef struct rg_result rg_result;
typedef struct rg_family rg_family;

RG_API const char* rg_version(void);
RG_API const char* rg_status_name(rg_status status);
/* Message of the last failure on this thread; empty when none. */
RG_API const char* rg_last_error(void);

/* ---- topologies ---------------------------------------------------------- */

/* edges holds edge_count pairs of node indices, flattened. */
RG_API rg_status rg_topology_create(uint32_t n, uint32_t c, const uint32_t* edges, size_t edge_count,
                                    const uint64_t* labels, rg_topology** out);
RG_API rg_status rg_topology_load(const char* path, rg_topology** out);
RG_API rg_status rg_topology_save(const rg_topology* topology, const char* path);
RG_API void rg_topology_free(rg_topology* topology);

typedef struct rg_topology_spec {
  /* path, cycle, star, grid, tree, caterpillar or random */
  const char* family;
  uint32_t n;
  uint32_t c;
  /* consecutive or random */
  const char* labels;
  uint64_t seed;
  double p;
  /* 0 picks the widest divisor of n not above sqrt(n) */
  uint32_t grid_width;
} rg_topology_spec;

RG_API void rg_topology_spec_init(rg_topology_spec* spec);
RG_API rg_status rg_topology_generate(const rg_topology_spec* spec, rg_topology** out);

RG_API uint32_t rg_topology_size(const rg_topology* topology);
RG_API uint64_t rg_topology_universe(const rg_topology* topology);
RG_API uint64_t rg_topology_label(const rg_topology* topology, uint32_t index);
RG_API size_t rg_topology_edge_count(const rg_topology* topology);
RG_API int rg_topology_connected(const rg_topology* topology);
/* -1 when disconnected. */
RG_API int64_t rg_topology_diameter(const rg_topology* topology);

/* ---- gossiping ----------------------------------------------------------- */

typedef struct rg_gossip_config {
  /* roundrobin, sf or oracle */
  const char* broadcast;
  double c_rb;
  /* 'a' (overheard neighbour) or 'b' (selective-family solicitation) */
  char helper_variant;
  uint64_t family_seed;
} rg_gossip_config;

RG_API void rg_gossip_config_init(rg_gossip_config* config);

/* Runs the whole protocol. trace_path may be NULL; otherwise one JSON line
 * per round is written there. */
RG_API rg_status rg_gossip_run(const rg_topology* topology, const rg_gossip_config* config,
                               const char* trace_path, rg_result** out);
RG_API void rg_result_free(rg_result* result);

RG_API uint64_t rg_result_leader(const rg_result* result);
RG_API uint64_t rg_result_helper(const rg_result* result);
RG_API int rg_result_leaders_agree(const rg_result* result);
/* stage is 1..4; anything else yields 0. */
RG_API uint64_t rg_result_stage_rounds(const rg_result* result, int stage);
RG_API uint64_t rg_result_total(const rg_result* result);
RG_API uint64_t rg_result_token_passes(const rg_result* result);
RG_API uint64_t rg_result_nb_bound(const rg_result* result);
RG_API size_t rg_result_rumor_count(const rg_result* result, uint32_t index);
/* JSON object with leader, stage1..stage4, total, token_passes. Owned by
 * the result. */
RG_API const char* rg_result_summary(const rg_result* result);
/* RG_OK when the run passes every oracle; RG_ERR_VERIFICATION_FAILED with
 * the violations in rg_last_error() otherwise. */
RG_API rg_status rg_result_check(const rg_topology* topology, const rg_result* result);

/* ---- selective families -------------------------------------------------- */

RG_API rg_status rg_family_build(uint64_t k, uint64_t universe, uint64_t seed, rg_family** out);
RG_API rg_status rg_family_load(const char* path, rg_family** out);
RG_API rg_status rg_family_save(const rg_family* family, const char* path);
RG_API void rg_family_free(rg_family* family);
RG_API size_t rg_family_size(const rg_family* family);
RG_API uint64_t rg_family_k(const rg_family* family);
RG_API uint64_t rg_family_universe(const rg_family* family);
/* Exhaustive check. *valid is 1 or 0; a counterexample goes to
 * rg_last_error(). */
RG_API rg_status rg_family_verify(const rg_family* family, uint64_t cap, int* valid);

/* ---- harness ------------------------------------------------------------- */

typedef void (*rg_case_callback)(const char* description, const char* broadcast, int valid,
                                 const char* message, void* user);

typedef struct rg_corpus_options {
  uint32_t c;
  uint64_t seed;
  uint32_t random_per_n;
  /* NULL selects 1, 2, 3, 4, 8, 16, 32, 64. */
  const uint32_t* ns;
  size_t ns_count;
  /* Comma-separated broadcast kinds; NULL selects all three. */
  const char* broadcasts;
} rg_corpus_options;

RG_API void rg_corpus_options_init(rg_corpus_options* options);
/* Returns RG_OK when every case passes, RG_ERR_VERIFICATION_FAILED otherwise. */
RG_API rg_status rg_verify_corpus(const rg_corpus_options* options, rg_case_callback callback,
                                  void* user, uint64_t* instances, uint64_t* failures);

typedef struct rg_bench_options {
  const uint32_t* ns;
  size_t ns_count;
  uint32_t c;
  /* Comma-separated topology families. */
  const char* families;
  const uint64_t* seeds;
  size_t seeds_count;
  const char* labels;
  const char* broadcast;
  double c_rb;
  /* 0 disables the cap check. */
  double ratio_cap;
} rg_bench_options;

typedef struct rg_bench_summary {
  uint64_t records;
  double max_ratio;
  double smallest_n_ratio;
  double largest_n_ratio;
  int within_cap;
} rg_bench_summary;

typedef void (*rg_line_callback)(const char* line, void* user);

RG_API void rg_bench_options_init(rg_bench_options* options);
/* Feeds the CSV (header first) to `line` and, when csv_path is not NULL,
 * writes it there too. Returns RG_ERR_VERIFICATION_FAILED, with the summary
 * still filled in, when a ratio exceeds a nonzero ratio_cap. */
RG_API rg_status rg_bench_run(const rg_bench_options* options, const char* csv_path,
                              rg_line_callback line, void* user, rg_bench_summary* summary);

#ifdef __cplusplus
}
#endif

#endif /* RADIOGOSSIP_RADIOGOSSIP_H_ */
