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


// Command-line front end over the C API: gen, run, verify, bench, family.
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "radiogossip/radiogossip.h"

namespace {

constexpr int kPass = 0;
constexpr int kVerificationFailure = 1;
constexpr int kUsageError = 2;

int report(rg_status status) {
  if (status == RG_OK) return kPass;
  std::cerr << "gossip: " << rg_status_name(status);
  if (*rg_last_error() != '\0') std::cerr << ": " << rg_last_error();
  std::cerr << "\n";
  if (status == RG_ERR_VERIFICATION_FAILED || status == RG_ERR_MODEL_VIOLATION) {
    return kVerificationFailure;
  }
  return kUsageError;
}

// Accepts "r" or "p/q".
std::optional<double> parse_constant(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) return std::nullopt;
      return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double p = std::stod(num, &used);
    if (used != num.size()) return std::nullopt;
    const double q = std::stod(den, &used);
    if (used != den.size() || q == 0.0) return std::nullopt;
    return p / q;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct GenArgs {
  std::string family = "path";
  std::uint32_t n = 8;
  std::uint32_t c = 2;
  std::string labels = "consecutive";
  std::uint64_t seed = 1;
  double p = 0.1;
  std::uint32_t width = 0;
  std::string out;
};

struct RunArgs {
  std::string topology;
  std::string broadcast = "oracle";
  std::string c_rb = "1";
  std::string helper_variant = "b";
  std::uint64_t family_seed = 1;
  std::string trace;
};

struct VerifyArgs {
  std::uint32_t c = 2;
  std::uint64_t seed = 1;
  std::uint32_t random_per_n = 25;
  std::vector<std::uint32_t> ns;
  std::string broadcast;
  bool quiet = false;
};

struct BenchArgs {
  std::vector<std::uint32_t> ns = {8, 16, 32, 64};
  std::uint32_t c = 2;
  std::string families = "path,grid,random";
  std::vector<std::uint64_t> seeds = {1};
  std::string labels = "random";
  std::string broadcast = "oracle";
  std::string c_rb = "1";
  double ratio_cap = 0.0;
  std::string out;
};

struct FamilyArgs {
  std::uint64_t k = 2;
  std::uint64_t universe = 16;
  std::uint64_t seed = 1;
  std::string out;
  std::string verify;
  std::uint64_t cap = 10'000'000;
};

int run_gen(const GenArgs& a) {
  rg_topology_spec spec;
  rg_topology_spec_init(&spec);
  spec.family = a.family.c_str();
  spec.n = a.n;
  spec.c = a.c;
  spec.labels = a.labels.c_str();
  spec.seed = a.seed;
  spec.p = a.p;
  spec.grid_width = a.width;
  rg_topology* topology = nullptr;
  if (rg_status s = rg_topology_generate(&spec, &topology); s != RG_OK) return report(s);
  const rg_status s = rg_topology_save(topology, a.out.empty() ? "/dev/stdout" : a.out.c_str());
  rg_topology_free(topology);
  return report(s);
}

int run_gossip(const RunArgs& a) {
  const auto c_rb = parse_constant(a.c_rb);
  if (!c_rb) {
    std::cerr << "gossip: --c-rb expects a number or p/q, got '" << a.c_rb << "'\n";
    return kUsageError;
  }
  rg_topology* topology = nullptr;
  if (rg_status s = rg_topology_load(a.topology.c_str(), &topology); s != RG_OK) return report(s);
  rg_gossip_config config;
  rg_gossip_config_init(&config);
  config.broadcast = a.broadcast.c_str();
  config.c_rb = *c_rb;
  config.helper_variant = a.helper_variant.front();
  config.family_seed = a.family_seed;
  rg_result* result = nullptr;
  rg_status s = rg_gossip_run(topology, &config, a.trace.empty() ? nullptr : a.trace.c_str(), &result);
  if (s == RG_OK) {
    std::cout << rg_result_summary(result) << "\n";
    s = rg_result_check(topology, result);
  }
  rg_result_free(result);
  rg_topology_free(topology);
  return report(s);
}

void print_case(const char* description, const char* broadcast, int valid, const char* message,
                void* user) {
  const bool quiet = *static_cast<bool*>(user);
  if (!valid) {
    std::cout << "FAIL " << description << " broadcast=" << broadcast << ": " << message << "\n";
  } else if (!quiet) {
    std::cout << "ok   " << description << " broadcast=" << broadcast << "\n";
  }
}

int run_verify(VerifyArgs a) {
  rg_corpus_options options;
  rg_corpus_options_init(&options);
  options.c = a.c;
  options.seed = a.seed;
  options.random_per_n = a.random_per_n;
  if (!a.ns.empty()) {
    options.ns = a.ns.data();
    options.ns_count = a.ns.size();
  }
  if (!a.broadcast.empty()) options.broadcasts = a.broadcast.c_str();
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  const rg_status s = rg_verify_corpus(&options, print_case, &a.quiet, &instances, &failures);
  if (s == RG_OK || s == RG_ERR_VERIFICATION_FAILED) {
    std::cout << "verified " << instances << " instances, " << failures << " failures\n";
  }
  return report(s);
}

void print_line(const char* line, void*) { std::cout << line << "\n"; }

int run_bench(const BenchArgs& a) {
  const auto c_rb = parse_constant(a.c_rb);
  if (!c_rb) {
    std::cerr << "gossip: --c-rb expects a number or p/q, got '" << a.c_rb << "'\n";
    return kUsageError;
  }
  rg_bench_options options;
  rg_bench_options_init(&options);
  options.ns = a.ns.data();
  options.ns_count = a.ns.size();
  options.c = a.c;
  options.families = a.families.c_str();
  options.seeds = a.seeds.data();
  options.seeds_count = a.seeds.size();
  options.labels = a.labels.c_str();
  options.broadcast = a.broadcast.c_str();
  options.c_rb = *c_rb;
  options.ratio_cap = a.ratio_cap;
  rg_bench_summary summary{};
  const rg_status s = rg_bench_run(&options, a.out.empty() ? nullptr : a.out.c_str(),
                                   a.out.empty() ? print_line : nullptr, nullptr, &summary);
  if (s == RG_OK || s == RG_ERR_VERIFICATION_FAILED) {
    std::fprintf(a.out.empty() ? stderr : stdout,
                 "records=%llu max_ratio=%.6f smallest_n_ratio=%.6f largest_n_ratio=%.6f within_cap=%s\n",
                 static_cast<unsigned long long>(summary.records), summary.max_ratio,
                 summary.smallest_n_ratio, summary.largest_n_ratio, summary.within_cap ? "yes" : "no");
  }
  return report(s);
}

int run_family(const FamilyArgs& a) {
  rg_family* family = nullptr;
  rg_status s = a.verify.empty() ? rg_family_build(a.k, a.universe, a.seed, &family)
                                 : rg_family_load(a.verify.c_str(), &family);
  if (s != RG_OK) return report(s);
  if (!a.verify.empty()) {
    int valid = 0;
    s = rg_family_verify(family, a.cap, &valid);
    if (s == RG_OK) {
      std::cout << "k=" << rg_family_k(family) << " N=" << rg_family_universe(family)
                << " size=" << rg_family_size(family) << " selective=" << (valid ? "yes" : "no") << "\n";
      if (!valid) {
        std::cout << rg_last_error() << "\n";
        s = RG_ERR_VERIFICATION_FAILED;
      }
    }
  } else {
    s = rg_family_save(family, a.out.empty() ? "/dev/stdout" : a.out.c_str());
  }
  rg_family_free(family);
  return s == RG_ERR_VERIFICATION_FAILED ? kVerificationFailure : report(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic gossiping in radio networks with large labels"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a topology file");
  gen_cmd->add_option("--family", gen.family, "path|cycle|star|grid|tree|caterpillar|random")
      ->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "Number of nodes")->capture_default_str();
  gen_cmd->add_option("--c", gen.c, "Label exponent, N = n^c")->capture_default_str();
  gen_cmd->add_option("--labels", gen.labels, "consecutive|random")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "Edge probability for random graphs")->capture_default_str();
  gen_cmd->add_option("--width", gen.width, "Grid width (0 = near-square)")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run gossiping on one topology");
  run_cmd->add_option("--topology", run.topology, "Topology file")->required();
  run_cmd->add_option("--broadcast", run.broadcast, "roundrobin|sf|oracle")
      ->check(CLI::IsMember({"roundrobin", "sf", "oracle"}))
      ->capture_default_str();
  run_cmd->add_option("--c-rb", run.c_rb, "Accounting constant, r or p/q")->capture_default_str();
  run_cmd->add_option("--helper-variant", run.helper_variant, "a (overheard) | b (selective family)")
      ->check(CLI::IsMember({"a", "b"}))
      ->capture_default_str();
  run_cmd->add_option("--family-seed", run.family_seed)->capture_default_str();
  run_cmd->add_option("--trace", run.trace, "Write a JSONL round trace here");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the verification corpus");
  verify_cmd->add_option("--c", verify.c)->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--random-per-n", verify.random_per_n)->capture_default_str();
  verify_cmd->add_option("--n", verify.ns, "Node counts (default 1,2,3,4,8,16,32,64)")->delimiter(',');
  verify_cmd->add_option("--broadcast", verify.broadcast, "Comma-separated kinds (default all)");
  verify_cmd->add_flag("--quiet", verify.quiet, "Only print failures");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Round-count sweep");
  bench_cmd->add_option("--n", bench.ns)->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--c", bench.c)->capture_default_str();
  bench_cmd->add_option("--families", bench.families)->capture_default_str();
  bench_cmd->add_option("--seeds", bench.seeds)->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--labels", bench.labels)->capture_default_str();
  bench_cmd->add_option("--broadcast", bench.broadcast)
      ->check(CLI::IsMember({"roundrobin", "sf", "oracle"}))
      ->capture_default_str();
  bench_cmd->add_option("--c-rb", bench.c_rb)->capture_default_str();
  bench_cmd->add_option("--ratio-cap", bench.ratio_cap, "Fail when a ratio exceeds this")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "CSV output file (default stdout)");

  FamilyArgs family;
  auto* family_cmd = app.add_subcommand("family", "Build or verify a selective family");
  family_cmd->add_option("--k", family.k)->capture_default_str();
  family_cmd->add_option("--N", family.universe)->capture_default_str();
  family_cmd->add_option("--seed", family.seed)->capture_default_str();
  family_cmd->add_option("--out", family.out, "Output file (default stdout)");
  family_cmd->add_option("--verify", family.verify, "Verify this family file exhaustively");
  family_cmd->add_option("--cap", family.cap, "Witness cap for verification")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsageError;
  }

  if (gen_cmd->parsed()) return run_gen(gen);
  if (run_cmd->parsed()) return run_gossip(run);
  if (verify_cmd->parsed()) return run_verify(verify);
  if (bench_cmd->parsed()) return run_bench(bench);
  if (family_cmd->parsed()) return run_family(family);
  return kUsageError;
}
