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

#include "radiogossip/selectors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>

#include "rng.hpp"

namespace radiogossip {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
// Explicit families beyond this many stored labels are out of desk scale.
constexpr double kMaxStoredLabels = 50e6;

SelectiveFamily whole_universe(Label universe) {
  SelectiveFamily f;
  f.k = 1;
  f.universe = universe;
  f.sets.emplace_back();
  f.sets.back().reserve(universe);
  for (Label l = 1; l <= universe; ++l) f.sets.back().push_back(l);
  return f;
}

SelectiveFamily singletons(std::uint64_t k, Label universe) {
  SelectiveFamily f;
  f.k = k;
  f.universe = universe;
  f.sets.reserve(universe);
  for (Label l = 1; l <= universe; ++l) f.sets.push_back({l});
  return f;
}

// Compressed label -> set-index lists.
struct InvertedIndex {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> entries;

  explicit InvertedIndex(const SelectiveFamily& family) {
    offsets.assign(family.universe + 2, 0);
    for (const auto& set : family.sets) {
      for (Label l : set) ++offsets[l + 1];
    }
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    entries.resize(offsets.back());
    std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t j = 0; j < family.sets.size(); ++j) {
      for (Label l : family.sets[j]) entries[fill[l]++] = j;
    }
  }

  std::span<const std::uint32_t> of(Label l) const {
    return std::span<const std::uint32_t>(entries).subspan(offsets[l], offsets[l + 1] - offsets[l]);
  }
};

// Tracks |set ∩ S| for every set and how many of those are exactly one.
class HitCounter {
 public:
  HitCounter(const InvertedIndex& index, std::size_t sets)
      : index_(index), counts_(sets, 0) {}

  void add(Label l) {
    for (std::uint32_t j : index_.of(l)) {
      if (counts_[j] == 1) --ones_;
      if (++counts_[j] == 1) ++ones_;
    }
  }
  void remove(Label l) {
    for (std::uint32_t j : index_.of(l)) {
      if (counts_[j] == 1) --ones_;
      if (--counts_[j] == 1) ++ones_;
    }
  }
  bool selected() const noexcept { return ones_ > 0; }

 private:
  const InvertedIndex& index_;
  std::vector<std::uint32_t> counts_;
  std::size_t ones_ = 0;
};

void validate(const SelectiveFamily& family) {
  if (family.k < 1 || family.k > family.universe) {
    throw Error(ErrorCode::kInvalidArgument, "family needs 1 <= k <= N");
  }
  for (const auto& set : family.sets) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (set[i] < 1 || set[i] > family.universe || (i > 0 && set[i] <= set[i - 1])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "family sets must be sorted, duplicate-free subsets of [1..N]");
      }
    }
  }
}

// Greedy cover over bitmask witnesses; requires N <= 64.
SelectiveFamily greedy_family(std::uint64_t k, Label universe, std::uint64_t seed,
                              std::uint32_t pool_width) {
  std::vector<std::uint64_t> uncovered;
  // Enumerate all nonempty masks with popcount <= k via index recursion.
  std::vector<std::uint64_t> frontier{0};
  for (std::uint64_t size = 1; size <= k; ++size) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t mask : frontier) {
      const unsigned top = mask == 0 ? 0u : static_cast<unsigned>(std::bit_width(mask));
      for (unsigned b = top; b < universe; ++b) next.push_back(mask | (std::uint64_t{1} << b));
    }
    uncovered.insert(uncovered.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  detail::Rng rng(seed);
  SelectiveFamily family;
  family.k = k;
  family.universe = universe;
  std::vector<std::uint64_t> pool(pool_width);
  while (!uncovered.empty()) {
    for (std::uint32_t j = 0; j < pool_width; ++j) {
      const double p = 1.0 / static_cast<double>(1 + j % k);
      std::uint64_t mask = 0;
      for (unsigned b = 0; b < universe; ++b) {
        if (rng.chance(p)) mask |= std::uint64_t{1} << b;
      }
      if (mask == 0) mask = std::uint64_t{1} << rng.below(universe);
      pool[j] = mask;
    }
    std::size_t best = 0;
    std::size_t best_score = 0;
    for (std::uint32_t j = 0; j < pool_width; ++j) {
      std::size_t score = 0;
      for (std::uint64_t w : uncovered) score += std::popcount(w & pool[j]) == 1;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    std::uint64_t chosen = pool[best];
    if (best_score == 0) chosen = uncovered.front() & (~uncovered.front() + 1);
    std::erase_if(uncovered, [chosen](std::uint64_t w) { return std::popcount(w & chosen) == 1; });

    std::vector<Label> set;
    for (unsigned b = 0; b < universe; ++b) {
      if (chosen >> b & 1) set.push_back(b + 1);
    }
    family.sets.push_back(std::move(set));
    if (family.size() >= universe) return singletons(k, universe);
  }
  return family;
}

void repair_uncovered_labels(SelectiveFamily& family) {
  std::vector<bool> seen(family.universe + 1, false);
  for (const auto& set : family.sets) {
    for (Label l : set) seen[l] = true;
  }
  for (Label l = 1; l <= family.universe; ++l) {
    if (!seen[l]) family.sets.push_back({l});
  }
}

}  // namespace

std::vector<std::uint32_t> SelectiveFamily::membership(Label label) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 0; j < sets.size(); ++j) {
    if (std::binary_search(sets[j].begin(), sets[j].end(), label)) out.push_back(j);
  }
  return out;
}

std::uint64_t witness_count(std::uint64_t k, Label universe) noexcept {
  unsigned __int128 binom = 1;
  unsigned __int128 total = 0;
  for (std::uint64_t i = 1; i <= k && i <= universe; ++i) {
    binom = binom * (universe - i + 1) / i;
    total += binom;
    if (total >= kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(total);
}

SelectiveFamily random_family(std::uint64_t k, Label universe, std::size_t size,
                              std::uint64_t seed) {
  if (k < 1 || k > universe) throw Error(ErrorCode::kInvalidArgument, "family needs 1 <= k <= N");
  detail::Rng rng(seed);
  SelectiveFamily family;
  family.k = k;
  family.universe = universe;
  family.sets.resize(size);
  const double p = 1.0 / static_cast<double>(k);
  const double log_q = std::log1p(-p);
  for (auto& set : family.sets) {
    if (k == 1) {
      set = whole_universe(universe).sets.front();
      continue;
    }
    // Geometric gaps between members.
    Label pos = 0;
    while (true) {
      const double u = 1.0 - rng.unit();
      const double gap = std::floor(std::log(u) / log_q);
      if (gap >= static_cast<double>(universe - pos)) break;
      pos += static_cast<Label>(gap) + 1;
      set.push_back(pos);
    }
  }
  return family;
}

SelectivityVerdict verify_exhaustive(const SelectiveFamily& family, std::uint64_t cap) {
  validate(family);
  const std::uint64_t witnesses = witness_count(family.k, family.universe);
  if (witnesses > cap) {
    throw Error(ErrorCode::kVerificationCapExceeded,
                "exhaustive verification needs " + std::to_string(witnesses) +
                    " witnesses (cap " + std::to_string(cap) + "); use sampled mode");
  }
  const InvertedIndex index(family);
  HitCounter counter(index, family.size());
  SelectivityVerdict verdict;
  std::vector<Label> chosen;

  // Preorder DFS over increasing sequences visits witnesses in lexicographic
  // order, so the first violation found is the smallest one.
  auto dfs = [&](auto&& self, Label start) -> bool {
    for (Label e = start; e <= family.universe; ++e) {
      counter.add(e);
      chosen.push_back(e);
      ++verdict.checked;
      if (!counter.selected()) return true;
      if (chosen.size() < family.k && self(self, e + 1)) return true;
      chosen.pop_back();
      counter.remove(e);
    }
    return false;
  };
  if (dfs(dfs, 1)) {
    verdict.valid = false;
    verdict.counterexample = chosen;
  }
  return verdict;
}

SelectivityVerdict verify_sampled(const SelectiveFamily& family, std::uint32_t trials,
                                  std::uint64_t seed) {
  validate(family);
  const InvertedIndex index(family);
  HitCounter counter(index, family.size());
  detail::Rng rng(seed);
  SelectivityVerdict verdict;
  verdict.exhaustive = false;
  std::vector<Label> sample;
  for (std::uint32_t t = 0; t < trials; ++t) {
    const std::uint64_t size = 1 + rng.below(family.k);
    sample.clear();
    while (sample.size() < size) {
      const Label l = 1 + rng.below(family.universe);
      if (std::ranges::find(sample, l) == sample.end()) sample.push_back(l);
    }
    for (Label l : sample) counter.add(l);
    const bool ok = counter.selected();
    for (Label l : sample) counter.remove(l);
    ++verdict.checked;
    if (!ok) {
      verdict.valid = false;
      std::ranges::sort(sample);
      verdict.counterexample = sample;
      return verdict;
    }
  }
  return verdict;
}

FamilyBuild build_selective_family(std::uint64_t k, Label universe, std::uint64_t seed,
                                   const FamilyOptions& options) {
  if (universe < 1 || k < 1 || k > universe) {
    throw Error(ErrorCode::kInvalidArgument, "selective family needs 1 <= k <= N");
  }
  if (k == 1) return {whole_universe(universe), FamilyMethod::kWholeUniverse, true};
  if (k == universe) return {singletons(k, universe), FamilyMethod::kSingletons, true};

  const std::uint64_t witnesses = witness_count(k, universe);
  if (universe <= 64 && witnesses <= options.greedy_witness_limit) {
    FamilyBuild out{greedy_family(k, universe, seed, options.greedy_pool), FamilyMethod::kGreedy,
                    true};
    if (out.family.size() >= universe) out.method = FamilyMethod::kSingletons;
    if (!verify_exhaustive(out.family, kSaturated).valid) {
      throw Error(ErrorCode::kConstructionFailed, "greedy cover left a witness unselected");
    }
    return out;
  }

  const double ratio = std::log2(static_cast<double>(universe) / static_cast<double>(k));
  const double wanted = std::ceil(options.size_multiple * static_cast<double>(k) * std::max(1.0, ratio));
  if (wanted >= static_cast<double>(universe)) {
    return {singletons(k, universe), FamilyMethod::kSingletons, true};
  }
  if (wanted * static_cast<double>(universe) / static_cast<double>(k) > kMaxStoredLabels) {
    throw Error(ErrorCode::kConstructionFailed,
                "explicit (" + std::to_string(k) + "," + std::to_string(universe) +
                    ")-selective family is too large to store");
  }
  const auto size = static_cast<std::size_t>(wanted);
  const bool exhaustive = witnesses <= options.exhaustive_cap;

  for (std::uint32_t attempt = 0; attempt < options.attempts; ++attempt) {
    SelectiveFamily family = random_family(k, universe, size, detail::mix_seed(seed, attempt));
    if (exhaustive) {
      // Repair: patch each smallest violating witness with a singleton.
      for (auto v = verify_exhaustive(family, options.exhaustive_cap); !v.valid;
           v = verify_exhaustive(family, options.exhaustive_cap)) {
        family.sets.push_back({v.counterexample.front()});
      }
      if (family.size() >= universe) return {singletons(k, universe), FamilyMethod::kSingletons, true};
      return {std::move(family), FamilyMethod::kRandomSets, true};
    }
    repair_uncovered_labels(family);
    if (family.size() >= universe) return {singletons(k, universe), FamilyMethod::kSingletons, true};
    const auto v = verify_sampled(family, options.sampled_trials,
                                  detail::mix_seed(seed ^ 0x5eed, attempt));
    if (v.valid) return {std::move(family), FamilyMethod::kRandomSets, false};
  }
  throw Error(ErrorCode::kConstructionFailed,
              "no sampled-verified (" + std::to_string(k) + "," + std::to_string(universe) +
                  ")-selective family within " + std::to_string(options.attempts) + " attempts");
}

void write_family(std::ostream& out, const SelectiveFamily& family) {
  out << family.k << ' ' << family.universe << ' ' << family.size() << '\n';
  for (const auto& set : family.sets) {
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i > 0) out << ' ';
      out << set[i];
    }
    out << '\n';
  }
}

SelectiveFamily read_family(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "family file is empty");
  std::istringstream header(line);
  SelectiveFamily family;
  std::size_t size = 0;
  if (!(header >> family.k >> family.universe >> size)) {
    throw Error(ErrorCode::kParse, "family header must be 'k N size'");
  }
  family.sets.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "family file ends early");
    std::istringstream is(line);
    std::vector<Label> set;
    Label l;
    while (is >> l) set.push_back(l);
    if (!is.eof()) throw Error(ErrorCode::kParse, "bad label in set " + std::to_string(i));
    family.sets.push_back(std::move(set));
  }
  validate(family);
  return family;
}

std::string to_string(FamilyMethod method) {
  switch (method) {
    case FamilyMethod::kWholeUniverse: return "whole-universe";
    case FamilyMethod::kSingletons: return "singletons";
    case FamilyMethod::kGreedy: return "greedy";
    case FamilyMethod::kRandomSets: return "random-sets";
  }
  return "unknown";
}

}  // namespace radiogossip
