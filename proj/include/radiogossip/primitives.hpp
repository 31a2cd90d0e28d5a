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

#ifndef RADIOGOSSIP_PRIMITIVES_HPP_
#define RADIOGOSSIP_PRIMITIVES_HPP_

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "radiogossip/common.hpp"
#include "radiogossip/topology.hpp"
#include "radiogossip/trace.hpp"

namespace radiogossip {

/// Inclusive label interval [lo..hi].
struct LabelRange {
  Label lo = 1;
  Label hi = 1;

  static LabelRange full(Label universe) { return {1, universe}; }
  bool contains(Label l) const noexcept { return lo <= l && l <= hi; }
  Label width() const noexcept { return hi - lo + 1; }
  friend bool operator==(const LabelRange&, const LabelRange&) = default;
};

/// Sorted set of labels excluded from a search (the visited set).
class ExclusionSet {
 public:
  ExclusionSet() = default;
  ExclusionSet(std::initializer_list<Label> labels);
  explicit ExclusionSet(std::vector<Label> labels);

  bool contains(Label l) const noexcept;
  /// Returns false if already present.
  bool insert(Label l);
  std::span<const Label> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return labels_.size(); }
  friend bool operator==(const ExclusionSet&, const ExclusionSet&) = default;

 private:
  std::vector<Label> labels_;
};

struct EstimateOutcome {
  enum class Kind : std::uint8_t { kZeroNew, kOneNew, kTwoPlus };

  Kind kind = Kind::kZeroNew;
  /// Only meaningful for kOneNew.
  Label label = 0;

  static EstimateOutcome zero() { return {Kind::kZeroNew, 0}; }
  static EstimateOutcome one(Label l) { return {Kind::kOneNew, l}; }
  static EstimateOutcome two_plus() { return {Kind::kTwoPlus, 0}; }
  friend bool operator==(const EstimateOutcome&, const EstimateOutcome&) = default;
};

std::string to_string(const EstimateOutcome& outcome);

/// True iff `label` lies in Y - X - {h}: the nodes that answer the first
/// listening step of an estimate.
bool in_probe_slice(Label label, Label helper, const ExclusionSet& excluded, LabelRange range);
/// True iff `label` lies in (Y - X) ∪ {h}: the second listening step.
bool in_echo_slice(Label label, Label helper, const ExclusionSet& excluded, LabelRange range);

/// Rounds one estimate takes on the engine.
inline constexpr Round kEstimateRounds = 3;

/// Upper bound on rounds for one binary select: 3 * (2 * ceil(lg N) + 3).
Round binary_select_round_bound(Label universe) noexcept;

/// Decision logic of the neighbour search: the existence check over the
/// whole universe, doubling prefixes [1..2^i] from i = ceil(lg n), then
/// bisection on a range known to hold an undiscovered neighbour.
class SelectDriver {
 public:
  struct Done {
    std::optional<Label> found;
  };

  SelectDriver(std::uint32_t n, Label universe);

  /// Range to probe next, or the final answer.
  std::variant<LabelRange, Done> next() const;
  /// Feeds the outcome of probing the range returned by next().
  void record(const EstimateOutcome& outcome);

  bool done() const noexcept { return phase_ == Phase::kDone; }
  std::uint32_t probes() const noexcept { return probes_; }

 private:
  enum class Phase : std::uint8_t { kExistence, kDoubling, kBisect, kDone };

  void enter_bisect(Label lo, Label hi);

  Label universe_;
  Phase phase_ = Phase::kExistence;
  std::uint32_t exponent_;
  LabelRange range_;
  std::optional<Label> found_;
  std::uint32_t probes_ = 0;
};

struct EstimateReport {
  EstimateOutcome outcome;
  Round rounds = 0;
};

/// Runs one estimate on the engine: initiator s sends (h, X, Y), then
/// listens to the slice Y - X - {h} and to (Y - X) ∪ {h}. All other nodes
/// run the responder rule. Takes exactly three rounds.
EstimateReport estimate(const Topology& topology, Label initiator, Label helper,
                        const ExclusionSet& excluded, LabelRange range,
                        TraceSink* trace = nullptr);

struct SelectReport {
  std::optional<Label> found;
  Round rounds = 0;
  std::uint32_t probes = 0;
};

/// Discovers one neighbour of `initiator` outside `excluded`, with `helper`
/// (an already-discovered neighbour) breaking the zero/many ambiguity.
SelectReport binary_select(const Topology& topology, Label initiator, Label helper,
                           const ExclusionSet& excluded, TraceSink* trace = nullptr);

}  // namespace radiogossip

#endif  // RADIOGOSSIP_PRIMITIVES_HPP_
