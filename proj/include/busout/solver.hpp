#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "busout/model.hpp"
#include "busout/transitions.hpp"

namespace busout {

enum class Verdict { kSolvable, kUnsolvable, kInconclusive };
const char* to_string(Verdict v);

struct SolveBudget {
  std::optional<std::uint64_t> max_states;
  std::optional<double> time_limit_seconds;
};

struct SolveStats {
  std::uint64_t states_visited = 0;
  std::uint64_t peak_frontier = 0;
  double elapsed_seconds = 0;
};

struct SolveResult {
  Verdict verdict = Verdict::kInconclusive;
  std::optional<std::vector<BusId>> plan;  // present iff kSolvable
  SolveStats stats;
};

// How memoized states are identified.
enum class KeyMode {
  kIdentity,   // remaining bus ids, as state_key
  kSymmetric,  // additionally quotients by swaps of identical traffic components
};

struct SolveOptions {
  BoardingPolicy policy = BoardingPolicy::kFewestRemaining;
  KeyMode keys = KeyMode::kSymmetric;
  // Front-color match first, then larger capacity, then id. Off: id order.
  bool move_ordering = true;
  // Cut states that provably cannot reach Empty: the dispatches needed to
  // serve the next two queue runs would overflow the spots. Applies when the
  // traffic is a disjoint union of chains.
  bool closure_pruning = true;
};

class IneligibleError : public std::runtime_error {
 public:
  explicit IneligibleError(EligibilityReport report);
  const EligibilityReport& report() const { return report_; }

 private:
  EligibilityReport report_;
};

// Memoized depth-first search over dispatch choices. Unsolvable is only
// reported after the reachable space is exhausted; any cutoff is Inconclusive.
SolveResult solve(const Configuration& cfg, const SolveBudget& budget = {}, const SolveOptions& options = {});

struct PlanFailure {
  std::size_t step = 0;  // dispatches applied before the failure
  std::string reason;    // NotFree / NoEmptySpot / UnknownBus, or the final classification
};

struct PlanCheck {
  std::optional<PlanFailure> failure;
  bool ok() const { return !failure; }
};

PlanCheck verify_plan(const Configuration& cfg, const std::vector<BusId>& plan,
                      BoardingPolicy policy = BoardingPolicy::kFewestRemaining);

struct MinSpotsResult {
  std::size_t s0 = 0;
  std::vector<std::pair<std::size_t, Verdict>> per_s;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t spots, std::vector<std::pair<std::size_t, Verdict>> partial);
  const std::vector<std::pair<std::size_t, Verdict>>& partial() const { return partial_; }

 private:
  std::vector<std::pair<std::size_t, Verdict>> partial_;
};

// Least s for which (graph, queue, all-empty spots of size s) is solvable.
// Probes s = 1, 2, ... upward; s = number of buses always suffices.
MinSpotsResult min_spots(const Palette& palette, const CongestionGraph& graph, const PassengerQueue& queue,
                         const SolveBudget& budget = {}, const SolveOptions& options = {});

// Same, taking graph and queue from a configuration and ignoring its spots.
MinSpotsResult min_spots(const Configuration& cfg, const SolveBudget& budget = {}, const SolveOptions& options = {});

struct ReachableCount {
  std::uint64_t count = 0;
  bool truncated = false;
};

// Number of distinct boarding-normalized states reachable from cfg
// (cfg itself included), stopping once `cap` is exceeded.
ReachableCount enumerate_reachable(const Configuration& cfg, std::uint64_t cap,
                                   KeyMode keys = KeyMode::kIdentity,
                                   BoardingPolicy policy = BoardingPolicy::kFewestRemaining);

// Helpers for plan rendering.
std::vector<std::string> plan_names(const Configuration& cfg, const std::vector<BusId>& plan);
std::vector<BusId> plan_from_names(const Configuration& cfg, const std::vector<std::string>& names);

}  // namespace busout
