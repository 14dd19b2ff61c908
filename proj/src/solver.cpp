#include "busout/solver.hpp"

#include <chrono>

#include "key_table.hpp"
#include "search_engine.hpp"

namespace busout {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kSolvable: return "Solvable";
    case Verdict::kUnsolvable: return "Unsolvable";
    case Verdict::kInconclusive: return "Inconclusive";
  }
  return "?";
}

IneligibleError::IneligibleError(EligibilityReport report)
    : std::runtime_error(report.violations.empty() ? "ineligible configuration"
                                                   : "ineligible configuration: " + report.violations.front().message),
      report_(std::move(report)) {}

BudgetExceeded::BudgetExceeded(std::size_t spots, std::vector<std::pair<std::size_t, Verdict>> partial)
    : std::runtime_error("search budget exhausted while probing " + std::to_string(spots) + " spots"),
      partial_(std::move(partial)) {}

namespace {

using Clock = std::chrono::steady_clock;

// Shared driver for solve() and enumerate_reachable(): depth-first traversal
// with do/undo on a SearchEngine, deduplicating states through a KeyTable.
class Traversal {
 public:
  Traversal(const Configuration& cfg, BoardingPolicy policy, KeyMode keys)
      : engine_(cfg, policy, keys), table_(engine_.key_width()), key_(engine_.key_width()) {}

  detail::SearchEngine& engine() { return engine_; }

  bool visit_current() {
    engine_.write_key(key_.data());
    return table_.insert(key_);
  }

  std::uint64_t visited() const { return table_.size(); }

  enum class Outcome { kFoundEmpty, kExhausted, kCutoff };

  // `stop_at_empty` ends the walk at the first Empty state; `keep_going` is
  // polled after each new state and may request a cutoff.
  template <typename KeepGoing>
  Outcome run(bool ordered, bool stop_at_empty, bool prune, KeepGoing&& keep_going) {
    if (engine_.is_empty() && stop_at_empty) return Outcome::kFoundEmpty;
    if (prune && !engine_.closure_feasible()) return Outcome::kExhausted;
    push_frame(UINT32_MAX, {}, ordered);
    while (!frames_.empty()) {
      Frame& f = frames_.back();
      if (f.next == f.end) {
        const Frame done = f;
        frames_.pop_back();
        moves_.resize(done.begin);
        if (done.via != UINT32_MAX) engine_.undo(done.via, done.snap, spot_stack_);
        continue;
      }
      const std::uint32_t bus = moves_[f.next++];
      detail::SearchEngine::Snapshot snap{};
      engine_.save(snap, spot_stack_);
      engine_.dispatch(bus);
      if (stop_at_empty && engine_.is_empty()) {
        plan_.clear();
        for (std::size_t i = 1; i < frames_.size(); ++i) plan_.push_back(engine_.original_id(frames_[i].via));
        plan_.push_back(engine_.original_id(bus));
        visit_current();
        return Outcome::kFoundEmpty;
      }
      if (!visit_current()) {
        engine_.undo(bus, snap, spot_stack_);
        continue;
      }
      if (!keep_going()) return Outcome::kCutoff;
      if (prune && !engine_.closure_feasible()) {
        engine_.undo(bus, snap, spot_stack_);
        continue;
      }
      push_frame(bus, snap, ordered);
    }
    return Outcome::kExhausted;
  }

  const std::vector<BusId>& plan() const { return plan_; }
  std::uint64_t peak_depth() const { return peak_depth_; }

 private:
  struct Frame {
    std::uint32_t via;
    detail::SearchEngine::Snapshot snap;
    std::size_t begin, next, end;
  };

  void push_frame(std::uint32_t via, detail::SearchEngine::Snapshot snap, bool ordered) {
    engine_.legal_moves(scratch_);
    const std::size_t begin = moves_.size();
    moves_.insert(moves_.end(), scratch_.begin(), scratch_.end());
    if (ordered) engine_.order_moves(std::span<std::uint32_t>(moves_.data() + begin, scratch_.size()));
    frames_.push_back({via, snap, begin, begin, moves_.size()});
    peak_depth_ = std::max<std::uint64_t>(peak_depth_, frames_.size());
  }

  detail::SearchEngine engine_;
  detail::KeyTable table_;
  std::vector<std::uint64_t> key_;
  std::vector<Frame> frames_;
  std::vector<std::uint32_t> moves_;
  std::vector<std::uint32_t> scratch_;
  std::vector<std::uint64_t> spot_stack_;
  std::vector<BusId> plan_;
  std::uint64_t peak_depth_ = 0;
};

}  // namespace

SolveResult solve(const Configuration& cfg, const SolveBudget& budget, const SolveOptions& options) {
  auto report = check_eligibility(cfg);
  if (!report.ok()) throw IneligibleError(std::move(report));

  const auto start = Clock::now();
  Traversal walk(cfg, options.policy, options.keys);
  walk.visit_current();
  std::uint64_t polls = 0;
  bool timed_out = false;
  auto keep_going = [&] {
    if (budget.max_states && walk.visited() > *budget.max_states) return false;
    if (budget.time_limit_seconds && (++polls & 1023) == 0) {
      const std::chrono::duration<double> elapsed = Clock::now() - start;
      timed_out = elapsed.count() > *budget.time_limit_seconds;
      return !timed_out;
    }
    return true;
  };
  const auto outcome = walk.run(options.move_ordering, true, options.closure_pruning, keep_going);

  SolveResult result;
  switch (outcome) {
    case Traversal::Outcome::kFoundEmpty:
      result.verdict = Verdict::kSolvable;
      result.plan = walk.plan();
      break;
    case Traversal::Outcome::kExhausted: result.verdict = Verdict::kUnsolvable; break;
    case Traversal::Outcome::kCutoff: result.verdict = Verdict::kInconclusive; break;
  }
  result.stats.states_visited = walk.visited();
  result.stats.peak_frontier = walk.peak_depth();
  result.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

PlanCheck verify_plan(const Configuration& cfg, const std::vector<BusId>& plan, BoardingPolicy policy) {
  Configuration cur = normalize_boarding(cfg, policy).config;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    try {
      cur = dispatch(cur, plan[i], policy).config;
    } catch (const MoveError& e) {
      return {PlanFailure{i, to_string(e.kind())}};
    }
  }
  const auto c = classify(cur);
  if (c != Classification::kEmpty) return {PlanFailure{plan.size(), to_string(c)}};
  return {};
}

MinSpotsResult min_spots(const Palette& palette, const CongestionGraph& graph, const PassengerQueue& queue,
                         const SolveBudget& budget, const SolveOptions& options) {
  MinSpotsResult result;
  const std::size_t upper = std::max<std::size_t>(1, graph.size());
  for (std::size_t s = 1; s <= upper; ++s) {
    const Configuration cfg(palette, graph, queue, SpotState(s));
    const auto r = solve(cfg, budget, options);
    result.per_s.emplace_back(s, r.verdict);
    if (r.verdict == Verdict::kInconclusive) throw BudgetExceeded(s, result.per_s);
    if (r.verdict == Verdict::kSolvable) {
      result.s0 = s;
      return result;
    }
  }
  // Unreachable for eligible input: with one spot per bus, parking everything
  // in topological order lets every passenger board.
  throw std::logic_error("min_spots: no spot count up to the bus count was solvable");
}

MinSpotsResult min_spots(const Configuration& cfg, const SolveBudget& budget, const SolveOptions& options) {
  return min_spots(cfg.palette(), cfg.graph(), cfg.queue(), budget, options);
}

ReachableCount enumerate_reachable(const Configuration& cfg, std::uint64_t cap, KeyMode keys, BoardingPolicy policy) {
  Traversal walk(cfg, policy, keys);
  walk.visit_current();
  if (walk.visited() > cap) return {walk.visited(), true};
  auto keep_going = [&] { return walk.visited() <= cap; };
  const auto outcome = walk.run(false, false, false, keep_going);
  return {walk.visited(), outcome == Traversal::Outcome::kCutoff};
}

std::vector<std::string> plan_names(const Configuration& cfg, const std::vector<BusId>& plan) {
  std::vector<std::string> out;
  out.reserve(plan.size());
  for (BusId b : plan) out.push_back(cfg.graph().name(b));
  return out;
}

std::vector<BusId> plan_from_names(const Configuration& cfg, const std::vector<std::string>& names) {
  std::vector<BusId> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    auto id = cfg.graph().find(n);
    if (!id) throw MoveError(MoveError::Kind::kUnknownBus, "unknown bus id '" + n + "'");
    out.push_back(*id);
  }
  return out;
}

}  // namespace busout
