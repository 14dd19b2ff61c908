#include "busout/poly_decider.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace busout {

const char* to_string(InstanceClass c) {
  switch (c) {
    case InstanceClass::kMonochrome: return "Monochrome";
    case InstanceClass::kIndependentReserved: return "IndependentReserved";
    case InstanceClass::kIndependentBounded: return "IndependentBounded";
    case InstanceClass::kGeneral: return "General";
  }
  return "?";
}

namespace {

std::set<std::uint16_t> color_set(const Configuration& cfg) {
  std::set<std::uint16_t> colors;
  for (BusId v : cfg.graph().vertices()) colors.insert(cfg.graph().label(v).color.value);
  for (const auto& r : cfg.queue().remaining_runs()) colors.insert(r.color.value);
  for (const auto& s : cfg.spots().spots()) {
    if (s) colors.insert(s->color.value);
  }
  return colors;
}

bool parked_colors_distinct(const SpotState& spots) {
  std::set<std::uint16_t> seen;
  for (const auto& s : spots.spots()) {
    if (s && !seen.insert(s->color.value).second) return false;
  }
  return true;
}

using Clock = std::chrono::steady_clock;

SolveResult finish(Verdict verdict, std::optional<std::vector<BusId>> plan, std::uint64_t states, std::uint64_t frontier,
                   Clock::time_point start) {
  SolveResult r;
  r.verdict = verdict;
  r.plan = std::move(plan);
  r.stats.states_visited = states;
  r.stats.peak_frontier = frontier;
  r.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

void require_eligible(const Configuration& cfg) {
  auto report = check_eligibility(cfg);
  if (!report.ok()) throw IneligibleError(std::move(report));
}

}  // namespace

std::size_t colors_in_use(const Configuration& cfg) { return color_set(cfg).size(); }

InstanceClass classify_class(const Configuration& cfg) {
  if (colors_in_use(cfg) <= 1) return InstanceClass::kMonochrome;
  if (!cfg.graph().edges().empty()) return InstanceClass::kGeneral;
  if (colors_in_use(cfg) <= cfg.spots().size() && parked_colors_distinct(cfg.spots())) {
    return InstanceClass::kIndependentReserved;
  }
  return InstanceClass::kIndependentBounded;
}

IndependentInstance IndependentInstance::from(const Configuration& cfg) {
  if (!cfg.graph().edges().empty()) throw std::invalid_argument("independent instance: congestion graph has edges");
  IndependentInstance inst;
  std::set<std::uint32_t> capacities;
  for (BusId v : cfg.graph().vertices()) {
    const auto& l = cfg.graph().label(v);
    inst.buses[{l.color.value, l.capacity}].push_back(v);
    capacities.insert(l.capacity);
  }
  inst.queue = cfg.queue();
  inst.spots = cfg.spots();
  inst.params.spots = cfg.spots().size();
  inst.params.colors = colors_in_use(cfg);
  inst.params.capacities.assign(capacities.begin(), capacities.end());
  return inst;
}

SolveResult decide_monochrome(const Configuration& cfg) {
  const auto start = Clock::now();
  require_eligible(cfg);
  if (colors_in_use(cfg) > 1) throw std::invalid_argument("decide_monochrome: more than one color");
  Configuration cur = normalize_boarding(cfg).config;
  std::vector<BusId> plan;
  std::uint64_t states = 1;
  while (!cur.is_empty()) {
    const auto moves = legal_moves(cur);
    if (moves.empty()) throw std::logic_error("decide_monochrome: monochrome deadlock");
    plan.push_back(moves.front());
    cur = dispatch(cur, moves.front()).config;
    ++states;
  }
  return finish(Verdict::kSolvable, std::move(plan), states, plan.size(), start);
}

SolveResult decide_reserved(const Configuration& cfg) {
  const auto start = Clock::now();
  require_eligible(cfg);
  if (!cfg.graph().edges().empty()) throw std::invalid_argument("decide_reserved: congestion graph has edges");
  if (colors_in_use(cfg) > cfg.spots().size()) throw std::invalid_argument("decide_reserved: more colors than spots");
  if (!parked_colors_distinct(cfg.spots())) throw std::invalid_argument("decide_reserved: two parked buses share a color");

  // Spot i is reserved for the i-th color in ascending id order; since spots
  // are interchangeable only the dispatch order matters.
  Configuration cur = normalize_boarding(cfg).config;
  std::vector<BusId> plan;
  std::uint64_t states = 1;
  while (!cur.is_empty()) {
    const auto front = cur.queue().front();
    if (!front) throw std::logic_error("decide_reserved: passengers exhausted with buses left");
    std::optional<BusId> pick;
    for (BusId v : cur.graph().vertices()) {
      if (cur.graph().label(v).color == *front) {
        pick = v;
        break;
      }
    }
    if (!pick) throw std::logic_error("decide_reserved: no bus left for the front color");
    plan.push_back(*pick);
    cur = dispatch(cur, *pick).config;
    ++states;
  }
  return finish(Verdict::kSolvable, std::move(plan), states, plan.size(), start);
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint64_t>& v) const noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (auto w : v) {
      h ^= w;
      h *= 0x100000001B3ull;
      h ^= h >> 32;
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr std::uint64_t pack(std::uint16_t color, std::uint64_t remaining) {
  return (static_cast<std::uint64_t>(color) + 1) << 32 | remaining;
}

}  // namespace

SolveResult decide_independent(const Configuration& cfg, const SolveBudget& budget) {
  const auto start = Clock::now();
  require_eligible(cfg);
  const IndependentInstance inst = IndependentInstance::from(cfg);

  std::vector<IndependentInstance::LabelKey> types;
  std::vector<std::uint64_t> initial_counts;
  for (const auto& [label, ids] : inst.buses) {
    types.push_back(label);
    initial_counts.push_back(ids.size());
  }
  const std::size_t t = types.size();
  const std::size_t s = inst.spots.size();

  std::vector<QueueRun> runs = inst.queue.runs();
  std::vector<std::uint64_t> ends;
  std::uint64_t acc = 0;
  for (const auto& r : runs) ends.push_back(acc += r.count);

  auto parked_seats = [&](const std::vector<std::uint64_t>& key) {
    std::uint64_t seats = 0;
    for (std::size_t i = t; i < t + s; ++i) seats += key[i] & 0xFFFFFFFFull;
    return seats;
  };
  auto dispatched_capacity = [&](const std::vector<std::uint64_t>& key) {
    std::uint64_t cap = 0;
    for (std::size_t i = 0; i < t; ++i) cap += (initial_counts[i] - key[i]) * types[i].second;
    return cap;
  };

  // Key layout: t label counts followed by s sorted packed spots.
  std::vector<std::uint64_t> root(initial_counts);
  for (const auto& sp : inst.spots.spots()) root.push_back(sp ? pack(sp->color.value, sp->remaining) : 0);
  const std::uint64_t base = inst.queue.cursor() + parked_seats(root);
  auto derived_cursor = [&](const std::vector<std::uint64_t>& key) {
    return base + dispatched_capacity(key) - parked_seats(key);
  };

  // Boards forced passengers in place; returns the simulated cursor.
  auto board = [&](std::vector<std::uint64_t>& key, std::uint64_t cursor) {
    auto spots = key.begin() + static_cast<std::ptrdiff_t>(t);
    std::size_t run = static_cast<std::size_t>(std::upper_bound(ends.begin(), ends.end(), cursor) - ends.begin());
    while (run < runs.size()) {
      const std::uint64_t want = static_cast<std::uint64_t>(runs[run].color.value) + 1;
      std::optional<std::size_t> target;
      for (std::size_t i = 0; i < s; ++i) {
        const std::uint64_t sp = spots[static_cast<std::ptrdiff_t>(i)];
        if ((sp >> 32) != want) continue;
        if (!target || (sp & 0xFFFFFFFFull) < (spots[static_cast<std::ptrdiff_t>(*target)] & 0xFFFFFFFFull)) target = i;
      }
      if (!target) break;
      auto& sp = spots[static_cast<std::ptrdiff_t>(*target)];
      const std::uint64_t take = std::min<std::uint64_t>(ends[run] - cursor, sp & 0xFFFFFFFFull);
      cursor += take;
      const std::uint64_t rem = (sp & 0xFFFFFFFFull) - take;
      sp = rem ? (want << 32 | rem) : 0;
      if (cursor == ends[run]) ++run;
    }
    std::sort(spots, spots + static_cast<std::ptrdiff_t>(s));
    return cursor;
  };

  struct Node {
    std::size_t parent;
    std::size_t type;
  };
  std::vector<std::vector<std::uint64_t>> keys;
  std::vector<Node> nodes;
  std::unordered_map<std::vector<std::uint64_t>, std::size_t, VecHash> index;

  const std::uint64_t root_cursor = board(root, inst.queue.cursor());
  if (root_cursor != derived_cursor(root)) throw std::logic_error("decide_independent: cursor identity violated");
  keys.push_back(root);
  nodes.push_back({SIZE_MAX, SIZE_MAX});
  index.emplace(root, 0);

  auto is_empty = [&](const std::vector<std::uint64_t>& key) {
    return std::all_of(key.begin(), key.end(), [](std::uint64_t w) { return w == 0; }) && derived_cursor(key) == acc;
  };
  auto plan_to = [&](std::size_t node) {
    std::vector<std::size_t> chain;
    for (std::size_t k = node; nodes[k].parent != SIZE_MAX; k = nodes[k].parent) chain.push_back(nodes[k].type);
    std::reverse(chain.begin(), chain.end());
    std::vector<std::size_t> used(t, 0);
    std::vector<BusId> plan;
    for (std::size_t type : chain) plan.push_back(inst.buses.at(types[type])[used[type]++]);
    return plan;
  };

  std::size_t head = 0;
  std::uint64_t peak = 1;
  while (head < keys.size()) {
    if (budget.time_limit_seconds && (head & 1023) == 0 &&
        std::chrono::duration<double>(Clock::now() - start).count() > *budget.time_limit_seconds) {
      return finish(Verdict::kInconclusive, std::nullopt, keys.size(), peak, start);
    }
    const std::size_t cur = head++;
    if (is_empty(keys[cur])) return finish(Verdict::kSolvable, plan_to(cur), keys.size(), peak, start);
    const std::vector<std::uint64_t> state = keys[cur];
    const auto empty_slot = std::find(state.begin() + static_cast<std::ptrdiff_t>(t), state.end(), 0);
    if (empty_slot == state.end()) continue;
    const std::uint64_t cursor = derived_cursor(state);
    for (std::size_t type = 0; type < t; ++type) {
      if (state[type] == 0) continue;
      std::vector<std::uint64_t> next = state;
      --next[type];
      next[static_cast<std::size_t>(empty_slot - state.begin())] = pack(types[type].first, types[type].second);
      const std::uint64_t simulated = board(next, cursor);
      if (simulated != derived_cursor(next)) throw std::logic_error("decide_independent: cursor identity violated");
      if (index.contains(next)) continue;
      index.emplace(next, keys.size());
      keys.push_back(std::move(next));
      nodes.push_back({cur, type});
      peak = std::max<std::uint64_t>(peak, keys.size() - head);
      if (budget.max_states && keys.size() > *budget.max_states) {
        return finish(Verdict::kInconclusive, std::nullopt, keys.size(), peak, start);
      }
    }
  }
  return finish(Verdict::kUnsolvable, std::nullopt, keys.size(), peak, start);
}

SolveResult decide(const Configuration& cfg, ClassRoute route, const SolveBudget& budget, const SolveOptions& options) {
  if (route == ClassRoute::kAuto) {
    require_eligible(cfg);
    switch (classify_class(cfg)) {
      case InstanceClass::kMonochrome: return decide_monochrome(cfg);
      case InstanceClass::kIndependentReserved: return decide_reserved(cfg);
      case InstanceClass::kIndependentBounded: return decide_independent(cfg, budget);
      case InstanceClass::kGeneral: return solve(cfg, budget, options);
    }
  }
  switch (route) {
    case ClassRoute::kMonochrome: return decide_monochrome(cfg);
    case ClassRoute::kReserved: return decide_reserved(cfg);
    case ClassRoute::kIndependent: return decide_independent(cfg, budget);
    default: return solve(cfg, budget, options);
  }
}

}  // namespace busout
