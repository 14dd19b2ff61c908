#pragma once

// Reference implementations used only by tests: a plain breadth-first search
// over core configurations and a group-partition check.

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "busout/generators.hpp"
#include "busout/transitions.hpp"

namespace busout::testing {

struct OracleResult {
  std::optional<bool> solvable;  // nullopt when the cap was hit
  std::uint64_t states = 0;
};

// Every reachable state is passed to `visit` once, in BFS order.
inline OracleResult brute_force(const Configuration& cfg, std::uint64_t cap = 200000,
                                BoardingPolicy policy = BoardingPolicy::kFewestRemaining,
                                const std::function<void(const Configuration&)>& visit = {}) {
  std::unordered_set<StateKey, StateKeyHash> seen;
  std::deque<Configuration> open;
  Configuration root = normalize_boarding(cfg, policy).config;
  seen.insert(state_key(root));
  open.push_back(std::move(root));
  bool found = false;
  while (!open.empty()) {
    Configuration cur = std::move(open.front());
    open.pop_front();
    if (visit) visit(cur);
    if (cur.is_empty()) found = true;
    for (BusId b : legal_moves(cur)) {
      Configuration next = dispatch(cur, b, policy).config;
      if (seen.insert(state_key(next)).second) {
        if (seen.size() > cap) return {std::nullopt, seen.size()};
        open.push_back(std::move(next));
      }
    }
  }
  return {found, seen.size()};
}

// Can the items be split into triples() groups of any size, each summing to
// the target?
inline bool group_partition_exists(const ThreePartitionInstance& inst) {
  if (!inst.target_integral()) return false;
  const auto& items = inst.items();
  const std::uint64_t target = inst.target();
  const std::size_t m = items.size();
  std::function<bool(std::uint32_t)> rec = [&](std::uint32_t used) {
    if (used == (1u << m) - 1) return true;
    std::size_t first = 0;
    while (used >> first & 1) ++first;
    // Enumerate groups containing the first unused item.
    const std::uint32_t rest = ((1u << m) - 1) & ~used & ~(1u << first);
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t group = sub | (1u << first);
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (group >> i & 1) sum += items[i];
      }
      if (sum == target && rec(used | group)) return true;
      if (sub == 0) break;
    }
    return false;
  };
  return rec(0);
}

// All multisets of `size` positive integers with sum <= max_sum, ascending.
inline void for_each_multiset(std::size_t size, std::uint64_t max_sum,
                              const std::function<void(const std::vector<std::uint64_t>&)>& fn) {
  std::vector<std::uint64_t> cur;
  std::function<void(std::uint64_t, std::uint64_t)> rec = [&](std::uint64_t min, std::uint64_t sum) {
    if (cur.size() == size) {
      fn(cur);
      return;
    }
    const std::uint64_t left = size - cur.size();
    for (std::uint64_t a = min; sum + a * left <= max_sum; ++a) {
      cur.push_back(a);
      rec(a, sum + a);
      cur.pop_back();
    }
  };
  rec(1, 0);
}

}  // namespace busout::testing
