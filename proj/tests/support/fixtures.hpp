#pragma once

#include <string>
#include <vector>

#include "busout/instance_io.hpp"
#include "busout/model.hpp"
#include "busout/transitions.hpp"

namespace busout::testing {

inline Configuration station() { return load_instance(std::string(BUSOUT_INSTANCES) + "/station.json"); }

inline BusId bus(const Configuration& cfg, const std::string& name) { return *cfg.graph().find(name); }

inline Configuration play(Configuration cfg, const std::vector<std::string>& moves,
                          BoardingPolicy policy = BoardingPolicy::kFewestRemaining) {
  cfg = normalize_boarding(cfg, policy).config;
  for (const auto& m : moves) cfg = dispatch(cfg, bus(cfg, m), policy).config;
  return cfg;
}

// Buses given as (name, color, capacity); edges as (blocked, blocker) names.
struct Bus {
  std::string name;
  std::string color;
  std::uint32_t capacity;
};

inline Configuration build(std::vector<std::string> palette, std::size_t spots, const std::vector<Bus>& buses,
                           const std::vector<std::pair<std::string, std::string>>& blocks,
                           const std::vector<std::pair<std::string, std::uint64_t>>& queue,
                           std::vector<Spot> initial = {}) {
  Palette pal(std::move(palette));
  std::vector<std::string> names;
  std::vector<BusLabel> labels;
  for (const auto& b : buses) {
    names.push_back(b.name);
    labels.push_back({*pal.find(b.color), b.capacity});
  }
  auto id = [&](const std::string& n) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == n) return BusId{static_cast<std::uint32_t>(i)};
    }
    throw std::invalid_argument("no bus " + n);
  };
  std::vector<BlockEdge> edges;
  for (const auto& [a, b] : blocks) edges.push_back({id(a), id(b)});
  std::vector<QueueRun> runs;
  for (const auto& [c, k] : queue) runs.push_back({*pal.find(c), k});
  if (initial.empty()) initial.resize(spots);
  return Configuration(pal, CongestionGraph(names, labels, edges), PassengerQueue(runs), SpotState(initial));
}

inline std::vector<std::string> names(const Configuration& cfg, const std::vector<BusId>& ids) {
  std::vector<std::string> out;
  for (BusId b : ids) out.push_back(cfg.graph().name(b));
  return out;
}

}  // namespace busout::testing
