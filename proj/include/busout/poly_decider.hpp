#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "busout/model.hpp"
#include "busout/solver.hpp"

namespace busout {

enum class InstanceClass {
  kMonochrome,           // one color: always solvable
  kIndependentReserved,  // no edges, colors <= spots: always solvable
  kIndependentBounded,   // no edges: polynomial state space for fixed (s, c, v)
  kGeneral,
};
const char* to_string(InstanceClass c);

// Distinct colors over traffic, queue remainder and parked buses.
std::size_t colors_in_use(const Configuration& cfg);

InstanceClass classify_class(const Configuration& cfg);

// Edgeless configuration viewed as a multiset of bus labels.
struct IndependentInstance {
  using LabelKey = std::pair<std::uint16_t, std::uint32_t>;  // (color, capacity)

  std::map<LabelKey, std::vector<BusId>> buses;  // label -> ids, ascending
  PassengerQueue queue;
  SpotState spots;
  ClassParams params;  // s, colors in use, distinct capacities

  // Throws std::invalid_argument if the graph has edges.
  static IndependentInstance from(const Configuration& cfg);
};

// Constructive: dispatch any free bus whenever boarding stalls.
SolveResult decide_monochrome(const Configuration& cfg);

// Constructive: one spot per color; when boarding stalls, dispatch a bus of
// the front color. Requires an edgeless graph, colors <= spots and at most one
// parked bus per color.
SolveResult decide_reserved(const Configuration& cfg);

// Exact breadth-first search over label-multiset states. The queue cursor is
// not stored; it is recomputed from dispatched capacity minus parked seats and
// checked against the simulated cursor on every expansion.
SolveResult decide_independent(const Configuration& cfg, const SolveBudget& budget = {});

enum class ClassRoute { kAuto, kMonochrome, kReserved, kIndependent, kGeneral };

// Dispatches to the decider for the requested (or detected) class. Throws
// std::invalid_argument when an explicit route does not apply.
SolveResult decide(const Configuration& cfg, ClassRoute route, const SolveBudget& budget = {},
                   const SolveOptions& options = {});

}  // namespace busout
