#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace busout {

// Raised for structurally malformed instances (unknown endpoints, self-loops,
// duplicate names, zero capacities). Ineligibility is reported, not thrown.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ColorId {
  std::uint16_t value = 0;
  friend auto operator<=>(ColorId, ColorId) = default;
};

struct BusId {
  std::uint32_t value = 0;
  friend auto operator<=>(BusId, BusId) = default;
};

struct BusLabel {
  ColorId color;
  std::uint32_t capacity = 1;
  friend bool operator==(const BusLabel&, const BusLabel&) = default;
};

// Per-instance color names. Ids are dense 0..size()-1.
class Palette {
 public:
  Palette() = default;
  explicit Palette(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(ColorId c) const { return names_.at(c.value); }
  std::optional<ColorId> find(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Palette&, const Palette&) = default;

 private:
  std::vector<std::string> names_;
};

// Edge (blocked, blocker): the blocked bus points at the bus in front of it.
// A bus is free iff none of its blockers remain.
struct BlockEdge {
  BusId blocked;
  BusId blocker;
  friend auto operator<=>(const BlockEdge&, const BlockEdge&) = default;
};

// Labeled DAG of buses still in traffic. The full vertex universe is shared
// between all graphs derived from the same instance; removal only flips a
// presence bit, so BusId values stay stable over a whole play.
class CongestionGraph {
 public:
  CongestionGraph();
  CongestionGraph(std::vector<std::string> names, std::vector<BusLabel> labels,
                  std::vector<BlockEdge> blocks);

  std::size_t universe_size() const { return layout_->labels.size(); }
  std::size_t size() const { return present_count_; }
  bool empty() const { return present_count_ == 0; }
  bool contains(BusId bus) const;

  const BusLabel& label(BusId bus) const { return layout_->labels.at(bus.value); }
  const std::string& name(BusId bus) const { return layout_->names.at(bus.value); }
  std::optional<BusId> find(std::string_view name) const;

  // Remaining buses in ascending id order.
  std::vector<BusId> vertices() const;
  // Edges whose endpoints both remain.
  std::vector<BlockEdge> edges() const;

  // Universe adjacency, ignoring presence.
  std::span<const BusId> blockers_of(BusId bus) const;
  std::span<const BusId> blocked_by(BusId bus) const;

  std::size_t out_degree(BusId bus) const;
  bool is_free(BusId bus) const { return contains(bus) && out_degree(bus) == 0; }

  CongestionGraph without(BusId bus) const;

  // A directed cycle among remaining vertices, if any.
  std::optional<std::vector<BusId>> find_cycle() const;

  // Semantic equality: same remaining buses (by name and label) and edges.
  friend bool operator==(const CongestionGraph& a, const CongestionGraph& b);

 private:
  struct Layout {
    std::vector<std::string> names;
    std::vector<BusLabel> labels;
    std::vector<std::vector<BusId>> blockers;
    std::vector<std::vector<BusId>> blocked;
  };
  std::shared_ptr<const Layout> layout_;
  std::vector<bool> present_;
  std::size_t present_count_ = 0;
};

struct QueueRun {
  ColorId color;
  std::uint64_t count = 1;
  friend bool operator==(const QueueRun&, const QueueRun&) = default;
};

// Run-length encoded passenger line with a consumed-prefix cursor.
class PassengerQueue {
 public:
  PassengerQueue();
  // Merges adjacent runs of the same color; throws on zero counts.
  explicit PassengerQueue(std::vector<QueueRun> runs);

  const std::vector<QueueRun>& runs() const { return *runs_; }
  std::uint64_t total() const { return ends_->empty() ? 0 : ends_->back(); }
  std::uint64_t cursor() const { return cursor_; }
  std::uint64_t remaining() const { return total() - cursor_; }
  bool exhausted() const { return cursor_ == total(); }

  std::optional<ColorId> front() const;
  // Consecutive passengers of the front color starting at the cursor.
  std::uint64_t front_run_remaining() const;
  std::uint64_t count_remaining(ColorId color) const;
  // Runs from the cursor on; the first may be partial.
  std::vector<QueueRun> remaining_runs() const;

  PassengerQueue advanced(std::uint64_t passengers) const;

  // Same runs and cursor.
  friend bool operator==(const PassengerQueue& a, const PassengerQueue& b);

 private:
  std::size_t run_index_at(std::uint64_t position) const;

  std::shared_ptr<const std::vector<QueueRun>> runs_;
  std::shared_ptr<const std::vector<std::uint64_t>> ends_;
  std::uint64_t cursor_ = 0;
};

struct ParkedBus {
  ColorId color;
  std::uint32_t remaining = 1;
  friend auto operator<=>(const ParkedBus&, const ParkedBus&) = default;
};

using Spot = std::optional<ParkedBus>;

class SpotState {
 public:
  SpotState() = default;
  // s empty spots.
  explicit SpotState(std::size_t count) : spots_(count) {}
  explicit SpotState(std::vector<Spot> spots);

  std::size_t size() const { return spots_.size(); }
  const Spot& operator[](std::size_t i) const { return spots_.at(i); }
  std::span<const Spot> spots() const { return spots_; }

  std::optional<std::size_t> first_empty() const;
  std::size_t occupied_count() const;
  bool all_empty() const { return occupied_count() == 0; }

  SpotState with(std::size_t index, Spot spot) const;

  friend bool operator==(const SpotState&, const SpotState&) = default;

 private:
  std::vector<Spot> spots_;
};

struct ClassParams {
  std::size_t spots = 1;
  std::size_t colors = 1;
  std::vector<std::uint32_t> capacities{1};
};

// The (graph, queue, spots) triple plus the palette naming its colors.
class Configuration {
 public:
  Configuration() = default;
  Configuration(Palette palette, CongestionGraph graph, PassengerQueue queue, SpotState spots);

  const Palette& palette() const { return *palette_; }
  const CongestionGraph& graph() const { return graph_; }
  const PassengerQueue& queue() const { return queue_; }
  const SpotState& spots() const { return spots_; }

  Configuration with_graph(CongestionGraph g) const;
  Configuration with_queue(PassengerQueue q) const;
  Configuration with_spots(SpotState s) const;

  bool is_empty() const { return graph_.empty() && queue_.exhausted() && spots_.all_empty(); }

  friend bool operator==(const Configuration& a, const Configuration& b);

 private:
  std::shared_ptr<const Palette> palette_ = std::make_shared<const Palette>();
  CongestionGraph graph_;
  PassengerQueue queue_;
  SpotState spots_;
};

}  // namespace busout
