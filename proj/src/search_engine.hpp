#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "busout/model.hpp"
#include "busout/solver.hpp"
#include "busout/transitions.hpp"

namespace busout::detail {

// Mutable do/undo form of a configuration used by the exhaustive searches.
// Buses are renumbered densely over those present at construction; spots are
// packed as ((color + 1) << 32 | remaining), 0 meaning empty.
class SearchEngine {
 public:
  SearchEngine(const Configuration& root, BoardingPolicy policy, KeyMode keys);

  // Saved before a dispatch, restored by undo.
  struct Snapshot {
    std::uint64_t cursor;
    std::size_t run;
    std::size_t spots_offset;  // into the caller-owned spot stack
  };

  std::size_t bus_count() const { return labels_.size(); }
  BusId original_id(std::uint32_t bus) const { return original_[bus]; }
  const BusLabel& label(std::uint32_t bus) const { return labels_[bus]; }

  bool is_empty() const;
  bool has_empty_spot() const;
  std::optional<ColorId> front() const;
  std::uint64_t cursor() const { return cursor_; }

  // Legal dispatches. In symmetric mode, moves whose results are isomorphic
  // to an earlier move are dropped.
  void legal_moves(std::vector<std::uint32_t>& out) const;
  void order_moves(std::span<std::uint32_t> moves) const;

  void save(Snapshot& snap, std::vector<std::uint64_t>& spot_stack) const;
  void dispatch(std::uint32_t bus);
  void undo(std::uint32_t bus, const Snapshot& snap, std::vector<std::uint64_t>& spot_stack);

  // Necessary condition for reaching Empty, checked around the last
  // passenger of the current and next queue runs: some ancestor-closed set of
  // further dispatches covers each color's demand while the seats left over
  // fit in the spots. Returns true (no verdict) unless every component still
  // holding buses is a chain and the table stays small.
  bool closure_feasible() const;

  std::size_t key_width() const { return key_width_; }
  void write_key(std::uint64_t* out) const;

 private:
  void normalize();
  void remove_bus(std::uint32_t bus);
  void restore_bus(std::uint32_t bus);

  BoardingPolicy policy_;
  KeyMode keys_;

  // static
  std::vector<BusId> original_;
  std::vector<BusLabel> labels_;
  std::vector<std::vector<std::uint32_t>> blocked_;  // buses this one blocks
  std::vector<QueueRun> runs_;
  std::vector<std::uint64_t> ends_;
  std::size_t words_ = 0;

  struct Component {
    std::uint32_t klass;
    std::uint32_t size;
    std::uint32_t mask_offset;  // into comp_masks_
    std::uint32_t mask_words;
  };
  std::vector<Component> components_;
  std::vector<std::vector<std::uint32_t>> classes_;  // class -> components
  std::vector<std::uint32_t> comp_of_;
  std::vector<std::uint32_t> local_of_;

  std::size_t key_width_ = 0;

  // Chain components, head first; empty when some component is not a chain.
  std::vector<std::uint32_t> chain_order_;
  std::vector<std::uint32_t> chain_begin_;  // per component, into chain_order_
  std::vector<std::uint64_t> max_capacity_;  // per color
  bool feasible_at(std::uint64_t position) const;

  // dynamic
  std::vector<std::uint64_t> remaining_;
  std::vector<std::uint64_t> free_;
  std::vector<std::uint32_t> out_degree_;
  std::vector<std::uint64_t> comp_masks_;
  std::vector<std::uint64_t> spots_;
  std::uint64_t cursor_ = 0;
  std::size_t run_ = 0;

  mutable std::vector<std::uint32_t> scratch_;
  mutable std::vector<std::uint64_t> table_, next_table_;
};

}  // namespace busout::detail
