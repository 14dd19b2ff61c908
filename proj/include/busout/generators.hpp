#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "busout/model.hpp"

namespace busout {

class ThreePartitionInstance {
 public:
  // Throws std::invalid_argument unless items is a non-empty list of positive
  // integers whose length is a multiple of three.
  explicit ThreePartitionInstance(std::vector<std::uint64_t> items);

  const std::vector<std::uint64_t>& items() const { return items_; }
  std::size_t triples() const { return items_.size() / 3; }
  std::uint64_t sum() const { return sum_; }
  // False when the sum is not divisible by n; such inputs are No-instances.
  bool target_integral() const { return sum_ % triples() == 0; }
  std::uint64_t target() const;
  // T/4 < a < T/2 for every element.
  bool strict() const;

 private:
  std::vector<std::uint64_t> items_;
  std::uint64_t sum_ = 0;
};

class PartitionTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kOracleMaxTriples = 6;

// Index triples of a valid partition, or nullopt. Exhaustive.
using TriplePartition = std::vector<std::array<std::size_t, 3>>;
std::optional<TriplePartition> oracle_3partition(const ThreePartitionInstance& inst);

// Disjoint paths of a_i red then a_i green unit buses, heads free; queue
// (R^T G^T)^n; one empty spot. Requires an integral target.
Configuration gen_reduction_121(const ThreePartitionInstance& inst);

// Paths of s*a_i red then s*a_i green unit buses; queue (R^{sT} G^{sT})^n;
// s empty spots. s = 1 reproduces gen_reduction_121.
Configuration gen_reduction_s21(const ThreePartitionInstance& inst, std::size_t spots);

// Multiplies capacities, queue runs, parked seats and the cursor by d.
Configuration duplicate_capacity(const Configuration& cfg, std::uint32_t d);

// Edgeless instance over colors x0..xs: one (x0, a_i) bus per element,
// n (x_i, 2) buses for 1 <= i < s, n (x_s, 1) buses; queue
// (x1 .. x_{s-1} x0^T x_s x1 .. x_{s-1})^n; s empty spots.
Configuration gen_reduction_ind(const ThreePartitionInstance& inst, std::size_t spots);

enum class GraphShape { kPaths, kDag, kEdgeless, kAny };

enum class QueueStyle {
  kShuffled,     // uniform interleaving of the per-color passenger totals
  kPlaythrough,  // recorded from a random play with the instance's spots
};

struct FuzzOptions {
  std::size_t min_buses = 1;
  std::size_t max_buses = 8;
  double edge_probability = 0.3;
  QueueStyle queue = QueueStyle::kShuffled;
};

// Eligible instance in B(params) with an all-empty spot state; deterministic
// per seed.
Configuration fuzz_instance(const ClassParams& params, std::uint64_t seed, GraphShape shape,
                            const FuzzOptions& options = {});

}  // namespace busout
