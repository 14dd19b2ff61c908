#include "busout/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace busout {

ThreePartitionInstance::ThreePartitionInstance(std::vector<std::uint64_t> items) : items_(std::move(items)) {
  if (items_.empty() || items_.size() % 3 != 0) {
    throw std::invalid_argument("3-partition: need a positive multiple of three items");
  }
  for (auto a : items_) {
    if (a == 0) throw std::invalid_argument("3-partition: items must be positive");
    sum_ += a;
  }
}

std::uint64_t ThreePartitionInstance::target() const {
  if (!target_integral()) throw std::invalid_argument("3-partition: sum is not divisible by n");
  return sum_ / triples();
}

bool ThreePartitionInstance::strict() const {
  // T/4 < a < T/2  <=>  sum < 4 n a  and  2 n a < sum
  const std::uint64_t n = triples();
  return std::all_of(items_.begin(), items_.end(), [&](std::uint64_t a) { return sum_ < 4 * n * a && 2 * n * a < sum_; });
}

namespace {

bool fill_triples(const std::vector<std::uint64_t>& items, std::uint64_t target, std::vector<bool>& used,
                  TriplePartition& out) {
  const auto first = std::find(used.begin(), used.end(), false);
  if (first == used.end()) return true;
  const std::size_t i = static_cast<std::size_t>(first - used.begin());
  used[i] = true;
  for (std::size_t j = i + 1; j < items.size(); ++j) {
    if (used[j] || items[i] + items[j] >= target) continue;
    // Skip duplicate values at this position.
    bool seen = false;
    for (std::size_t p = i + 1; p < j && !seen; ++p) seen = !used[p] && items[p] == items[j];
    if (seen) continue;
    used[j] = true;
    for (std::size_t k = j + 1; k < items.size(); ++k) {
      if (used[k] || items[i] + items[j] + items[k] != target) continue;
      used[k] = true;
      out.push_back({i, j, k});
      if (fill_triples(items, target, used, out)) return true;
      out.pop_back();
      used[k] = false;
      break;  // any k with the same value gives the same residual multiset
    }
    used[j] = false;
  }
  used[i] = false;
  return false;
}

std::string indexed(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

// Portable bounded draw; std distributions differ between standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do x = gen_(); while (x >= limit);
    return x % n;
  }
  bool chance(double p) { return static_cast<double>(gen_() >> 11) * 0x1.0p-53 < p; }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

std::optional<TriplePartition> oracle_3partition(const ThreePartitionInstance& inst) {
  if (inst.triples() > kOracleMaxTriples) {
    throw PartitionTooLarge("3-partition oracle: more than " + std::to_string(kOracleMaxTriples) + " triples");
  }
  if (!inst.target_integral()) return std::nullopt;
  std::vector<bool> used(inst.items().size(), false);
  TriplePartition out;
  if (fill_triples(inst.items(), inst.target(), used, out)) return out;
  return std::nullopt;
}

Configuration gen_reduction_121(const ThreePartitionInstance& inst) { return gen_reduction_s21(inst, 1); }

Configuration gen_reduction_s21(const ThreePartitionInstance& inst, std::size_t spots) {
  if (spots == 0) throw std::invalid_argument("gen_reduction_s21: spots must be positive");
  const std::uint64_t target = inst.target();
  const ColorId red{0};
  const ColorId green{1};
  std::vector<std::string> names;
  std::vector<BusLabel> labels;
  std::vector<BlockEdge> blocks;
  for (std::size_t i = 0; i < inst.items().size(); ++i) {
    const std::uint64_t len = spots * inst.items()[i];
    const std::string path = "p" + std::to_string(i) + ".";
    for (std::uint64_t j = 0; j < 2 * len; ++j) {
      const bool is_red = j < len;
      names.push_back(path + (is_red ? "r" : "g") + std::to_string(is_red ? j : j - len));
      labels.push_back({is_red ? red : green, 1});
      if (j > 0) {
        const auto self = static_cast<std::uint32_t>(names.size() - 1);
        blocks.push_back({BusId{self}, BusId{self - 1}});
      }
    }
  }
  std::vector<QueueRun> runs;
  for (std::size_t k = 0; k < inst.triples(); ++k) {
    runs.push_back({red, spots * target});
    runs.push_back({green, spots * target});
  }
  return Configuration(Palette({"R", "G"}), CongestionGraph(std::move(names), std::move(labels), std::move(blocks)),
                       PassengerQueue(std::move(runs)), SpotState(spots));
}

Configuration duplicate_capacity(const Configuration& cfg, std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("duplicate_capacity: d must be positive");
  const auto& g = cfg.graph();
  std::vector<std::string> names;
  std::vector<BusLabel> labels;
  std::vector<std::uint32_t> dense(g.universe_size(), 0);
  for (BusId v : g.vertices()) {
    dense[v.value] = static_cast<std::uint32_t>(names.size());
    names.push_back(g.name(v));
    labels.push_back({g.label(v).color, g.label(v).capacity * d});
  }
  std::vector<BlockEdge> blocks;
  for (const auto& e : g.edges()) blocks.push_back({BusId{dense[e.blocked.value]}, BusId{dense[e.blocker.value]}});
  std::vector<QueueRun> runs;
  for (const auto& r : cfg.queue().runs()) runs.push_back({r.color, r.count * d});
  std::vector<Spot> spots;
  for (const auto& s : cfg.spots().spots()) {
    spots.push_back(s ? Spot(ParkedBus{s->color, s->remaining * d}) : Spot());
  }
  return Configuration(cfg.palette(), CongestionGraph(std::move(names), std::move(labels), std::move(blocks)),
                       PassengerQueue(std::move(runs)).advanced(cfg.queue().cursor() * d),
                       SpotState(std::move(spots)));
}

Configuration gen_reduction_ind(const ThreePartitionInstance& inst, std::size_t spots) {
  if (spots == 0) throw std::invalid_argument("gen_reduction_ind: spots must be positive");
  const std::uint64_t target = inst.target();
  const std::size_t n = inst.triples();
  std::vector<std::string> palette;
  for (std::size_t i = 0; i <= spots; ++i) palette.push_back(indexed("x", i));
  auto color = [](std::size_t i) { return ColorId{static_cast<std::uint16_t>(i)}; };

  std::vector<std::string> names;
  std::vector<BusLabel> labels;
  for (std::size_t i = 0; i < inst.items().size(); ++i) {
    names.push_back("x0." + std::to_string(i));
    labels.push_back({color(0), static_cast<std::uint32_t>(inst.items()[i])});
  }
  for (std::size_t c = 1; c <= spots; ++c) {
    for (std::size_t k = 0; k < n; ++k) {
      names.push_back(indexed("x", c) + "." + std::to_string(k));
      labels.push_back({color(c), c < spots ? 2u : 1u});
    }
  }
  std::vector<QueueRun> runs;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 1; c < spots; ++c) runs.push_back({color(c), 1});
    runs.push_back({color(0), target});
    runs.push_back({color(spots), 1});
    for (std::size_t c = 1; c < spots; ++c) runs.push_back({color(c), 1});
  }
  return Configuration(Palette(std::move(palette)), CongestionGraph(std::move(names), std::move(labels), {}),
                       PassengerQueue(std::move(runs)), SpotState(spots));
}

Configuration fuzz_instance(const ClassParams& params, std::uint64_t seed, GraphShape shape,
                            const FuzzOptions& options) {
  if (params.spots == 0 || params.colors == 0 || params.capacities.empty()) {
    throw std::invalid_argument("fuzz_instance: spots, colors and capacities must be non-empty");
  }
  for (auto v : params.capacities) {
    if (v == 0) throw std::invalid_argument("fuzz_instance: capacities must be positive");
  }
  Rng rng(seed);
  const std::size_t lo = std::max<std::size_t>(1, options.min_buses);
  const std::size_t hi = std::max(lo, options.max_buses);
  const std::size_t count = lo + rng.below(hi - lo + 1);

  if (shape == GraphShape::kAny) {
    static constexpr GraphShape kShapes[] = {GraphShape::kPaths, GraphShape::kDag, GraphShape::kEdgeless};
    shape = kShapes[rng.below(3)];
  }

  std::vector<std::string> names;
  std::vector<BusLabel> labels;
  for (std::size_t i = 0; i < count; ++i) {
    names.push_back(indexed("b", i));
    labels.push_back({ColorId{static_cast<std::uint16_t>(rng.below(params.colors))},
                      params.capacities[rng.below(params.capacities.size())]});
  }

  std::vector<BlockEdge> blocks;
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(order);
  if (shape == GraphShape::kPaths) {
    for (std::size_t i = 1; i < count; ++i) {
      if (rng.chance(0.6)) blocks.push_back({BusId{order[i]}, BusId{order[i - 1]}});
    }
  } else if (shape == GraphShape::kDag) {
    for (std::size_t j = 1; j < count; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (rng.chance(options.edge_probability)) blocks.push_back({BusId{order[j]}, BusId{order[i]}});
      }
    }
  }

  std::vector<std::string> palette;
  for (std::size_t c = 0; c < params.colors; ++c) palette.push_back(indexed("c", c));
  CongestionGraph graph(std::move(names), labels, blocks);

  std::vector<ColorId> passengers;
  if (options.queue == QueueStyle::kShuffled) {
    for (const auto& l : labels) passengers.insert(passengers.end(), l.capacity, l.color);
    rng.shuffle(passengers);
  } else {
    // Random play that boards like the engine (fewest remaining seats within
    // the chosen color) and never parks a bus smaller than every parked bus of
    // its color, so the recorded dispatch order replays as a solution.
    CongestionGraph g = graph;
    std::vector<ParkedBus> parked;
    auto fewest = [&](ColorId c) {
      std::size_t best = parked.size();
      for (std::size_t i = 0; i < parked.size(); ++i) {
        if (parked[i].color == c && (best == parked.size() || parked[i].remaining < parked[best].remaining)) best = i;
      }
      return best;
    };
    while (!g.empty() || !parked.empty()) {
      std::vector<BusId> free;
      if (parked.size() < params.spots) {
        for (BusId v : g.vertices()) {
          if (g.out_degree(v) != 0) continue;
          const std::size_t same = fewest(g.label(v).color);
          if (same == parked.size() || g.label(v).capacity >= parked[same].remaining) free.push_back(v);
        }
      }
      if (!free.empty() && (parked.empty() || rng.chance(0.5))) {
        const BusId b = free[rng.below(free.size())];
        parked.push_back({g.label(b).color, g.label(b).capacity});
        g = g.without(b);
        continue;
      }
      const std::size_t i = fewest(parked[rng.below(parked.size())].color);
      passengers.push_back(parked[i].color);
      if (--parked[i].remaining == 0) parked.erase(parked.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }
  std::vector<QueueRun> runs;
  for (ColorId c : passengers) runs.push_back({c, 1});
  return Configuration(Palette(std::move(palette)), std::move(graph), PassengerQueue(std::move(runs)),
                       SpotState(params.spots));
}

}  // namespace busout
