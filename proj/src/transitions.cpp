#include "busout/transitions.hpp"

#include <algorithm>

namespace busout {

EligibilityReport check_eligibility(const Configuration& cfg) {
  EligibilityReport report;
  const auto& g = cfg.graph();
  if (auto cycle = g.find_cycle()) {
    std::string msg = "congestion graph has a cycle:";
    for (BusId v : *cycle) msg += " " + g.name(v);
    report.violations.push_back({EligibilityViolation::Kind::kCycle, std::nullopt, 0, 0, *cycle, msg});
  }
  const std::size_t colors = cfg.palette().size();
  std::vector<std::uint64_t> seats(colors, 0);
  std::vector<std::uint64_t> passengers(colors, 0);
  for (BusId v : g.vertices()) seats[g.label(v).color.value] += g.label(v).capacity;
  for (const auto& s : cfg.spots().spots()) {
    if (s) seats[s->color.value] += s->remaining;
  }
  for (const auto& r : cfg.queue().remaining_runs()) passengers[r.color.value] += r.count;
  for (std::size_t c = 0; c < colors; ++c) {
    if (seats[c] == passengers[c]) continue;
    const ColorId id{static_cast<std::uint16_t>(c)};
    report.violations.push_back(
        {EligibilityViolation::Kind::kCapacityMismatch, id, seats[c], passengers[c], {},
         "color " + cfg.palette().name(id) + ": " + std::to_string(seats[c]) + " seats vs " +
             std::to_string(passengers[c]) + " passengers"});
  }
  return report;
}

std::vector<BusId> free_buses(const CongestionGraph& g) {
  std::vector<BusId> out;
  for (BusId v : g.vertices()) {
    if (g.out_degree(v) == 0) out.push_back(v);
  }
  return out;
}

namespace {

std::optional<std::size_t> boarding_spot(const SpotState& spots, ColorId color, BoardingPolicy policy) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < spots.size(); ++i) {
    const Spot& s = spots[i];
    if (!s || s->color != color) continue;
    if (policy == BoardingPolicy::kLeftmost) return i;
    if (!best || s->remaining < spots[*best]->remaining) best = i;
  }
  return best;
}

}  // namespace

TransitionResult normalize_boarding(const Configuration& cfg, BoardingPolicy policy) {
  std::vector<Spot> spots(cfg.spots().spots().begin(), cfg.spots().spots().end());
  const PassengerQueue& queue = cfg.queue();
  std::uint64_t cursor = queue.cursor();
  std::vector<BoardingEvent> events;
  PassengerQueue q = queue;
  while (!q.exhausted()) {
    const ColorId color = *q.front();
    const auto target = boarding_spot(SpotState(spots), color, policy);
    if (!target) break;
    events.push_back({BoardingEvent::Kind::kBoard, *target, color, cursor});
    ++cursor;
    q = q.advanced(1);
    if (--spots[*target]->remaining == 0) {
      spots[*target].reset();
      events.push_back({BoardingEvent::Kind::kDeparture, *target, color, cursor - 1});
    }
  }
  return {cfg.with_queue(std::move(q)).with_spots(SpotState(std::move(spots))), std::move(events)};
}

const char* to_string(MoveError::Kind kind) {
  switch (kind) {
    case MoveError::Kind::kUnknownBus: return "UnknownBus";
    case MoveError::Kind::kNotFree: return "NotFree";
    case MoveError::Kind::kNoEmptySpot: return "NoEmptySpot";
  }
  return "?";
}

TransitionResult dispatch(const Configuration& cfg, BusId bus, BoardingPolicy policy) {
  const auto& g = cfg.graph();
  if (!g.contains(bus)) {
    throw MoveError(MoveError::Kind::kUnknownBus, "bus " + std::to_string(bus.value) + " is not in traffic");
  }
  if (g.out_degree(bus) != 0) {
    throw MoveError(MoveError::Kind::kNotFree, "bus " + g.name(bus) + " is blocked");
  }
  const auto slot = cfg.spots().first_empty();
  if (!slot) throw MoveError(MoveError::Kind::kNoEmptySpot, "all parking spots are occupied");
  const BusLabel& label = g.label(bus);
  Configuration parked =
      cfg.with_graph(g.without(bus)).with_spots(cfg.spots().with(*slot, ParkedBus{label.color, label.capacity}));
  return normalize_boarding(parked, policy);
}

std::vector<BusId> legal_moves(const Configuration& cfg) {
  if (!cfg.spots().first_empty()) return {};
  return free_buses(cfg.graph());
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::kEmpty: return "Empty";
    case Classification::kDeadlock: return "Deadlock";
    case Classification::kLive: return "Live";
  }
  return "?";
}

Classification classify(const Configuration& cfg) {
  if (cfg.is_empty()) return Classification::kEmpty;
  return legal_moves(cfg).empty() ? Classification::kDeadlock : Classification::kLive;
}

std::size_t StateKeyHash::operator()(const StateKey& k) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ull;
  for (std::uint64_t w : k.words) {
    h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

StateKey state_key(const Configuration& cfg) {
  StateKey key;
  const auto& g = cfg.graph();
  const std::size_t n = g.universe_size();
  key.words.push_back(cfg.queue().cursor());
  std::vector<std::uint64_t> parked;
  for (const auto& s : cfg.spots().spots()) {
    if (s) parked.push_back((static_cast<std::uint64_t>(s->color.value) << 32) | s->remaining);
  }
  std::sort(parked.begin(), parked.end());
  key.words.push_back(parked.size());
  key.words.insert(key.words.end(), parked.begin(), parked.end());
  std::vector<std::uint64_t> bits((n + 63) / 64, 0);
  for (BusId v : g.vertices()) bits[v.value / 64] |= std::uint64_t{1} << (v.value % 64);
  key.words.insert(key.words.end(), bits.begin(), bits.end());
  return key;
}

bool conservation_holds(const Configuration& initial, const Configuration& current) {
  std::uint64_t dispatched = 0;
  for (BusId v : initial.graph().vertices()) {
    if (!current.graph().contains(v)) dispatched += initial.graph().label(v).capacity;
  }
  auto parked_seats = [](const SpotState& s) {
    std::uint64_t total = 0;
    for (const auto& spot : s.spots()) total += spot ? spot->remaining : 0;
    return total;
  };
  const std::uint64_t boarded = current.queue().cursor() - initial.queue().cursor();
  return boarded + parked_seats(current.spots()) == dispatched + parked_seats(initial.spots());
}

}  // namespace busout
