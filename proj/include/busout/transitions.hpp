#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "busout/model.hpp"

namespace busout {

// How a boarding passenger picks among several parked buses of its color.
enum class BoardingPolicy {
  kFewestRemaining,  // fewest free seats, then lowest spot index
  kLeftmost,         // lowest spot index (what the phone game does)
};

struct EligibilityViolation {
  enum class Kind { kCycle, kCapacityMismatch };
  Kind kind;
  std::optional<ColorId> color;
  std::uint64_t seats = 0;       // capacity in traffic + remaining seats parked
  std::uint64_t passengers = 0;  // passengers of that color from the cursor on
  std::vector<BusId> cycle;
  std::string message;
};

struct EligibilityReport {
  std::vector<EligibilityViolation> violations;
  bool ok() const { return violations.empty(); }
};

EligibilityReport check_eligibility(const Configuration& cfg);

std::vector<BusId> free_buses(const CongestionGraph& g);

struct BoardingEvent {
  enum class Kind { kBoard, kDeparture };
  Kind kind;
  std::size_t spot = 0;
  ColorId color;
  std::uint64_t passenger = 0;  // queue position of the boarding passenger
  friend bool operator==(const BoardingEvent&, const BoardingEvent&) = default;
};

struct TransitionResult {
  Configuration config;
  std::vector<BoardingEvent> events;
};

// Applies forced boardings until the front passenger has no parked bus of its
// color (or the queue is exhausted).
TransitionResult normalize_boarding(const Configuration& cfg,
                                    BoardingPolicy policy = BoardingPolicy::kFewestRemaining);

class MoveError : public std::runtime_error {
 public:
  enum class Kind { kUnknownBus, kNotFree, kNoEmptySpot };
  MoveError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(MoveError::Kind kind);

// Parks a free bus in the lowest-index empty spot, then normalizes boarding.
TransitionResult dispatch(const Configuration& cfg, BusId bus,
                          BoardingPolicy policy = BoardingPolicy::kFewestRemaining);

std::vector<BusId> legal_moves(const Configuration& cfg);

enum class Classification { kEmpty, kDeadlock, kLive };
const char* to_string(Classification c);

Classification classify(const Configuration& cfg);

// Identity-based digest: remaining bus ids, sorted occupied spots, cursor.
struct StateKey {
  std::vector<std::uint64_t> words;
  friend bool operator==(const StateKey&, const StateKey&) = default;
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept;
};

StateKey state_key(const Configuration& cfg);

// Passengers boarded so far must equal dispatched capacity minus parked seats.
// `initial` is the configuration the play started from.
bool conservation_holds(const Configuration& initial, const Configuration& current);

}  // namespace busout
