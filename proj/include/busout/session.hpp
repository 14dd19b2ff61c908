#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "busout/solver.hpp"
#include "busout/transitions.hpp"

namespace busout {

enum class Annotation { kSafe, kLosing, kUnknown };
const char* to_string(Annotation a);

struct HistoryEntry {
  BusId bus;
  std::vector<BoardingEvent> events;
};

struct AnnotatedMove {
  BusId bus;
  Annotation annotation;
};

// One play of an instance. Not thread-safe; callers hold mutex().
class Session {
 public:
  // `initial` must be eligible. Forced boardings of the given configuration
  // are applied up front and kept in initial_events().
  Session(std::string id, const Configuration& initial, BoardingPolicy policy = BoardingPolicy::kFewestRemaining);

  const std::string& id() const { return id_; }
  const Configuration& initial() const { return initial_; }
  const Configuration& current() const { return current_; }
  const std::vector<HistoryEntry>& history() const { return history_; }
  const std::vector<BoardingEvent>& initial_events() const { return initial_events_; }
  BoardingPolicy policy() const { return policy_; }

  // Throws MoveError; the session is unchanged on failure.
  const HistoryEntry& dispatch(BusId bus);
  // False when there is nothing to undo.
  bool undo();
  void reset();

  // Fresh replay of the history from initial().
  Configuration replay() const;

  // Solver verdict on each child of the current configuration. Verdicts are
  // cached per child state; Inconclusive results are not cached.
  std::vector<AnnotatedMove> annotate(const SolveBudget& budget);
  SolveResult solve_from_here(const SolveBudget& budget) const;

  std::mutex& mutex() { return mutex_; }

 private:
  std::string id_;
  BoardingPolicy policy_;
  Configuration initial_;
  std::vector<BoardingEvent> initial_events_;
  Configuration current_;
  std::vector<HistoryEntry> history_;
  std::vector<Configuration> trail_;  // current_ before each history entry
  std::unordered_map<StateKey, Annotation, StateKeyHash> annotations_;
  std::mutex mutex_;
};

// In-memory sessions with least-recently-used eviction. Thread-safe.
class SessionStore {
 public:
  explicit SessionStore(std::size_t capacity);

  // Throws IneligibleError.
  std::shared_ptr<Session> create(const Configuration& cfg, BoardingPolicy policy = BoardingPolicy::kFewestRemaining);
  std::shared_ptr<Session> find(const std::string& id);
  bool erase(const std::string& id);
  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }

 private:
  using Entry = std::pair<std::string, std::shared_ptr<Session>>;
  std::size_t capacity_;
  std::uint64_t next_id_ = 1;
  std::list<Entry> order_;  // most recent first
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
  mutable std::mutex mutex_;
};

}  // namespace busout
