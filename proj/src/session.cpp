#include "busout/session.hpp"

namespace busout {

const char* to_string(Annotation a) {
  switch (a) {
    case Annotation::kSafe: return "Safe";
    case Annotation::kLosing: return "Losing";
    case Annotation::kUnknown: return "Unknown";
  }
  return "?";
}

Session::Session(std::string id, const Configuration& initial, BoardingPolicy policy)
    : id_(std::move(id)), policy_(policy) {
  auto normalized = normalize_boarding(initial, policy);
  initial_ = std::move(normalized.config);
  initial_events_ = std::move(normalized.events);
  current_ = initial_;
}

const HistoryEntry& Session::dispatch(BusId bus) {
  auto next = busout::dispatch(current_, bus, policy_);
  trail_.push_back(current_);
  history_.push_back({bus, std::move(next.events)});
  current_ = std::move(next.config);
  return history_.back();
}

bool Session::undo() {
  if (history_.empty()) return false;
  current_ = std::move(trail_.back());
  trail_.pop_back();
  history_.pop_back();
  return true;
}

void Session::reset() {
  history_.clear();
  trail_.clear();
  current_ = initial_;
}

Configuration Session::replay() const {
  Configuration cfg = initial_;
  for (const auto& h : history_) cfg = busout::dispatch(cfg, h.bus, policy_).config;
  return cfg;
}

std::vector<AnnotatedMove> Session::annotate(const SolveBudget& budget) {
  std::vector<AnnotatedMove> out;
  for (BusId bus : legal_moves(current_)) {
    const Configuration child = busout::dispatch(current_, bus, policy_).config;
    StateKey key = state_key(child);
    if (auto it = annotations_.find(key); it != annotations_.end()) {
      out.push_back({bus, it->second});
      continue;
    }
    SolveOptions options;
    options.policy = policy_;
    const Verdict v = solve(child, budget, options).verdict;
    const Annotation a = v == Verdict::kSolvable     ? Annotation::kSafe
                         : v == Verdict::kUnsolvable ? Annotation::kLosing
                                                     : Annotation::kUnknown;
    if (a != Annotation::kUnknown) annotations_.emplace(std::move(key), a);
    out.push_back({bus, a});
  }
  return out;
}

SolveResult Session::solve_from_here(const SolveBudget& budget) const {
  SolveOptions options;
  options.policy = policy_;
  return solve(current_, budget, options);
}

SessionStore::SessionStore(std::size_t capacity) : capacity_(std::max<std::size_t>(1, capacity)) {}

std::shared_ptr<Session> SessionStore::create(const Configuration& cfg, BoardingPolicy policy) {
  auto report = check_eligibility(cfg);
  if (!report.ok()) throw IneligibleError(std::move(report));
  std::lock_guard lock(mutex_);
  std::string id = "s" + std::to_string(next_id_++);
  auto session = std::make_shared<Session>(id, cfg, policy);
  order_.emplace_front(id, session);
  index_[id] = order_.begin();
  while (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
  return session;
}

std::shared_ptr<Session> SessionStore::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(id);
  if (it == index_.end()) return nullptr;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard lock(mutex_);
  auto it = index_.find(id);
  if (it == index_.end()) return false;
  order_.erase(it->second);
  index_.erase(it);
  return true;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

}  // namespace busout
