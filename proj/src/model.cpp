#include "busout/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace busout {

Palette::Palette(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InstanceError("palette: empty color name");
    if (!seen.insert(n).second) throw InstanceError("palette: duplicate color '" + n + "'");
  }
  if (names_.size() > 0xFFFF) throw InstanceError("palette: too many colors");
}

std::optional<ColorId> Palette::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return ColorId{static_cast<std::uint16_t>(i)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

CongestionGraph::CongestionGraph() : layout_(std::make_shared<const Layout>()) {}

CongestionGraph::CongestionGraph(std::vector<std::string> names, std::vector<BusLabel> labels,
                                 std::vector<BlockEdge> blocks) {
  if (names.size() != labels.size()) throw InstanceError("graph: names/labels size mismatch");
  auto layout = std::make_shared<Layout>();
  const std::size_t n = labels.size();
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (names[i].empty()) throw InstanceError("graph: empty bus id");
    if (!seen.insert(names[i]).second) throw InstanceError("graph: duplicate bus id '" + names[i] + "'");
    if (labels[i].capacity == 0) throw InstanceError("graph: bus '" + names[i] + "' has capacity 0");
  }
  layout->blockers.resize(n);
  layout->blocked.resize(n);
  std::set<BlockEdge> unique(blocks.begin(), blocks.end());
  for (const auto& e : unique) {
    if (e.blocked.value >= n || e.blocker.value >= n) throw InstanceError("graph: edge endpoint out of range");
    if (e.blocked == e.blocker) throw InstanceError("graph: self-loop on '" + names[e.blocked.value] + "'");
    layout->blockers[e.blocked.value].push_back(e.blocker);
    layout->blocked[e.blocker.value].push_back(e.blocked);
  }
  layout->names = std::move(names);
  layout->labels = std::move(labels);
  layout_ = std::move(layout);
  present_.assign(n, true);
  present_count_ = n;
}

bool CongestionGraph::contains(BusId bus) const {
  return bus.value < present_.size() && present_[bus.value];
}

std::optional<BusId> CongestionGraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < layout_->names.size(); ++i) {
    if (layout_->names[i] == name) return BusId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

std::vector<BusId> CongestionGraph::vertices() const {
  std::vector<BusId> out;
  out.reserve(present_count_);
  for (std::size_t i = 0; i < present_.size(); ++i) {
    if (present_[i]) out.push_back(BusId{static_cast<std::uint32_t>(i)});
  }
  return out;
}

std::vector<BlockEdge> CongestionGraph::edges() const {
  std::vector<BlockEdge> out;
  for (std::size_t i = 0; i < present_.size(); ++i) {
    if (!present_[i]) continue;
    for (BusId v : layout_->blockers[i]) {
      if (present_[v.value]) out.push_back({BusId{static_cast<std::uint32_t>(i)}, v});
    }
  }
  return out;
}

std::span<const BusId> CongestionGraph::blockers_of(BusId bus) const {
  return layout_->blockers.at(bus.value);
}

std::span<const BusId> CongestionGraph::blocked_by(BusId bus) const {
  return layout_->blocked.at(bus.value);
}

std::size_t CongestionGraph::out_degree(BusId bus) const {
  std::size_t d = 0;
  for (BusId v : layout_->blockers.at(bus.value)) d += present_[v.value] ? 1 : 0;
  return d;
}

CongestionGraph CongestionGraph::without(BusId bus) const {
  CongestionGraph g = *this;
  if (g.contains(bus)) {
    g.present_[bus.value] = false;
    --g.present_count_;
  }
  return g;
}

std::optional<std::vector<BusId>> CongestionGraph::find_cycle() const {
  // Iterative three-color DFS following blocked -> blocker edges.
  const std::size_t n = present_.size();
  std::vector<std::uint8_t> color(n, 0);
  std::vector<std::uint32_t> parent(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (!present_[root] || color[root] != 0) continue;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{static_cast<std::uint32_t>(root), 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      const auto& out = layout_->blockers[u];
      if (next == out.size()) {
        color[u] = 2;
        stack.pop_back();
        continue;
      }
      const std::uint32_t v = out[next++].value;
      if (!present_[v]) continue;
      if (color[v] == 1) {
        std::vector<BusId> cycle{BusId{v}};
        for (std::uint32_t w = u; w != v; w = parent[w]) cycle.push_back(BusId{w});
        std::reverse(cycle.begin() + 1, cycle.end());
        return cycle;
      }
      if (color[v] == 0) {
        color[v] = 1;
        parent[v] = u;
        stack.emplace_back(v, 0);
      }
    }
  }
  return std::nullopt;
}

bool operator==(const CongestionGraph& a, const CongestionGraph& b) {
  if (a.size() != b.size()) return false;
  std::map<std::string_view, BusLabel> la;
  for (BusId v : a.vertices()) la.emplace(a.name(v), a.label(v));
  for (BusId v : b.vertices()) {
    auto it = la.find(b.name(v));
    if (it == la.end() || !(it->second == b.label(v))) return false;
  }
  auto named = [](const CongestionGraph& g) {
    std::set<std::pair<std::string_view, std::string_view>> out;
    for (const auto& e : g.edges()) out.emplace(g.name(e.blocked), g.name(e.blocker));
    return out;
  };
  return named(a) == named(b);
}

// ---------------------------------------------------------------------------

PassengerQueue::PassengerQueue()
    : runs_(std::make_shared<const std::vector<QueueRun>>()),
      ends_(std::make_shared<const std::vector<std::uint64_t>>()) {}

PassengerQueue::PassengerQueue(std::vector<QueueRun> runs) {
  std::vector<QueueRun> merged;
  for (const auto& r : runs) {
    if (r.count == 0) throw InstanceError("queue: run with zero passengers");
    if (!merged.empty() && merged.back().color == r.color) {
      merged.back().count += r.count;
    } else {
      merged.push_back(r);
    }
  }
  std::vector<std::uint64_t> ends;
  ends.reserve(merged.size());
  std::uint64_t acc = 0;
  for (const auto& r : merged) ends.push_back(acc += r.count);
  runs_ = std::make_shared<const std::vector<QueueRun>>(std::move(merged));
  ends_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(ends));
}

std::size_t PassengerQueue::run_index_at(std::uint64_t position) const {
  return static_cast<std::size_t>(std::upper_bound(ends_->begin(), ends_->end(), position) - ends_->begin());
}

std::optional<ColorId> PassengerQueue::front() const {
  if (exhausted()) return std::nullopt;
  return (*runs_)[run_index_at(cursor_)].color;
}

std::uint64_t PassengerQueue::front_run_remaining() const {
  if (exhausted()) return 0;
  return (*ends_)[run_index_at(cursor_)] - cursor_;
}

std::uint64_t PassengerQueue::count_remaining(ColorId color) const {
  std::uint64_t n = 0;
  for (const auto& r : remaining_runs()) n += r.color == color ? r.count : 0;
  return n;
}

std::vector<QueueRun> PassengerQueue::remaining_runs() const {
  std::vector<QueueRun> out;
  for (std::size_t i = run_index_at(cursor_); i < runs_->size(); ++i) {
    const std::uint64_t begin = i == 0 ? 0 : (*ends_)[i - 1];
    out.push_back({(*runs_)[i].color, (*ends_)[i] - std::max(begin, cursor_)});
  }
  return out;
}

PassengerQueue PassengerQueue::advanced(std::uint64_t passengers) const {
  if (passengers > remaining()) throw std::out_of_range("queue: advancing past the end");
  PassengerQueue q = *this;
  q.cursor_ += passengers;
  return q;
}

bool operator==(const PassengerQueue& a, const PassengerQueue& b) {
  return a.cursor_ == b.cursor_ && *a.runs_ == *b.runs_;
}

// ---------------------------------------------------------------------------

SpotState::SpotState(std::vector<Spot> spots) : spots_(std::move(spots)) {
  for (const auto& s : spots_) {
    if (s && s->remaining == 0) throw InstanceError("spots: occupied spot with zero remaining seats");
  }
}

std::optional<std::size_t> SpotState::first_empty() const {
  for (std::size_t i = 0; i < spots_.size(); ++i) {
    if (!spots_[i]) return i;
  }
  return std::nullopt;
}

std::size_t SpotState::occupied_count() const {
  return static_cast<std::size_t>(std::count_if(spots_.begin(), spots_.end(), [](const Spot& s) { return s.has_value(); }));
}

SpotState SpotState::with(std::size_t index, Spot spot) const {
  if (spot && spot->remaining == 0) throw std::invalid_argument("spots: storing a bus with zero remaining seats");
  SpotState out = *this;
  out.spots_.at(index) = spot;
  return out;
}

// ---------------------------------------------------------------------------

Configuration::Configuration(Palette palette, CongestionGraph graph, PassengerQueue queue, SpotState spots)
    : palette_(std::make_shared<const Palette>(std::move(palette))),
      graph_(std::move(graph)),
      queue_(std::move(queue)),
      spots_(std::move(spots)) {
  auto check = [&](ColorId c, const char* where) {
    if (c.value >= palette_->size()) throw InstanceError(std::string(where) + ": color id outside the palette");
  };
  for (BusId v : graph_.vertices()) check(graph_.label(v).color, "graph");
  for (const auto& r : queue_.runs()) check(r.color, "queue");
  for (const auto& s : spots_.spots()) {
    if (s) check(s->color, "spots");
  }
}

Configuration Configuration::with_graph(CongestionGraph g) const {
  Configuration c = *this;
  c.graph_ = std::move(g);
  return c;
}

Configuration Configuration::with_queue(PassengerQueue q) const {
  Configuration c = *this;
  c.queue_ = std::move(q);
  return c;
}

Configuration Configuration::with_spots(SpotState s) const {
  Configuration c = *this;
  c.spots_ = std::move(s);
  return c;
}

bool operator==(const Configuration& a, const Configuration& b) {
  return *a.palette_ == *b.palette_ && a.graph_ == b.graph_ && a.queue_ == b.queue_ && a.spots_ == b.spots_;
}

}  // namespace busout
