#include "busout/documents.hpp"

namespace busout {

using nlohmann::json;

namespace {

json spot_json(const Palette& pal, const Spot& s) {
  if (!s) return "empty";
  return {{"color", pal.name(s->color)}, {"remaining", s->remaining}};
}

}  // namespace

json to_document(const Configuration& cfg, const EligibilityReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    json item{{"kind", v.kind == EligibilityViolation::Kind::kCycle ? "cycle" : "capacityMismatch"},
              {"message", v.message}};
    if (v.color) {
      item["color"] = cfg.palette().name(*v.color);
      item["seats"] = v.seats;
      item["passengers"] = v.passengers;
    }
    if (!v.cycle.empty()) {
      json cycle = json::array();
      for (BusId b : v.cycle) cycle.push_back(cfg.graph().name(b));
      item["cycle"] = std::move(cycle);
    }
    violations.push_back(std::move(item));
  }
  return {{"eligible", report.ok()}, {"violations", std::move(violations)}};
}

json to_document(const Configuration& cfg, const SolveResult& result) {
  json doc{{"verdict", to_string(result.verdict)},
           {"stats",
            {{"statesVisited", result.stats.states_visited},
             {"peakFrontier", result.stats.peak_frontier},
             {"elapsedSeconds", result.stats.elapsed_seconds}}}};
  doc["plan"] = result.plan ? json(plan_names(cfg, *result.plan)) : json(nullptr);
  return doc;
}

json to_document(const MinSpotsResult& result) {
  json per = json::array();
  for (const auto& [s, v] : result.per_s) per.push_back({{"spots", s}, {"verdict", to_string(v)}});
  return {{"s0", result.s0}, {"perS", std::move(per)}};
}

json to_document(const Configuration& cfg, const std::vector<BoardingEvent>& events) {
  json out = json::array();
  for (const auto& e : events) {
    out.push_back({{"kind", e.kind == BoardingEvent::Kind::kBoard ? "board" : "departure"},
                   {"spot", e.spot},
                   {"color", cfg.palette().name(e.color)},
                   {"passenger", e.passenger}});
  }
  return out;
}

json state_document(const Configuration& cfg) {
  const auto& g = cfg.graph();
  const auto& pal = cfg.palette();
  json buses = json::array();
  for (BusId v : g.vertices()) {
    buses.push_back({{"id", g.name(v)},
                     {"color", pal.name(g.label(v).color)},
                     {"capacity", g.label(v).capacity},
                     {"free", g.is_free(v)}});
  }
  json blocks = json::array();
  for (const auto& e : g.edges()) blocks.push_back({g.name(e.blocked), g.name(e.blocker)});
  json queue = json::array();
  for (const auto& r : cfg.queue().runs()) queue.push_back({pal.name(r.color), r.count});
  json spots = json::array();
  for (const auto& s : cfg.spots().spots()) spots.push_back(spot_json(pal, s));
  json moves = json::array();
  for (BusId b : legal_moves(cfg)) moves.push_back(g.name(b));
  return {{"palette", pal.names()},
          {"spots", cfg.spots().size()},
          {"buses", std::move(buses)},
          {"blocks", std::move(blocks)},
          {"queue", std::move(queue)},
          {"cursor", cfg.queue().cursor()},
          {"spotState", std::move(spots)},
          {"classification", to_string(classify(cfg))},
          {"legalMoves", std::move(moves)}};
}

}  // namespace busout
