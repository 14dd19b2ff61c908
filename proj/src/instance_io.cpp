#include "busout/instance_io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace busout {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

void only_fields(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail(where + ": unknown field '" + key + "'");
  }
}

const json& field(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end()) fail(where + ": missing field '" + name + "'");
  return *it;
}

std::uint64_t positive(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) fail(where + ": expected a positive integer");
  return v.get<std::uint64_t>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where + ": expected a string");
  return v.get<std::string>();
}

std::string quoted(const std::string& s) { return json(s).dump(); }

}  // namespace

Configuration parse_instance(std::string_view input) {
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    fail(std::string("instance: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("instance: top level must be an object");
  only_fields(doc, {"palette", "spots", "buses", "blocks", "queue", "initialSpots"}, "instance");

  const json& pal = field(doc, "palette", "instance");
  if (!pal.is_array()) fail("palette: expected an array");
  std::vector<std::string> names;
  for (const auto& p : pal) names.push_back(text(p, "palette"));
  Palette palette;
  try {
    palette = Palette(std::move(names));
  } catch (const InstanceError& e) {
    fail(e.what());
  }
  auto color_of = [&](const json& v, const std::string& where) {
    auto c = palette.find(text(v, where));
    if (!c) fail(where + ": color '" + v.get<std::string>() + "' is not in the palette");
    return *c;
  };

  const std::uint64_t spot_count = positive(field(doc, "spots", "instance"), "spots");
  if (spot_count > 4096) fail("spots: too many parking spots");

  const json& buses = field(doc, "buses", "instance");
  if (!buses.is_array()) fail("buses: expected an array");
  std::vector<std::string> ids;
  std::vector<BusLabel> labels;
  std::map<std::string, BusId> index;
  for (const auto& b : buses) {
    if (!b.is_object()) fail("buses: each bus must be an object");
    only_fields(b, {"id", "color", "capacity"}, "bus");
    std::string id = text(field(b, "id", "bus"), "bus.id");
    const ColorId color = color_of(field(b, "color", "bus"), "bus " + id + ".color");
    const std::uint64_t cap = positive(field(b, "capacity", "bus"), "bus " + id + ".capacity");
    if (cap > 0xFFFFFFFFull) fail("bus " + id + ".capacity: too large");
    if (!index.emplace(id, BusId{static_cast<std::uint32_t>(ids.size())}).second) fail("buses: duplicate id '" + id + "'");
    ids.push_back(std::move(id));
    labels.push_back({color, static_cast<std::uint32_t>(cap)});
  }

  const json& blocks = field(doc, "blocks", "instance");
  if (!blocks.is_array()) fail("blocks: expected an array");
  std::vector<BlockEdge> edges;
  for (const auto& e : blocks) {
    if (!e.is_array() || e.size() != 2) fail("blocks: each entry must be [blockedId, blockerId]");
    auto lookup = [&](const json& v) {
      const std::string id = text(v, "blocks");
      auto it = index.find(id);
      if (it == index.end()) fail("blocks: unknown bus id '" + id + "'");
      return it->second;
    };
    const BusId blocked = lookup(e[0]);
    const BusId blocker = lookup(e[1]);
    if (blocked == blocker) fail("blocks: self-loop on '" + ids[blocked.value] + "'");
    edges.push_back({blocked, blocker});
  }

  const json& queue = field(doc, "queue", "instance");
  if (!queue.is_array()) fail("queue: expected an array");
  std::vector<QueueRun> runs;
  for (const auto& r : queue) {
    if (!r.is_array() || r.size() != 2) fail("queue: each run must be [color, count]");
    runs.push_back({color_of(r[0], "queue"), positive(r[1], "queue count")});
  }

  std::vector<Spot> spots(spot_count);
  if (auto it = doc.find("initialSpots"); it != doc.end()) {
    if (!it->is_array() || it->size() != spot_count) fail("initialSpots: expected an array of length spots");
    for (std::size_t i = 0; i < spot_count; ++i) {
      const json& s = (*it)[i];
      if (s.is_string() && s.get<std::string>() == "empty") continue;
      if (!s.is_object()) fail("initialSpots: entries are \"empty\" or {color, remaining}");
      only_fields(s, {"color", "remaining"}, "initialSpots");
      const std::uint64_t rem = positive(field(s, "remaining", "initialSpots"), "initialSpots.remaining");
      if (rem > 0xFFFFFFFFull) fail("initialSpots.remaining: too large");
      spots[i] = ParkedBus{color_of(field(s, "color", "initialSpots"), "initialSpots.color"),
                           static_cast<std::uint32_t>(rem)};
    }
  }

  try {
    return Configuration(std::move(palette), CongestionGraph(std::move(ids), std::move(labels), std::move(edges)),
                         PassengerQueue(std::move(runs)), SpotState(std::move(spots)));
  } catch (const InstanceError& e) {
    fail(e.what());
  }
}

Configuration load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string render_instance(const Configuration& cfg) {
  const auto& g = cfg.graph();
  const auto& pal = cfg.palette();
  std::ostringstream out;
  out << "{\n  \"palette\": [";
  for (std::size_t i = 0; i < pal.size(); ++i) out << (i ? ", " : "") << quoted(pal.names()[i]);
  out << "],\n  \"spots\": " << cfg.spots().size() << ",\n  \"buses\": [";
  const auto verts = g.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& l = g.label(verts[i]);
    out << (i ? ",\n" : "\n") << "    {\"id\": " << quoted(g.name(verts[i])) << ", \"color\": "
        << quoted(pal.name(l.color)) << ", \"capacity\": " << l.capacity << "}";
  }
  out << (verts.empty() ? "]" : "\n  ]") << ",\n  \"blocks\": [";
  const auto edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    out << (i ? ",\n" : "\n") << "    [" << quoted(g.name(edges[i].blocked)) << ", "
        << quoted(g.name(edges[i].blocker)) << "]";
  }
  out << (edges.empty() ? "]" : "\n  ]") << ",\n  \"queue\": [";
  const auto runs = cfg.queue().remaining_runs();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    out << (i ? ", " : "") << "[" << quoted(pal.name(runs[i].color)) << ", " << runs[i].count << "]";
  }
  out << "]";
  if (!cfg.spots().all_empty()) {
    out << ",\n  \"initialSpots\": [";
    for (std::size_t i = 0; i < cfg.spots().size(); ++i) {
      const Spot& s = cfg.spots()[i];
      out << (i ? ", " : "");
      if (s) {
        out << "{\"color\": " << quoted(pal.name(s->color)) << ", \"remaining\": " << s->remaining << "}";
      } else {
        out << "\"empty\"";
      }
    }
    out << "]";
  }
  out << "\n}\n";
  return out.str();
}

void save_instance(const Configuration& cfg, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << render_instance(cfg);
}

}  // namespace busout
