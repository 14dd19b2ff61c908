#include <csignal>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "busout/documents.hpp"
#include "busout/generators.hpp"
#include "busout/instance_io.hpp"
#include "busout/poly_decider.hpp"
#include "busout/service.hpp"
#include "busout/solver.hpp"

using namespace busout;
using nlohmann::json;

namespace {

enum Exit : int { kSolved = 0, kUnsolvable = 1, kInconclusive = 2, kIneligible = 3, kMalformed = 4 };

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::kSolvable: return kSolved;
    case Verdict::kUnsolvable: return kUnsolvable;
    case Verdict::kInconclusive: return kInconclusive;
  }
  return kInconclusive;
}

struct BudgetFlags {
  std::optional<std::uint64_t> max_states;
  std::optional<double> timeout;
  SolveBudget budget() const { return {max_states, timeout}; }
};

void add_budget(CLI::App* cmd, BudgetFlags& flags) {
  cmd->add_option("--max-states", flags.max_states, "stop after this many distinct states");
  cmd->add_option("--timeout", flags.timeout, "wall-clock limit in seconds");
}

void print(const json& doc) { std::cout << doc.dump(2) << "\n"; }

int ineligible(const Configuration& cfg, const IneligibleError& e) {
  json doc = to_document(cfg, e.report());
  doc["verdict"] = "Ineligible";
  print(doc);
  return kIneligible;
}

std::vector<std::uint64_t> parse_items(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    const auto v = std::stoull(part, &used);
    if (used != part.size()) throw std::invalid_argument("bad item '" + part + "'");
    out.push_back(v);
  }
  return out;
}

void emit(const Configuration& cfg, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << render_instance(cfg);
  } else {
    save_instance(cfg, out);
  }
}

Service* g_service = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bus Out puzzle engine"};
  app.require_subcommand(1);

  std::string file;
  BudgetFlags budget;

  auto* check = app.add_subcommand("check", "eligibility report and instance class");
  check->add_option("file", file, "instance file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "decide solvability and print a plan");
  solve_cmd->add_option("file", file, "instance file")->required();
  add_budget(solve_cmd, budget);
  std::string route_name = "auto";
  solve_cmd->add_option("--class", route_name, "decider route")
      ->check(CLI::IsMember({"auto", "mono", "reserved", "independent", "general"}));
  std::string policy_name = "fewest";
  solve_cmd->add_option("--policy", policy_name, "boarding tie-break")->check(CLI::IsMember({"fewest", "leftmost"}));

  auto* minspots = app.add_subcommand("min-spots", "least spot count that makes the instance solvable");
  minspots->add_option("file", file, "instance file")->required();
  add_budget(minspots, budget);

  auto* count = app.add_subcommand("count", "number of reachable states");
  count->add_option("file", file, "instance file")->required();
  std::uint64_t cap = 1000000;
  bool symmetric = false;
  count->add_option("--cap", cap, "stop counting past this many states");
  count->add_flag("--symmetric", symmetric, "identify states that differ by swapping identical traffic components");

  auto* gen = app.add_subcommand("gen", "write a generated instance");
  gen->require_subcommand(1);
  std::string out;
  auto* gen3 = gen->add_subcommand("3part", "reduction from a 3-Partition instance");
  std::string items;
  std::string variant = "s21";
  std::size_t gen_spots = 1;
  gen3->add_option("--items", items, "comma separated positive integers, count a multiple of 3")->required();
  gen3->add_option("--variant", variant, "121, s21 or ind")->check(CLI::IsMember({"121", "s21", "ind"}));
  gen3->add_option("--spots", gen_spots, "spot count for s21 and ind");
  gen3->add_option("--out", out, "output file (default stdout)");

  auto* genf = gen->add_subcommand("fuzz", "random eligible instance");
  ClassParams params{2, 2, {1}};
  std::string shape_name = "any";
  std::string queue_name = "shuffled";
  std::uint64_t seed = 1;
  FuzzOptions fuzz;
  genf->add_option("--spots", params.spots, "spot count");
  genf->add_option("--colors", params.colors, "color count");
  genf->add_option("--capacities", params.capacities, "capacity values")->delimiter(',');
  genf->add_option("--shape", shape_name, "paths, dag, edgeless or any")
      ->check(CLI::IsMember({"paths", "dag", "edgeless", "any"}));
  genf->add_option("--queue", queue_name, "shuffled or playthrough")->check(CLI::IsMember({"shuffled", "playthrough"}));
  genf->add_option("--seed", seed, "random seed");
  genf->add_option("--min-buses", fuzz.min_buses, "fewest buses");
  genf->add_option("--max-buses", fuzz.max_buses, "most buses");
  genf->add_option("--out", out, "output file (default stdout)");

  auto* gend = gen->add_subcommand("dup", "multiply capacities and passenger counts");
  std::uint32_t factor = 2;
  gend->add_option("file", file, "instance file")->required();
  gend->add_option("--factor", factor, "multiplier")->required();
  gend->add_option("--out", out, "output file (default stdout)");

  auto* serve = app.add_subcommand("serve", "local HTTP session service under /v1");
  int port = 8420;
  ServiceOptions service_options;
  std::uint64_t budget_states = *service_options.budget.max_states;
  double budget_seconds = *service_options.budget.time_limit_seconds;
  serve->add_option("--port", port, "TCP port (0 picks one)");
  serve->add_option("--host", service_options.host, "bind address");
  serve->add_option("--budget-states", budget_states, "state budget per annotation or solve request");
  serve->add_option("--budget-seconds", budget_seconds, "time budget per annotation or solve request");
  serve->add_option("--max-sessions", service_options.max_sessions, "sessions kept before evicting the oldest");

  CLI11_PARSE(app, argc, argv);

  Configuration cfg;
  const bool needs_file = check->parsed() || solve_cmd->parsed() || minspots->parsed() || count->parsed() ||
                          gend->parsed();
  if (needs_file) {
    try {
      cfg = load_instance(file);
    } catch (const ParseError& e) {
      std::cerr << "parse error: " << e.what() << "\n";
      return kMalformed;
    }
  }

  try {
    if (check->parsed()) {
      const auto report = check_eligibility(cfg);
      json doc = to_document(cfg, report);
      if (report.ok()) doc["class"] = to_string(classify_class(cfg));
      print(doc);
      return report.ok() ? kSolved : kIneligible;
    }

    if (solve_cmd->parsed()) {
      const ClassRoute route = route_name == "mono"          ? ClassRoute::kMonochrome
                               : route_name == "reserved"    ? ClassRoute::kReserved
                               : route_name == "independent" ? ClassRoute::kIndependent
                               : route_name == "general"     ? ClassRoute::kGeneral
                                                             : ClassRoute::kAuto;
      SolveOptions options;
      options.policy = policy_name == "leftmost" ? BoardingPolicy::kLeftmost : BoardingPolicy::kFewestRemaining;
      try {
        const auto result = decide(cfg, route, budget.budget(), options);
        print(to_document(cfg, result));
        return exit_for(result.verdict);
      } catch (const IneligibleError& e) {
        return ineligible(cfg, e);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMalformed;
      }
    }

    if (minspots->parsed()) {
      try {
        print(to_document(min_spots(cfg, budget.budget())));
        return kSolved;
      } catch (const IneligibleError& e) {
        return ineligible(cfg, e);
      } catch (const BudgetExceeded& e) {
        MinSpotsResult partial;
        partial.per_s = e.partial();
        json doc = to_document(partial);
        doc["s0"] = nullptr;
        doc["verdict"] = "Inconclusive";
        print(doc);
        return kInconclusive;
      }
    }

    if (count->parsed()) {
      const auto report = check_eligibility(cfg);
      if (!report.ok()) return ineligible(cfg, IneligibleError(report));
      const auto r = enumerate_reachable(cfg, cap, symmetric ? KeyMode::kSymmetric : KeyMode::kIdentity);
      print({{"count", r.count}, {"truncated", r.truncated}, {"symmetric", symmetric}});
      return r.truncated ? kInconclusive : kSolved;
    }

    if (gen3->parsed()) {
      const ThreePartitionInstance inst(parse_items(items));
      if (variant == "121") emit(gen_reduction_121(inst), out);
      else if (variant == "s21") emit(gen_reduction_s21(inst, gen_spots), out);
      else emit(gen_reduction_ind(inst, gen_spots), out);
      return kSolved;
    }

    if (genf->parsed()) {
      const GraphShape shape = shape_name == "paths"      ? GraphShape::kPaths
                               : shape_name == "dag"      ? GraphShape::kDag
                               : shape_name == "edgeless" ? GraphShape::kEdgeless
                                                          : GraphShape::kAny;
      fuzz.queue = queue_name == "playthrough" ? QueueStyle::kPlaythrough : QueueStyle::kShuffled;
      emit(fuzz_instance(params, seed, shape, fuzz), out);
      return kSolved;
    }

    if (gend->parsed()) {
      emit(duplicate_capacity(cfg, factor), out);
      return kSolved;
    }

    if (serve->parsed()) {
      service_options.budget = {budget_states, budget_seconds};
      Service service(service_options);
      const int bound = service.bind(port);
      std::cerr << "listening on http://" << service_options.host << ":" << bound << "/v1\n";
      g_service = &service;
      std::signal(SIGINT, [](int) { g_service->stop(); });
      std::signal(SIGTERM, [](int) { g_service->stop(); });
      service.run();
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
