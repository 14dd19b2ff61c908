#pragma once

#include "json.hpp"

#include "busout/model.hpp"
#include "busout/poly_decider.hpp"
#include "busout/solver.hpp"
#include "busout/transitions.hpp"

namespace busout {

// Structured documents shared by the CLI and the session service. Field
// names are listed in docs/service-api.md.

nlohmann::json to_document(const Configuration& cfg, const EligibilityReport& report);
nlohmann::json to_document(const Configuration& cfg, const SolveResult& result);
nlohmann::json to_document(const MinSpotsResult& result);
nlohmann::json to_document(const Configuration& cfg, const std::vector<BoardingEvent>& events);

// Graph with free flags, queue runs and cursor, spot contents, classification.
nlohmann::json state_document(const Configuration& cfg);

}  // namespace busout
