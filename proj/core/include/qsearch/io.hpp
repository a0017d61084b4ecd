#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <span>
#include <string>

#include "qsearch/counting.hpp"
#include "qsearch/database.hpp"
#include "qsearch/efficiency.hpp"
#include "qsearch/full_simulator.hpp"
#include "qsearch/phase_estimation.hpp"
#include "qsearch/state_prep.hpp"

namespace qsearch {

/// Version stamped into every JSON document this library writes.
inline constexpr int kSchemaVersion = 1;

// Scenario file schema (version 1):
//
//   {
//     "n_items":   integer >= 1,
//     "targets":   [integer, ...],             // nonempty, each in [0, n_items)
//     "info_sets": [{"members": [integer, ...], "weight": number > 0,
//                    "name": string (optional)}, ...],
//     "energy":    number > 0                  // optional, default 1.0
//     "labels":    [string, ...]               // optional, exactly n_items entries
//   }
//
// Weights that do not sum to 1 are rescaled and reported as renormalized.
// Unknown keys are rejected.

SearchScenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const SearchScenario& scenario);

/// Parse and validate; errors (including malformed JSON) raise ValidationError
/// whose message names the file and the violated invariant.
SearchScenario load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const StatePrep& prep);
nlohmann::json to_json(const ConfidenceReport& report);
nlohmann::json to_json(const SuccessDistribution& dist);
nlohmann::json to_json(const VerificationReport& report);
nlohmann::json to_json(const PhaseEstimate& estimate);
nlohmann::json to_json(const TailBoundReport& report);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const NuBoundCheck& check);
nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const CountResult& result);

/// CSV with header `k,p_total,p_y_branch,p_complement_branch`.
void write_phase_distribution_csv(std::ostream& os, const PhaseDistribution& dist);

/// CSV with header `item,label,probability,is_target`.
void write_success_distribution_csv(std::ostream& os, const SuccessDistribution& dist,
                                    const SearchScenario& scenario);

/// CSV with header `alpha2,nu,y,T`.
void write_misplaced_curve_csv(std::ostream& os, std::span<const MisplacedPoint> curve);

}  // namespace qsearch
