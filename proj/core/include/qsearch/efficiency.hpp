#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsearch/database.hpp"
#include "qsearch/state_prep.hpp"

namespace qsearch {

struct TimeBound {
  double y_lower = 0.0;
  double t_upper = 0.0;
};

/// Basic confidence with n sets over l + R distinct items:
/// y >= 1/sqrt(n (l + R)),  T <= (pi sqrt(n) / 2E) sqrt(l + R).
TimeBound basic_confidence_bound(std::size_t n_sets, std::size_t support_size, double energy);

/// Pairwise-disjoint sets: y >= 1/sqrt(l + R),  T <= (pi / 2E) sqrt(l + R).
TimeBound disjoint_bound(std::size_t support_size, double energy);

enum class BoundKind { kBasicConfidence, kDisjoint, kUnstructuredBaseline };
const char* to_string(BoundKind kind) noexcept;

struct BoundReport {
  std::string scenario_id;
  double y = 0.0;
  double time = 0.0;         // pi / (2Ey)
  double bound_value = 0.0;  // upper bound on the time
  BoundKind bound_kind = BoundKind::kBasicConfidence;
  bool satisfied = false;    // time <= bound_value + 1e-9
  double margin = 0.0;       // bound_value - time
};

BoundReport check_basic_confidence(const SearchScenario& scenario, const StatePrep& prep, std::string id = {});
BoundReport check_disjoint(const SearchScenario& scenario, const StatePrep& prep, std::string id = {});

/// Normalization-constant bounds for a scenario:
///   sum_j k_j alpha_j^2 <= nu^2 <= l + R, sum_j alpha_j^2 >= 1/n, and for
///   disjoint sets nu^2 <= (l + R) sum_j alpha_j^2.
struct NuBoundCheck {
  double nu_squared = 0.0;
  double lower = 0.0;          // sum_j k_j alpha_j^2
  double upper = 0.0;          // l + R
  double weight_square_sum = 0.0;
  double inverse_set_count = 0.0;
  std::optional<double> disjoint_upper;  // (l + R) sum alpha_j^2, disjoint only
  bool satisfied = false;
};

NuBoundCheck check_nu_bounds(const SearchScenario& scenario, const StatePrep& prep);

struct MisplacedPoint {
  double alpha2 = 0.0;
  double nu = 0.0;
  double y = 0.0;
  double time = 0.0;
};

/// T subset of A1, T disjoint from A2, |T| = l, |A1| = n1, |A2| = n2,
/// |A1 cap A2| = n12, weights (1 - alpha2, alpha2). Closed-form nu, y, T.
std::vector<MisplacedPoint> misplaced_confidence_curve(std::size_t l, std::size_t n1, std::size_t n2,
                                                       std::size_t n12, std::span<const double> alpha2_grid,
                                                       double energy);

/// A concrete scenario with the structure above (items numbered targets first,
/// then the rest of A1 alone, then A1 cap A2, then A2 alone).
SearchScenario misplaced_scenario(std::size_t l, std::size_t n1, std::size_t n2, std::size_t n12, double alpha2,
                                  double energy = 1.0);

/// First t > 0 where the residual amplitude of the full N-dimensional
/// evolution vanishes, located by sign change and bisection of
/// Im(<r|psi> conj(<w~|psi>)). Independent of the closed-form T.
double simulated_first_residual_zero(const SearchScenario& scenario, double tolerance = 1e-13);

struct ComparisonReport {
  double y_structured = 0.0;
  double y_unstructured = 0.0;
  double t_structured = 0.0;
  double t_unstructured = 0.0;
  double speedup = 0.0;     // t_unstructured / t_structured
  double time_ratio = 0.0;  // t_structured / t_unstructured
  ConfidenceReport confidence;
  std::size_t support_size = 0;
  double support_exponent = 0.0;  // log(l + R) / log(N); 0 when N == 1
  BoundReport baseline;           // structured time against the unstructured time
};

ComparisonReport compare_structured_unstructured(const SearchScenario& scenario);

enum class SuiteMode { kBasic, kDisjoint, kMisplaced };
const char* to_string(SuiteMode mode) noexcept;

struct SuiteOptions {
  std::size_t min_items = 8;
  std::size_t max_items = 256;
  std::size_t max_sets = 6;
  std::size_t max_support = 0;   // 0: no limit beyond N
  bool uniform_weights = false;
  std::optional<double> alpha2;  // misplaced mode; random in [0.5, 0.99] if unset
  double energy = 1.0;
};

/// Deterministic random scenarios with the structural guarantee of `mode`.
/// Throws ValidationError when the options make the mode infeasible.
std::vector<SearchScenario> random_scenario_suite(std::uint64_t seed, std::size_t count, SuiteMode mode,
                                                  const SuiteOptions& options = {});

}  // namespace qsearch
