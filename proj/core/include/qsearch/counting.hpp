#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsearch/database.hpp"
#include "qsearch/phase_estimation.hpp"
#include "qsearch/state_prep.hpp"

namespace qsearch {

/// Smallest power of two M with M >= 4 * support_size. With that resolution a
/// readout within 1/M of y rounds back to the exact count.
std::size_t minimum_counting_register(std::size_t support_size);

/// Overlapping sets replaced by their disjoint, uniformly weighted version.
SearchScenario counting_scenario(const SearchScenario& scenario);

struct CountingOptions {
  std::size_t m_size = 0;  // 0 selects max(64, minimum_counting_register)
  std::size_t n_samples = 50;
  std::uint64_t seed = 0;
  std::size_t verification_shots = kDefaultVerificationShots;
};

struct CountResult {
  SearchScenario scenario;  // disjointified, uniform weights
  std::size_t support_size = 0;
  std::size_t m_size = 0;
  std::vector<std::size_t> samples;
  PhaseEstimate estimate;
  std::size_t count = 0;
};

/// Estimate the number of targets. The register readouts come from the
/// simulated device; branch verification only queries the oracle.
/// Throws ValidationError when an explicit m_size is below the minimum.
CountResult count_targets(const SearchScenario& scenario, const CountingOptions& options);

}  // namespace qsearch
