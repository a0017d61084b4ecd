#include "qsearch/counting.hpp"

#include <algorithm>

#include "qsearch/error.hpp"
#include "qsearch/rng.hpp"

namespace qsearch {

std::size_t minimum_counting_register(std::size_t support_size) {
  if (support_size < 1) throw ValidationError("counting: support size must be at least 1");
  std::size_t m = 2;
  while (m < 4 * support_size) m *= 2;
  return m;
}

SearchScenario counting_scenario(const SearchScenario& scenario) {
  auto sets = disjointify(scenario.info_sets(), DisjointWeights::kUniform);
  const auto t = scenario.targets();
  return SearchScenario::create(scenario.n_items(), {t.begin(), t.end()}, std::move(sets), scenario.energy())
      .with_labels({scenario.labels().begin(), scenario.labels().end()});
}

CountResult count_targets(const SearchScenario& scenario, const CountingOptions& options) {
  if (options.n_samples == 0) throw ValidationError("counting: n_samples must be positive");
  SearchScenario disjoint = counting_scenario(scenario);
  const std::size_t support = disjoint.support().size();
  const std::size_t minimum = minimum_counting_register(support);

  std::size_t m_size = options.m_size;
  if (m_size == 0) {
    m_size = std::max(kDefaultRegisterSize, minimum);
  } else if (!is_power_of_two(m_size)) {
    throw ValidationError("counting: register size must be a power of two");
  } else if (m_size < minimum) {
    throw ValidationError("counting: register size " + std::to_string(m_size) + " is below 4(l+R) = " +
                          std::to_string(4 * support) + "; use at least " + std::to_string(minimum));
  }

  const StatePrep prep = weighted_superposition(disjoint);
  const CounterRng root(options.seed);
  std::vector<std::size_t> samples =
      sample_phase_register(prep.y, m_size, options.n_samples, root.split("register").key());
  const BranchVerifier verifier =
      make_oracle_verifier(disjoint, prep, options.verification_shots, root.split("verify").key());
  PhaseEstimate estimate = estimate_y(samples, m_size, verifier);
  const std::size_t count = estimate_count(estimate.y_hat, support);
  return CountResult{std::move(disjoint), support, m_size, std::move(samples), std::move(estimate), count};
}

}  // namespace qsearch
