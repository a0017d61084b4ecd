#include "qsearch/state_prep.hpp"

#include <cmath>
#include <numeric>

#include "qsearch/error.hpp"

namespace qsearch {

namespace {

StatePrep decompose(const SearchScenario& scenario, std::vector<double> raw) {
  double norm_sq = 0.0;
  for (double a : raw) norm_sq += a * a;
  if (!(norm_sq > 0.0)) throw ValidationError("state prep: amplitude sequence is identically zero");

  StatePrep prep;
  prep.n_items = scenario.n_items();
  prep.nu = std::sqrt(norm_sq);
  prep.beta = std::move(raw);
  for (double& b : prep.beta) b /= prep.nu;

  std::vector<bool> is_target(prep.n_items, false);
  for (ItemIndex t : scenario.targets()) is_target[t] = true;

  double target_mass = 0.0;
  double residual_mass = 0.0;
  for (ItemIndex i = 0; i < prep.n_items; ++i) {
    const double b = prep.beta[i];
    if (is_target[i]) {
      prep.target_items.push_back(i);
      target_mass += b * b;
    } else if (b > 0.0) {
      prep.residual_items.push_back(i);
      residual_mass += b * b;
    }
  }
  prep.r_count = prep.residual_items.size();
  // Renormalize the two masses jointly so y^2 + (1 - y^2) is exact to rounding.
  const double total = target_mass + residual_mass;
  prep.y = std::sqrt(target_mass / total);
  if (!(prep.y > 0.0)) throw ValidationError("state prep: initial state has no overlap with the targets");

  const double y = std::sqrt(target_mass);
  const double rn = std::sqrt(residual_mass);
  for (ItemIndex i : prep.target_items) prep.target_coeffs.emplace_back(prep.beta[i] / y, 0.0);
  for (ItemIndex i : prep.residual_items) prep.residual_coeffs.emplace_back(prep.beta[i] / rn, 0.0);
  return prep;
}

}  // namespace

double StatePrep::residual_norm() const noexcept {
  double mass = 0.0;
  for (ItemIndex i : residual_items) mass += beta[i] * beta[i];
  double target = 0.0;
  for (ItemIndex i : target_items) target += beta[i] * beta[i];
  const double total = mass + target;
  return total > 0.0 ? std::sqrt(mass / total) : 0.0;
}

StatePrep weighted_superposition(const SearchScenario& scenario) {
  std::vector<double> raw(scenario.n_items(), 0.0);
  for (const auto& set : scenario.info_sets()) {
    for (ItemIndex m : set.members) raw[m] += set.weight;
  }
  return decompose(scenario, std::move(raw));
}

StatePrep uniform_superposition(const SearchScenario& scenario) {
  return decompose(scenario, std::vector<double>(scenario.n_items(), 1.0));
}

}  // namespace qsearch
