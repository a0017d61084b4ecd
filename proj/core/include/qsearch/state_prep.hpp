#pragma once

#include <complex>
#include <vector>

#include "qsearch/database.hpp"

namespace qsearch {

/// Initial state |s> and its split into the target direction |w~> and the
/// residual direction |r>:  |s> = y |w~> + sqrt(1 - y^2) |r>.
///
/// All amplitudes are real and nonnegative; coefficient vectors are stored as
/// complex so they can be fed directly to the simulators.
struct StatePrep {
  std::size_t n_items = 0;
  std::vector<double> beta;  // per item, unit Euclidean norm
  double nu = 1.0;           // norm of the unnormalized amplitudes
  double y = 1.0;            // overlap with the target subspace, in (0, 1]
  std::size_t r_count = 0;   // non-target items with beta > 0

  std::vector<ItemIndex> target_items;  // sorted
  std::vector<std::complex<double>> target_coeffs;
  std::vector<ItemIndex> residual_items;  // sorted, empty when y == 1
  std::vector<std::complex<double>> residual_coeffs;

  /// sqrt(1 - y^2), computed from the residual mass.
  double residual_norm() const noexcept;
  std::size_t support_size() const noexcept { return target_items.size() + r_count; }
};

/// Weighted superposition: the unnormalized amplitude of item i is the sum of
/// the weights of the information sets containing it.
StatePrep weighted_superposition(const SearchScenario& scenario);

/// Uniform superposition over all N items (unstructured baseline).
StatePrep uniform_superposition(const SearchScenario& scenario);

}  // namespace qsearch
