#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qsearch/database.hpp"
#include "qsearch/reduced_dynamics.hpp"
#include "qsearch/state_prep.hpp"

namespace qsearch {

/// Brute-force N-dimensional engine used to verify the two-dimensional
/// reduction. Not used by the estimation pipeline.

inline constexpr std::size_t kDefaultDimensionCap = 4096;

struct FullState {
  Eigen::VectorXcd amplitudes;
};

/// H = E * P_targets + E |s><s|, with |s> the prepared amplitude sequence.
Eigen::MatrixXcd full_hamiltonian(const SearchScenario& scenario, const StatePrep& prep,
                                  std::size_t dimension_cap = kDefaultDimensionCap);

FullState initial_full_state(const StatePrep& prep);

/// Caches the Hermitian eigendecomposition of H so that many times can be
/// evaluated cheaply. Throws ValidationError if H is not Hermitian within 1e-12.
class FullPropagator {
 public:
  explicit FullPropagator(const Eigen::MatrixXcd& hamiltonian);

  FullState evolve(const FullState& initial, double t) const;
  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  Eigen::MatrixXcd eigenvectors_;
  Eigen::VectorXd eigenvalues_;
};

FullState full_evolve(const Eigen::MatrixXcd& hamiltonian, const FullState& initial, double t);

struct PlaneProjection {
  ReducedState reduced;     // (<w~|psi>, <r|psi>)
  double orthogonal_norm;   // ||(I - P_V) psi||
};

PlaneProjection project_onto_plane(const StatePrep& prep, const FullState& state);

/// max over the grid of ||(I - P_V) exp(-iHt)|s>||.
double invariant_subspace_residual(const SearchScenario& scenario, const StatePrep& prep,
                                   std::span<const double> t_grid);

/// `points` evenly spaced times over [0, 2T].
std::vector<double> default_time_grid(double y, double energy, std::size_t points = 64);

struct VerificationReport {
  std::size_t n_items = 0;
  double y = 0.0;
  double optimal_time = 0.0;
  std::size_t grid_points = 0;
  double subspace_residual = 0.0;      // max ||(I - P_V) psi(t)||
  double reduced_deviation = 0.0;      // max |projected full - closed form| over a and b
  double energy_drift = 0.0;           // max |<H>(t) - <H>(0)|
  double norm_drift = 0.0;             // max | ||psi(t)|| - 1 |
  double outside_support_max = 0.0;    // max |psi_i(t)| over items outside supp(beta) and T
  std::array<double, 2> plane_eigenvalues{};  // eigenvalues of P_V H P_V, descending
  double spectrum_error = 0.0;         // vs E(1 + y), E(1 - y)
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
};

VerificationReport verify_reduction(const SearchScenario& scenario, const StatePrep& prep,
                                    std::size_t grid_points = 64,
                                    std::size_t dimension_cap = kDefaultDimensionCap);

}  // namespace qsearch
