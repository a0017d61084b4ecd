#include "qsearch/full_simulator.hpp"

#include <algorithm>
#include <cmath>

#include "qsearch/error.hpp"

namespace qsearch {

Eigen::MatrixXcd full_hamiltonian(const SearchScenario& scenario, const StatePrep& prep,
                                  std::size_t dimension_cap) {
  const std::size_t n = scenario.n_items();
  if (n > dimension_cap) {
    throw ValidationError("full simulator: N = " + std::to_string(n) + " exceeds the dimension cap " +
                          std::to_string(dimension_cap));
  }
  if (prep.beta.size() != n) throw ValidationError("full simulator: state prep does not match scenario size");
  const double e = scenario.energy();
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::VectorXd beta(dim);
  for (Eigen::Index i = 0; i < dim; ++i) beta(i) = prep.beta[static_cast<std::size_t>(i)];

  Eigen::MatrixXcd h = (e * beta * beta.transpose()).cast<cplx>();
  for (ItemIndex t : scenario.targets()) h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) += e;
  return h;
}

FullState initial_full_state(const StatePrep& prep) {
  FullState s;
  s.amplitudes = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(prep.beta.size()));
  for (std::size_t i = 0; i < prep.beta.size(); ++i) s.amplitudes(static_cast<Eigen::Index>(i)) = prep.beta[i];
  return s;
}

FullPropagator::FullPropagator(const Eigen::MatrixXcd& hamiltonian) {
  if (hamiltonian.rows() != hamiltonian.cols()) throw ValidationError("full simulator: Hamiltonian must be square");
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  const double asym = (hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) throw ValidationError("full simulator: Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
  if (solver.info() != Eigen::Success) throw InternalError("full simulator: eigendecomposition failed");
  eigenvectors_ = solver.eigenvectors();
  eigenvalues_ = solver.eigenvalues();
}

FullState FullPropagator::evolve(const FullState& initial, double t) const {
  if (initial.amplitudes.size() != eigenvalues_.size()) throw ValidationError("full simulator: state dimension mismatch");
  Eigen::VectorXcd coeffs = eigenvectors_.adjoint() * initial.amplitudes;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::polar(1.0, -eigenvalues_(k) * t);
  return FullState{eigenvectors_ * coeffs};
}

FullState full_evolve(const Eigen::MatrixXcd& hamiltonian, const FullState& initial, double t) {
  return FullPropagator(hamiltonian).evolve(initial, t);
}

PlaneProjection project_onto_plane(const StatePrep& prep, const FullState& state) {
  PlaneProjection out{};
  for (std::size_t j = 0; j < prep.target_items.size(); ++j) {
    out.reduced.a += std::conj(prep.target_coeffs[j]) * state.amplitudes(static_cast<Eigen::Index>(prep.target_items[j]));
  }
  for (std::size_t j = 0; j < prep.residual_items.size(); ++j) {
    out.reduced.b +=
        std::conj(prep.residual_coeffs[j]) * state.amplitudes(static_cast<Eigen::Index>(prep.residual_items[j]));
  }
  // Subtract the in-plane component explicitly rather than via norms, which
  // would lose everything below sqrt(eps).
  Eigen::VectorXcd rest = state.amplitudes;
  for (std::size_t j = 0; j < prep.target_items.size(); ++j) {
    rest(static_cast<Eigen::Index>(prep.target_items[j])) -= out.reduced.a * prep.target_coeffs[j];
  }
  for (std::size_t j = 0; j < prep.residual_items.size(); ++j) {
    rest(static_cast<Eigen::Index>(prep.residual_items[j])) -= out.reduced.b * prep.residual_coeffs[j];
  }
  out.orthogonal_norm = rest.norm();
  return out;
}

std::vector<double> default_time_grid(double y, double energy, std::size_t points) {
  if (points < 2) throw ValidationError("time grid: need at least 2 points");
  const double end = 2.0 * optimal_time(y, energy);
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = end * static_cast<double>(i) / static_cast<double>(points - 1);
  return grid;
}

double invariant_subspace_residual(const SearchScenario& scenario, const StatePrep& prep,
                                   std::span<const double> t_grid) {
  const FullPropagator propagator(full_hamiltonian(scenario, prep));
  const FullState s = initial_full_state(prep);
  double worst = 0.0;
  for (double t : t_grid) worst = std::max(worst, project_onto_plane(prep, propagator.evolve(s, t)).orthogonal_norm);
  return worst;
}

VerificationReport verify_reduction(const SearchScenario& scenario, const StatePrep& prep, std::size_t grid_points,
                                    std::size_t dimension_cap) {
  const double e = scenario.energy();
  const Eigen::MatrixXcd h = full_hamiltonian(scenario, prep, dimension_cap);
  const FullPropagator propagator(h);
  const FullState s = initial_full_state(prep);

  VerificationReport rep;
  rep.n_items = scenario.n_items();
  rep.y = prep.y;
  rep.optimal_time = optimal_time(prep.y, e);
  rep.grid_points = grid_points;
  rep.min_eigenvalue = propagator.eigenvalues().minCoeff();
  rep.max_eigenvalue = propagator.eigenvalues().maxCoeff();

  std::vector<bool> silent(scenario.n_items(), true);
  for (ItemIndex i : prep.target_items) silent[i] = false;
  for (ItemIndex i : prep.residual_items) silent[i] = false;

  const double energy0 = (s.amplitudes.adjoint() * h * s.amplitudes)(0).real();
  for (double t : default_time_grid(prep.y, e, grid_points)) {
    const FullState psi = propagator.evolve(s, t);
    const PlaneProjection proj = project_onto_plane(prep, psi);
    const ReducedState closed = evolve_state(prep, e, t);
    rep.subspace_residual = std::max(rep.subspace_residual, proj.orthogonal_norm);
    rep.reduced_deviation =
        std::max({rep.reduced_deviation, std::abs(proj.reduced.a - closed.a), std::abs(proj.reduced.b - closed.b)});
    const double energy_t = (psi.amplitudes.adjoint() * h * psi.amplitudes)(0).real();
    rep.energy_drift = std::max(rep.energy_drift, std::abs(energy_t - energy0));
    rep.norm_drift = std::max(rep.norm_drift, std::abs(psi.amplitudes.norm() - 1.0));
    for (std::size_t i = 0; i < silent.size(); ++i) {
      if (silent[i]) rep.outside_support_max = std::max(rep.outside_support_max, std::abs(psi.amplitudes(static_cast<Eigen::Index>(i))));
    }
  }

  // Restrict H to the plane and compare its spectrum with E(1 +- y).
  auto embed = [&](bool target_direction) {
    FullState v;
    v.amplitudes = Eigen::VectorXcd::Zero(h.rows());
    const auto& items = target_direction ? prep.target_items : prep.residual_items;
    const auto& coeffs = target_direction ? prep.target_coeffs : prep.residual_coeffs;
    for (std::size_t j = 0; j < items.size(); ++j) v.amplitudes(static_cast<Eigen::Index>(items[j])) = coeffs[j];
    return v.amplitudes;
  };
  const Eigen::VectorXcd w = embed(true);
  Eigen::Matrix2cd hv = Eigen::Matrix2cd::Zero();
  hv(0, 0) = (w.adjoint() * h * w)(0);
  if (!prep.residual_items.empty()) {
    const Eigen::VectorXcd r = embed(false);
    hv(0, 1) = (w.adjoint() * h * r)(0);
    hv(1, 0) = (r.adjoint() * h * w)(0);
    hv(1, 1) = (r.adjoint() * h * r)(0);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> plane(hv);
    rep.plane_eigenvalues = {plane.eigenvalues()(1), plane.eigenvalues()(0)};
    rep.spectrum_error = std::max(std::abs(rep.plane_eigenvalues[0] - e * (1.0 + prep.y)),
                                  std::abs(rep.plane_eigenvalues[1] - e * (1.0 - prep.y)));
  } else {
    // y = 1: the plane degenerates to the single direction |w~> with eigenvalue 2E.
    rep.plane_eigenvalues = {hv(0, 0).real(), 0.0};
    rep.spectrum_error = std::abs(rep.plane_eigenvalues[0] - 2.0 * e);
  }
  return rep;
}

}  // namespace qsearch
