#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qsearch/rng.hpp"
#include "qsearch/state_prep.hpp"

namespace qsearch {

using cplx = std::complex<double>;

/// Coordinates (a, b) of a vector a|w~> + b|r> in the invariant plane.
struct ReducedState {
  cplx a;
  cplx b;

  double norm() const noexcept { return std::sqrt(std::norm(a) + std::norm(b)); }
};

/// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> m{};

  cplx& operator()(int r, int c) noexcept { return m[static_cast<std::size_t>(2 * r + c)]; }
  const cplx& operator()(int r, int c) const noexcept { return m[static_cast<std::size_t>(2 * r + c)]; }

  static Mat2 identity() noexcept { return Mat2{{cplx{1.0}, cplx{}, cplx{}, cplx{1.0}}}; }

  Mat2 adjoint() const noexcept;
  Mat2 operator*(const Mat2& rhs) const noexcept;
  Mat2 operator*(cplx s) const noexcept;
  ReducedState operator*(const ReducedState& v) const noexcept;
};

/// max_ij |A_ij - B_ij|
double max_abs_diff(const Mat2& lhs, const Mat2& rhs) noexcept;

/// E * [[1 + y^2, y sqrt(1 - y^2)], [y sqrt(1 - y^2), 1 - y^2]] in the
/// (|w~>, |r>) basis. Throws ValidationError unless 0 < y <= 1 and E > 0.
Mat2 reduced_hamiltonian(double y, double energy);

/// Closed-form propagator exp(-iHt) on the invariant plane, t >= 0.
Mat2 evolution_matrix(double y, double energy, double t);

/// psi(t) = exp(-iHt)|s> with |s> = (y, sqrt(1 - y^2)).
ReducedState evolve_state(double y, double energy, double t);
ReducedState evolve_state(const StatePrep& prep, double energy, double t);

/// First time at which the state lies entirely in the target subspace.
double optimal_time(double y, double energy);

struct Eigenpair {
  std::array<double, 2> vector;
  double value;
};

struct Eigensystem {
  Eigenpair first;   // eigenvalue E(1 + y)
  Eigenpair second;  // eigenvalue E(1 - y)
};

Eigensystem eigensystem(double y, double energy);

/// Item-level measurement statistics of psi(t).
struct SuccessDistribution {
  std::vector<double> probability;  // indexed by item
  double target_mass = 0.0;
  double failure_mass = 0.0;
};

SuccessDistribution success_distribution(const StatePrep& prep, double energy, double t);

/// Draw one item index; deterministic in the seed.
std::size_t sample_measurement(std::span<const double> distribution, std::uint64_t seed);
std::size_t sample_measurement(std::span<const double> distribution, CounterRng& rng);

struct TrajectoryPoint {
  double t;
  ReducedState state;
  double success_probability;  // |a(t)|^2
};

inline constexpr std::size_t kDefaultTrajectoryPoints = 256;

/// Uniform grid of `points` samples over [0, t_end]; t_end <= 0 selects 2T.
std::vector<TrajectoryPoint> trajectory(double y, double energy, std::size_t points = kDefaultTrajectoryPoints,
                                        double t_end = 0.0);

/// CSV with header `t,re_a,im_a,re_b,im_b,success_prob`.
void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryPoint> points);

}  // namespace qsearch
