#include "qsearch/reduced_dynamics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "qsearch/error.hpp"

namespace qsearch {

namespace {

void check_overlap(double y) {
  if (!(y > 0.0 && y <= 1.0)) throw ValidationError("overlap parameter y must lie in (0, 1]");
}

void check_energy(double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw ValidationError("energy must be positive and finite");
}

double complement(double y) { return std::sqrt(std::max(0.0, 1.0 - y * y)); }

}  // namespace

Mat2 Mat2::adjoint() const noexcept {
  return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

Mat2 Mat2::operator*(const Mat2& rhs) const noexcept {
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = (*this)(r, 0) * rhs(0, c) + (*this)(r, 1) * rhs(1, c);
  return out;
}

Mat2 Mat2::operator*(cplx s) const noexcept {
  Mat2 out = *this;
  for (auto& v : out.m) v *= s;
  return out;
}

ReducedState Mat2::operator*(const ReducedState& v) const noexcept {
  return {m[0] * v.a + m[1] * v.b, m[2] * v.a + m[3] * v.b};
}

double max_abs_diff(const Mat2& lhs, const Mat2& rhs) noexcept {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(lhs.m[i] - rhs.m[i]));
  return d;
}

Mat2 reduced_hamiltonian(double y, double energy) {
  check_overlap(y);
  check_energy(energy);
  const double off = y * complement(y);
  return Mat2{{cplx{energy * (1.0 + y * y)}, cplx{energy * off}, cplx{energy * off}, cplx{energy * (1.0 - y * y)}}};
}

Mat2 evolution_matrix(double y, double energy, double t) {
  check_overlap(y);
  check_energy(energy);
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("evolution time must be finite and nonnegative");
  const double theta = energy * y * t;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double rc = complement(y);
  const cplx i{0.0, 1.0};
  const Mat2 inner{{cplx{c, -y * s}, -rc * i * s, -rc * i * s, cplx{c, y * s}}};
  return inner * std::polar(1.0, -energy * t);
}

ReducedState evolve_state(double y, double energy, double t) {
  check_overlap(y);
  check_energy(energy);
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("evolution time must be finite and nonnegative");
  const double theta = energy * y * t;
  const cplx phase = std::polar(1.0, -energy * t);
  return {phase * cplx{y * std::cos(theta), -std::sin(theta)}, phase * (complement(y) * std::cos(theta))};
}

ReducedState evolve_state(const StatePrep& prep, double energy, double t) {
  return evolve_state(prep.y, energy, t);
}

double optimal_time(double y, double energy) {
  check_overlap(y);
  check_energy(energy);
  return std::numbers::pi / (2.0 * energy * y);
}

Eigensystem eigensystem(double y, double energy) {
  check_overlap(y);
  check_energy(energy);
  const double p = std::sqrt((1.0 + y) / 2.0);
  const double q = std::sqrt((1.0 - y) / 2.0);
  return {{{p, q}, energy * (1.0 + y)}, {{-q, p}, energy * (1.0 - y)}};
}

SuccessDistribution success_distribution(const StatePrep& prep, double energy, double t) {
  const ReducedState psi = evolve_state(prep, energy, t);
  SuccessDistribution out;
  out.probability.assign(prep.n_items, 0.0);
  const double pa = std::norm(psi.a);
  const double pb = std::norm(psi.b);
  const double total = pa + pb;
  out.target_mass = pa / total;
  out.failure_mass = pb / total;
  for (std::size_t j = 0; j < prep.target_items.size(); ++j) {
    out.probability[prep.target_items[j]] = out.target_mass * std::norm(prep.target_coeffs[j]);
  }
  for (std::size_t j = 0; j < prep.residual_items.size(); ++j) {
    out.probability[prep.residual_items[j]] = out.failure_mass * std::norm(prep.residual_coeffs[j]);
  }
  return out;
}

std::size_t sample_measurement(std::span<const double> distribution, std::uint64_t seed) {
  CounterRng rng(seed);
  return sample_index(distribution, rng);
}

std::size_t sample_measurement(std::span<const double> distribution, CounterRng& rng) {
  return sample_index(distribution, rng);
}

std::vector<TrajectoryPoint> trajectory(double y, double energy, std::size_t points, double t_end) {
  if (points < 2) throw ValidationError("trajectory: need at least 2 points");
  if (t_end <= 0.0) t_end = 2.0 * optimal_time(y, energy);
  std::vector<TrajectoryPoint> out;
  out.reserve(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = t_end * static_cast<double>(i) / static_cast<double>(points - 1);
    const ReducedState s = evolve_state(y, energy, t);
    out.push_back({t, s, std::norm(s.a)});
  }
  return out;
}

void write_trajectory_csv(std::ostream& os, std::span<const TrajectoryPoint> points) {
  const auto old_precision = os.precision(17);
  os << "t,re_a,im_a,re_b,im_b,success_prob\n";
  for (const auto& p : points) {
    os << p.t << ',' << p.state.a.real() << ',' << p.state.a.imag() << ',' << p.state.b.real() << ','
       << p.state.b.imag() << ',' << p.success_probability << '\n';
  }
  os.precision(old_precision);
}

}  // namespace qsearch
