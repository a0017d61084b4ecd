#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qsearch/database.hpp"
#include "qsearch/error.hpp"
#include "qsearch/full_simulator.hpp"
#include "qsearch/reduced_dynamics.hpp"
#include "qsearch/state_prep.hpp"
#include "test_support.hpp"

using namespace qsearch;
using Catch::Matchers::WithinAbs;
constexpr double kPi = std::numbers::pi;

namespace {

StatePrep overlapping_prep() {
  return weighted_superposition(
      SearchScenario::create(8, {0, 1}, {{{0, 1, 2}, 0.6, ""}, {{1, 3}, 0.4, ""}}));
}

const std::vector<double> kOverlaps{0.05, 0.235702, 0.5, 0.6, 0.850532, 0.99, 1.0};
const std::vector<double> kEnergies{0.5, 1.0, 2.0};
const std::vector<double> kTimes{0.0, 0.1, 1.0, 3.7, 25.0};

}  // namespace

TEST_CASE("reduced_hamiltonian", "[reduced]") {
  const Mat2 h1 = reduced_hamiltonian(1.0, 1.0);
  CHECK(max_abs_diff(h1, Mat2{{cplx{2.0}, cplx{}, cplx{}, cplx{}}}) < 1e-15);

  const Mat2 h = reduced_hamiltonian(0.6, 1.0);
  CHECK(max_abs_diff(h, Mat2{{cplx{1.36}, cplx{0.48}, cplx{0.48}, cplx{0.64}}}) < 1e-15);
  CHECK(max_abs_diff(reduced_hamiltonian(0.6, 2.0), h * cplx{2.0}) < 1e-15);
  CHECK(max_abs_diff(h, h.adjoint()) == 0.0);

  CHECK_THROWS_AS(reduced_hamiltonian(0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(reduced_hamiltonian(1.2, 1.0), ValidationError);
  CHECK_THROWS_AS(reduced_hamiltonian(0.5, -1.0), ValidationError);
}

TEST_CASE("evolution_matrix examples", "[reduced]") {
  CHECK(max_abs_diff(evolution_matrix(0.3, 1.0, 0.0), Mat2::identity()) < 1e-15);
  const Mat2 u = evolution_matrix(1.0, 1.0, kPi / 2);
  CHECK(max_abs_diff(u, Mat2{{cplx{-1.0}, cplx{}, cplx{}, cplx{1.0}}}) < 1e-15);
  CHECK_THROWS_AS(evolution_matrix(0.5, 1.0, -1.0), ValidationError);
}

TEST_CASE("closed-form propagator matches eigendecomposition exponential", "[reduced][oracle]") {
  for (double y : kOverlaps)
    for (double e : kEnergies)
      for (double t : kTimes) {
        const Mat2 closed = evolution_matrix(y, e, t);
        const Mat2 oracle = testing::expm_by_eigendecomposition(reduced_hamiltonian(y, e), t);
        INFO("y=" << y << " E=" << e << " t=" << t);
        CHECK(max_abs_diff(closed, oracle) < 1e-10);
      }
  // scipy.linalg.expm(-1j*H*1.0) for y=0.6, E=1
  const Mat2 u = evolution_matrix(0.6, 1.0, 1.0);
  CHECK(std::abs(u(0, 0) - cplx{0.16085258, -0.87754255}) < 1e-8);
  CHECK(std::abs(u(0, 1) - cplx{-0.38010421, -0.2440621}) < 1e-8);
  CHECK(std::abs(u(1, 1) - cplx{0.73100889, -0.51144939}) < 1e-8);
}

TEST_CASE("propagator properties", "[reduced][property]") {
  for (double y : kOverlaps)
    for (double e : kEnergies)
      for (double t : kTimes) {
        const Mat2 u = evolution_matrix(y, e, t);
        CHECK(max_abs_diff(u.adjoint() * u, Mat2::identity()) < 1e-12);
        const Mat2 split = evolution_matrix(y, e, t) * evolution_matrix(y, e, 0.77);
        CHECK(max_abs_diff(split, evolution_matrix(y, e, t + 0.77)) < 1e-10);

        const Eigensystem eig = eigensystem(y, e);
        for (const Eigenpair& p : {eig.first, eig.second}) {
          const ReducedState x{cplx{p.vector[0]}, cplx{p.vector[1]}};
          const ReducedState ux = u * x;
          const cplx phase = std::polar(1.0, -p.value * t);
          CHECK(std::abs(ux.a - phase * x.a) < 1e-12);
          CHECK(std::abs(ux.b - phase * x.b) < 1e-12);
        }
        CHECK_THAT(evolve_state(y, e, t).norm(), WithinAbs(1.0, 1e-12));
      }
}

TEST_CASE("evolve_state", "[reduced]") {
  const double y = 0.6;
  const ReducedState s0 = evolve_state(y, 1.0, 0.0);
  CHECK(std::abs(s0.a - cplx{0.6}) < 1e-15);
  CHECK(std::abs(s0.b - cplx{0.8}) < 1e-15);

  for (double yy : kOverlaps) {
    const double t_opt = optimal_time(yy, 1.3);
    const ReducedState s = evolve_state(yy, 1.3, t_opt);
    CHECK(std::abs(s.b) < 1e-12);
    CHECK_THAT(std::abs(s.a), WithinAbs(1.0, 1e-12));

    // matrix route
    for (double t : kTimes) {
      const ReducedState via_matrix =
          evolution_matrix(yy, 1.3, t) * ReducedState{cplx{yy}, cplx{std::sqrt(1 - yy * yy)}};
      const ReducedState direct = evolve_state(yy, 1.3, t);
      CHECK(std::abs(via_matrix.a - direct.a) < 1e-12);
      CHECK(std::abs(via_matrix.b - direct.b) < 1e-12);
    }
  }
}

TEST_CASE("evolve_state agrees with the full simulator projection", "[reduced][oracle]") {
  const auto scenario = SearchScenario::create(8, {0, 1}, {{{0, 1, 2}, 0.6, ""}, {{1, 3}, 0.4, ""}});
  const auto prep = weighted_superposition(scenario);
  const auto full = full_evolve(full_hamiltonian(scenario, prep), initial_full_state(prep), 1.0);
  const auto proj = project_onto_plane(prep, full);
  const auto closed = evolve_state(prep, 1.0, 1.0);
  CHECK(std::abs(proj.reduced.a - closed.a) < 1e-10);
  CHECK(std::abs(proj.reduced.b - closed.b) < 1e-10);
}

TEST_CASE("success probability is periodic with period pi/(Ey)", "[reduced][property]") {
  for (double y : kOverlaps)
    for (double t : kTimes) {
      const double period = kPi / (1.7 * y);
      CHECK_THAT(std::norm(evolve_state(y, 1.7, t).a), WithinAbs(std::norm(evolve_state(y, 1.7, t + period).a), 1e-10));
    }
}

TEST_CASE("optimal_time", "[reduced]") {
  CHECK_THAT(optimal_time(1.0, 1.0), WithinAbs(1.5707963267948966, 1e-15));
  CHECK_THAT(optimal_time(0.5, 1.0), WithinAbs(kPi, 1e-15));
  CHECK_THAT(optimal_time(0.235702260395515841, 1.0), WithinAbs(6.66432440723754937, 1e-12));
  CHECK(optimal_time(0.235702260395515841, 1.0) > optimal_time(0.5, 1.0));
  CHECK_THROWS_AS(optimal_time(0.0, 1.0), ValidationError);
}

TEST_CASE("eigensystem", "[reduced]") {
  const Eigensystem one = eigensystem(1.0, 1.0);
  CHECK_THAT(one.first.vector[0], WithinAbs(1.0, 1e-15));
  CHECK_THAT(one.first.vector[1], WithinAbs(0.0, 1e-15));
  CHECK_THAT(one.first.value, WithinAbs(2.0, 1e-15));
  CHECK_THAT(one.second.vector[1], WithinAbs(1.0, 1e-15));
  CHECK_THAT(one.second.value, WithinAbs(0.0, 1e-15));

  const Eigensystem e = eigensystem(0.6, 1.0);
  CHECK_THAT(e.first.vector[0], WithinAbs(0.894427190999916, 1e-12));
  CHECK_THAT(e.first.vector[1], WithinAbs(0.447213595499958, 1e-12));
  CHECK_THAT(e.first.value, WithinAbs(1.6, 1e-15));
  CHECK_THAT(e.second.value, WithinAbs(0.4, 1e-15));

  for (double y : kOverlaps) {
    const Eigensystem s = eigensystem(y, 2.0);
    const Mat2 h = reduced_hamiltonian(y, 2.0);
    for (const Eigenpair& p : {s.first, s.second}) {
      const ReducedState hx = h * ReducedState{cplx{p.vector[0]}, cplx{p.vector[1]}};
      CHECK(std::abs(hx.a - p.value * p.vector[0]) < 1e-12);
      CHECK(std::abs(hx.b - p.value * p.vector[1]) < 1e-12);
    }
    CHECK(std::abs(s.first.vector[0] * s.second.vector[0] + s.first.vector[1] * s.second.vector[1]) < 1e-12);
    // <X1|s> and <X2|s>
    const double rc = std::sqrt(1 - y * y);
    CHECK_THAT(s.first.vector[0] * y + s.first.vector[1] * rc, WithinAbs(std::sqrt((1 + y) / 2), 1e-12));
    CHECK_THAT(s.second.vector[0] * y + s.second.vector[1] * rc, WithinAbs(std::sqrt((1 - y) / 2), 1e-12));
  }
}

TEST_CASE("success_distribution", "[reduced]") {
  const auto prep = overlapping_prep();
  const double t = optimal_time(prep.y, 1.0);
  const auto d = success_distribution(prep, 1.0, t);
  CHECK(d.failure_mass < 1e-12);
  CHECK_THAT(d.probability[0], WithinAbs(0.36 / 1.36, 1e-12));
  CHECK_THAT(d.probability[1], WithinAbs(1.0 / 1.36, 1e-12));
  CHECK_THAT(d.probability[0], WithinAbs(0.264705882352941176, 1e-12));
  CHECK_THAT(d.probability[1], WithinAbs(0.735294117647058824, 1e-12));
  double sum = 0.0;
  for (double p : d.probability) sum += p;
  CHECK_THAT(sum, WithinAbs(1.0, 1e-12));

  const auto d0 = success_distribution(prep, 1.0, 0.0);
  CHECK_THAT(d0.target_mass, WithinAbs(prep.y * prep.y, 1e-12));
  CHECK_THAT(d0.probability[3], WithinAbs(prep.beta[3] * prep.beta[3], 1e-12));

  const auto single = weighted_superposition(SearchScenario::create(4, {2}, {{{2}, 1.0, ""}}));
  CHECK_THAT(success_distribution(single, 1.0, optimal_time(1.0, 1.0)).probability[2], WithinAbs(1.0, 1e-12));
}

TEST_CASE("sample_measurement", "[reduced]") {
  const std::vector<double> point{0, 0, 0, 1};
  for (std::uint64_t seed : {0ULL, 1ULL, 42ULL, 999ULL}) CHECK(sample_measurement(point, seed) == 3);

  const std::vector<double> coin{0.5, 0.5};
  int zeros = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) zeros += sample_measurement(coin, seed) == 0 ? 1 : 0;
  CHECK(zeros >= 4700);
  CHECK(zeros <= 5300);

  const std::vector<double> d{0.1, 0.2, 0.3, 0.4};
  CHECK(sample_measurement(d, 42) == sample_measurement(d, 42));
  CHECK_THROWS_AS(sample_measurement(std::vector<double>{0.3, 0.3}, 1), ValidationError);
}

TEST_CASE("trajectory CSV", "[reduced]") {
  const auto traj = trajectory(0.5, 1.0);
  REQUIRE(traj.size() == kDefaultTrajectoryPoints);
  CHECK_THAT(traj.back().t, WithinAbs(2 * kPi, 1e-12));
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  const std::string csv = os.str();
  CHECK(csv.rfind("t,re_a,im_a,re_b,im_b,success_prob\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(kDefaultTrajectoryPoints + 1));
}
