#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsearch/efficiency.hpp"
#include "qsearch/error.hpp"
#include "qsearch/reduced_dynamics.hpp"

using namespace qsearch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
constexpr double kPi = std::numbers::pi;

TEST_CASE("basic_confidence_bound", "[efficiency]") {
  auto b = basic_confidence_bound(1, 1, 1.0);
  CHECK(b.y_lower == 1.0);
  CHECK_THAT(b.t_upper, WithinAbs(kPi / 2, 1e-15));
  b = basic_confidence_bound(2, 4, 1.0);
  CHECK_THAT(b.y_lower, WithinAbs(0.35355339059327373, 1e-12));
  CHECK_THAT(b.t_upper, WithinAbs(4.442882938158366, 1e-12));
  CHECK_THAT(basic_confidence_bound(4, 100, 1.0).t_upper, WithinAbs(10 * kPi, 1e-12));
  CHECK_THAT(basic_confidence_bound(1, 1, 2.0).t_upper, WithinAbs(kPi / 4, 1e-15));
}

TEST_CASE("disjoint_bound", "[efficiency]") {
  CHECK_THAT(disjoint_bound(1, 1.0).t_upper, WithinAbs(kPi / 2, 1e-15));
  CHECK_THAT(disjoint_bound(6, 1.0).t_upper, WithinAbs(3.847649490485164, 1e-12));
  const auto s = SearchScenario::create(6, {0, 1, 2}, {{{0, 1, 3}, 0.5, ""}, {{2, 4, 5}, 0.5, ""}});
  const auto prep = weighted_superposition(s);
  CHECK_THAT(prep.y, WithinAbs(std::sqrt(0.5), 1e-12));
  const auto r = check_disjoint(s, prep, "l3r3");
  CHECK_THAT(r.time, WithinAbs(2.221441469079183, 1e-12));
  CHECK(r.satisfied);
  CHECK(r.bound_kind == BoundKind::kDisjoint);
  CHECK(r.scenario_id == "l3r3");
  for (std::size_t n : {1u, 2u, 5u}) {
    CHECK_THAT(basic_confidence_bound(n, 6, 1.0).t_upper / disjoint_bound(6, 1.0).t_upper,
               WithinAbs(std::sqrt(static_cast<double>(n)), 1e-12));
  }
}

TEST_CASE("misplaced_confidence_curve", "[efficiency]") {
  const std::vector<double> grid{0.8};
  const auto p = misplaced_confidence_curve(1, 2, 1, 0, grid, 1.0).front();
  CHECK_THAT(p.nu, WithinAbs(std::sqrt(0.72), 1e-12));
  CHECK_THAT(p.y, WithinAbs(0.235702260395515841, 1e-12));
  CHECK_THAT(p.time, WithinAbs(6.66432440723754937, 1e-10));

  SECTION("agrees with the state prepared from the concrete scenario") {
    const auto s = misplaced_scenario(1, 2, 1, 0, 0.8);
    CHECK(s.n_items() == 3);
    CHECK_THAT(weighted_superposition(s).y, WithinAbs(p.y, 1e-12));
    const auto s2 = misplaced_scenario(2, 5, 4, 2, 0.3);
    const std::vector<double> g2{0.3};
    CHECK_THAT(weighted_superposition(s2).y, WithinAbs(misplaced_confidence_curve(2, 5, 4, 2, g2, 1.0)[0].y, 1e-12));
  }
  SECTION("small alpha2 approaches the A1-only overlap") {
    const std::vector<double> tiny{1e-9};
    CHECK_THAT(misplaced_confidence_curve(2, 5, 3, 0, tiny, 1.0)[0].y, WithinAbs(std::sqrt(2.0 / 5.0), 1e-8));
  }
  SECTION("divergence near alpha2 = 1") {
    std::vector<double> g;
    for (double a = 0.8; a < 0.9995; a += 0.001) g.push_back(a);
    g.push_back(0.999);
    const auto curve = misplaced_confidence_curve(1, 2, 1, 0, g, 1.0);
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) CHECK(curve[i].time > curve[i - 1].time);
    const std::vector<double> ends{0.5, 0.999};
    const auto e = misplaced_confidence_curve(1, 2, 1, 0, ends, 1.0);
    CHECK_THAT(e[0].time, WithinAbs(2.7206990463513265, 1e-9));
    CHECK(e[1].time / e[0].time > 100.0);
  }
  SECTION("T(alpha2) >= T(0) when the sets are disjoint") {
    std::vector<double> g;
    for (int i = 1; i < 100; ++i) g.push_back(i / 100.0);
    const double t0 = kPi / (2.0 * std::sqrt(1.0 / 3.0));
    for (const auto& q : misplaced_confidence_curve(1, 3, 4, 0, g, 1.0)) CHECK(q.time >= t0 - 1e-12);
  }
  SECTION("errors") {
    const std::vector<double> bad{1.0};
    CHECK_THROWS_AS(misplaced_confidence_curve(1, 2, 1, 0, bad, 1.0), ValidationError);
    const std::vector<double> ok{0.5};
    CHECK_THROWS_AS(misplaced_confidence_curve(2, 2, 1, 1, ok, 1.0), ValidationError);
    CHECK_THROWS_AS(misplaced_confidence_curve(1, 2, 1, 0, ok, 0.0), ValidationError);
  }
}

TEST_CASE("simulated first residual zero matches the closed-form time", "[efficiency]") {
  for (double a2 : {0.5, 0.8, 0.95}) {
    const auto s = misplaced_scenario(1, 2, 1, 0, a2);
    const std::vector<double> g{a2};
    const double t = misplaced_confidence_curve(1, 2, 1, 0, g, 1.0)[0].time;
    CHECK_THAT(simulated_first_residual_zero(s), WithinAbs(t, 1e-6));
  }
  const auto s = misplaced_scenario(1, 3, 2, 1, 0.6, 2.5);
  CHECK_THAT(simulated_first_residual_zero(s), WithinAbs(optimal_time(weighted_superposition(s).y, 2.5), 1e-6));
}

TEST_CASE("compare_structured_unstructured", "[efficiency]") {
  SECTION("single exact set over 1024 items") {
    const auto s = SearchScenario::create(1024, {5}, {{{5}, 1.0, ""}});
    const auto r = compare_structured_unstructured(s);
    CHECK_THAT(r.speedup, WithinAbs(32.0, 1e-12));
    CHECK_THAT(r.time_ratio, WithinAbs(1.0 / 32.0, 1e-12));
    CHECK(r.support_exponent == 0.0);
    CHECK(r.baseline.satisfied);
  }
  SECTION("overlapping example") {
    const auto s = SearchScenario::create(8, {0, 1}, {{{0, 1, 2}, 0.6, ""}, {{1, 3}, 0.4, ""}});
    const auto r = compare_structured_unstructured(s);
    CHECK_THAT(r.time_ratio, WithinAbs(0.5878675, 1e-6));
    CHECK(r.confidence.kind == Confidence::kBasic);
    CHECK(r.support_size == 4);
    CHECK_THAT(r.support_exponent, WithinAbs(2.0 / 3.0, 1e-12));
  }
  SECTION("misplaced weight makes the structured search slower") {
    const auto r = compare_structured_unstructured(misplaced_scenario(1, 2, 1, 0, 0.95));
    CHECK(r.time_ratio > 1.0);
    CHECK_THAT(r.time_ratio, WithinRel(11.0, 0.01));
    CHECK(r.confidence.kind == Confidence::kNotBasic);
    CHECK_FALSE(r.baseline.satisfied);
  }
}

TEST_CASE("random_scenario_suite structural guarantees", "[efficiency][property]") {
  const auto basic = random_scenario_suite(1, 100, SuiteMode::kBasic);
  REQUIRE(basic.size() == 100);
  for (const auto& s : basic) {
    CHECK(classify_confidence(s).kind == Confidence::kBasic);
    CHECK(s.n_items() >= 8);
    CHECK(s.n_items() <= 256);
    CHECK(s.set_count() <= 6);
    const auto prep = weighted_superposition(s);
    CHECK(prep.y >= basic_confidence_bound(s.set_count(), s.support().size(), 1.0).y_lower - 1e-12);
    CHECK(check_basic_confidence(s, prep).satisfied);
    CHECK(check_nu_bounds(s, prep).satisfied);
  }
  for (const auto& s : random_scenario_suite(2, 100, SuiteMode::kDisjoint)) {
    CHECK(pairwise_disjoint(s.info_sets()));
    CHECK(classify_confidence(s).kind == Confidence::kBasic);
    const auto prep = weighted_superposition(s);
    CHECK(prep.y >= disjoint_bound(s.support().size(), 1.0).y_lower - 1e-12);
    const auto nu = check_nu_bounds(s, prep);
    CHECK(nu.disjoint_upper.has_value());
    CHECK(nu.satisfied);
  }
  for (const auto& s : random_scenario_suite(3, 100, SuiteMode::kMisplaced)) {
    CHECK(classify_confidence(s).kind == Confidence::kNotBasic);
    CHECK(check_nu_bounds(s, weighted_superposition(s)).satisfied);
  }
  SuiteOptions fixed;
  fixed.alpha2 = 0.9;
  for (const auto& s : random_scenario_suite(4, 10, SuiteMode::kMisplaced, fixed)) {
    CHECK(s.info_sets().back().weight == Catch::Approx(0.9));
  }
}

TEST_CASE("random_scenario_suite determinism and errors", "[efficiency]") {
  const auto a = random_scenario_suite(9, 5, SuiteMode::kBasic);
  const auto b = random_scenario_suite(9, 5, SuiteMode::kBasic);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n_items() == b[i].n_items());
    CHECK(std::vector<ItemIndex>(a[i].targets().begin(), a[i].targets().end()) ==
          std::vector<ItemIndex>(b[i].targets().begin(), b[i].targets().end()));
  }
  CHECK_THROWS_AS(random_scenario_suite(1, 0, SuiteMode::kBasic), ValidationError);
  SuiteOptions bad;
  bad.min_items = 10;
  bad.max_items = 5;
  CHECK_THROWS_AS(random_scenario_suite(1, 3, SuiteMode::kDisjoint, bad), ValidationError);
}

TEST_CASE("nu bounds on fixed examples", "[efficiency]") {
  const auto s = SearchScenario::create(8, {0, 1}, {{{0, 1, 2}, 0.6, ""}, {{1, 3}, 0.4, ""}});
  const auto c = check_nu_bounds(s, weighted_superposition(s));
  CHECK_THAT(c.nu_squared, WithinAbs(1.88, 1e-12));
  CHECK_THAT(c.lower, WithinAbs(3 * 0.36 + 2 * 0.16, 1e-12));
  CHECK(c.upper == 4.0);
  CHECK_FALSE(c.disjoint_upper.has_value());
  CHECK(c.satisfied);
}
