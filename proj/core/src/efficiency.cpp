#include "qsearch/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsearch/error.hpp"
#include "qsearch/full_simulator.hpp"
#include "qsearch/reduced_dynamics.hpp"
#include "qsearch/rng.hpp"

namespace qsearch {

namespace {

constexpr double kPi = std::numbers::pi;

void require_energy(double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw ValidationError("energy must be positive and finite");
}

std::vector<ItemIndex> random_permutation(std::size_t n, CounterRng& rng) {
  std::vector<ItemIndex> items(n);
  std::iota(items.begin(), items.end(), ItemIndex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(items[i - 1], items[rng.below(i)]);
  return items;
}

std::vector<double> random_weights(std::size_t n, bool uniform, CounterRng& rng) {
  std::vector<double> w(n, 1.0);
  if (!uniform) {
    for (double& v : w) v = 0.05 + 0.95 * rng.uniform();
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= total;
  return w;
}

SearchScenario random_basic(CounterRng& rng, const SuiteOptions& opt) {
  const std::size_t n_items = rng.between(opt.min_items, opt.max_items);
  const std::size_t cap = opt.max_support > 0 ? std::min(n_items, opt.max_support) : n_items;
  const std::size_t n_sets = rng.between(1, opt.max_sets);
  const std::size_t l = rng.between(1, std::max<std::size_t>(1, cap / 4));
  const std::size_t s = rng.between(l, std::max(l, cap / 2));
  const std::vector<ItemIndex> perm = random_permutation(n_items, rng);
  const std::vector<ItemIndex> pool(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(s));
  const std::vector<ItemIndex> targets(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(l));

  const auto weights = random_weights(n_sets, opt.uniform_weights, rng);
  std::vector<InformationSet> sets(n_sets);
  for (std::size_t j = 0; j < n_sets; ++j) {
    sets[j].weight = weights[j];
    sets[j].members.push_back(targets[rng.below(l)]);
    const std::size_t extra = rng.below(s);
    for (std::size_t e = 0; e < extra; ++e) sets[j].members.push_back(pool[rng.below(s)]);
  }
  for (ItemIndex t : targets) {
    const bool covered = std::any_of(sets.begin(), sets.end(), [&](const InformationSet& set) {
      return std::find(set.members.begin(), set.members.end(), t) != set.members.end();
    });
    if (!covered) sets[rng.below(n_sets)].members.push_back(t);
  }
  return SearchScenario::create(n_items, targets, std::move(sets), opt.energy);
}

SearchScenario random_disjoint(CounterRng& rng, const SuiteOptions& opt) {
  const std::size_t n_items = rng.between(opt.min_items, opt.max_items);
  const std::size_t cap = opt.max_support > 0 ? std::min(n_items, opt.max_support) : n_items;
  const std::size_t n_sets = rng.between(1, std::min(opt.max_sets, cap));
  const std::size_t l = rng.between(n_sets, std::max(n_sets, cap / 2));
  const std::size_t s = rng.between(l, cap);
  const std::vector<ItemIndex> perm = random_permutation(n_items, rng);

  const auto weights = random_weights(n_sets, opt.uniform_weights, rng);
  std::vector<InformationSet> sets(n_sets);
  for (std::size_t j = 0; j < n_sets; ++j) sets[j].weight = weights[j];
  // The first n_sets targets seed one set each, so every set meets T.
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t j = i < n_sets ? i : rng.below(n_sets);
    sets[j].members.push_back(perm[i]);
  }
  const std::vector<ItemIndex> targets(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(l));
  return SearchScenario::create(n_items, targets, std::move(sets), opt.energy);
}

SearchScenario random_misplaced(CounterRng& rng, const SuiteOptions& opt) {
  const std::size_t n_items = rng.between(opt.min_items, opt.max_items);
  const std::size_t l = rng.between(1, std::max<std::size_t>(1, n_items / 8));
  const std::size_t n1 = rng.between(l, std::max(l, n_items / 2));
  const std::size_t n12 = rng.between(0, n1 - l);
  const std::size_t a2_only = rng.between(n12 == 0 ? 1 : 0, std::max<std::size_t>(1, (n_items - n1) / 2));
  const double alpha2 = opt.alpha2.value_or(0.5 + 0.49 * rng.uniform());
  SearchScenario base = misplaced_scenario(l, n1, n12 + a2_only, n12, alpha2, opt.energy);

  // Scatter the structured layout over the database.
  const std::vector<ItemIndex> perm = random_permutation(n_items, rng);
  std::vector<ItemIndex> targets;
  for (ItemIndex t : base.targets()) targets.push_back(perm[t]);
  std::vector<InformationSet> sets(base.info_sets().begin(), base.info_sets().end());
  for (auto& set : sets) {
    for (auto& m : set.members) m = perm[m];
  }
  return SearchScenario::create(n_items, std::move(targets), std::move(sets), opt.energy);
}

}  // namespace

TimeBound basic_confidence_bound(std::size_t n_sets, std::size_t support_size, double energy) {
  if (n_sets < 1 || support_size < 1) throw ValidationError("basic_confidence_bound: n and l + R must be positive");
  require_energy(energy);
  const double n = static_cast<double>(n_sets);
  const double s = static_cast<double>(support_size);
  return {1.0 / std::sqrt(n * s), kPi * std::sqrt(n) / (2.0 * energy) * std::sqrt(s)};
}

TimeBound disjoint_bound(std::size_t support_size, double energy) {
  if (support_size < 1) throw ValidationError("disjoint_bound: l + R must be positive");
  require_energy(energy);
  const double s = static_cast<double>(support_size);
  return {1.0 / std::sqrt(s), kPi / (2.0 * energy) * std::sqrt(s)};
}

const char* to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::kBasicConfidence: return "BASIC_CONF";
    case BoundKind::kDisjoint: return "DISJOINT";
    case BoundKind::kUnstructuredBaseline: return "UNSTRUCTURED_BASELINE";
  }
  return "UNKNOWN";
}

namespace {

BoundReport make_time_report(std::string id, double y, double time, double bound, BoundKind kind) {
  BoundReport r;
  r.scenario_id = std::move(id);
  r.y = y;
  r.time = time;
  r.bound_value = bound;
  r.bound_kind = kind;
  r.satisfied = time <= bound + 1e-9;
  r.margin = bound - time;
  return r;
}

}  // namespace

BoundReport check_basic_confidence(const SearchScenario& scenario, const StatePrep& prep, std::string id) {
  const double e = scenario.energy();
  const TimeBound b = basic_confidence_bound(scenario.set_count(), scenario.support().size(), e);
  return make_time_report(std::move(id), prep.y, optimal_time(prep.y, e), b.t_upper, BoundKind::kBasicConfidence);
}

BoundReport check_disjoint(const SearchScenario& scenario, const StatePrep& prep, std::string id) {
  const double e = scenario.energy();
  const TimeBound b = disjoint_bound(scenario.support().size(), e);
  return make_time_report(std::move(id), prep.y, optimal_time(prep.y, e), b.t_upper, BoundKind::kDisjoint);
}

NuBoundCheck check_nu_bounds(const SearchScenario& scenario, const StatePrep& prep) {
  NuBoundCheck c;
  c.nu_squared = prep.nu * prep.nu;
  for (const auto& set : scenario.info_sets()) {
    c.lower += static_cast<double>(set.members.size()) * set.weight * set.weight;
    c.weight_square_sum += set.weight * set.weight;
  }
  const double support = static_cast<double>(scenario.support().size());
  c.upper = support;
  c.inverse_set_count = 1.0 / static_cast<double>(scenario.set_count());
  constexpr double tol = 1e-12;
  c.satisfied = c.lower <= c.nu_squared + tol && c.nu_squared <= c.upper + tol &&
                c.weight_square_sum >= c.inverse_set_count - tol;
  if (pairwise_disjoint(scenario.info_sets())) {
    c.disjoint_upper = support * c.weight_square_sum;
    c.satisfied = c.satisfied && c.nu_squared <= *c.disjoint_upper + tol;
  }
  return c;
}

namespace {

void check_misplaced_shape(std::size_t l, std::size_t n1, std::size_t n2, std::size_t n12) {
  if (l < 1) throw ValidationError("misplaced confidence: l must be at least 1");
  if (n12 > n1 || n12 > n2) throw ValidationError("misplaced confidence: n12 cannot exceed n1 or n2");
  if (l > n1 - n12) throw ValidationError("misplaced confidence: targets must fit in A1 outside A2");
  if (n2 < 1) throw ValidationError("misplaced confidence: A2 must be nonempty");
}

}  // namespace

std::vector<MisplacedPoint> misplaced_confidence_curve(std::size_t l, std::size_t n1, std::size_t n2,
                                                       std::size_t n12, std::span<const double> alpha2_grid,
                                                       double energy) {
  check_misplaced_shape(l, n1, n2, n12);
  require_energy(energy);
  std::vector<MisplacedPoint> out;
  out.reserve(alpha2_grid.size());
  for (double a2 : alpha2_grid) {
    if (!(a2 > 0.0 && a2 < 1.0)) throw ValidationError("misplaced confidence: alpha2 must lie in (0, 1)");
    const double a1 = 1.0 - a2;
    const double nu = std::sqrt(static_cast<double>(n1 - n12) * a1 * a1 + static_cast<double>(n12) +
                                static_cast<double>(n2 - n12) * a2 * a2);
    const double y = std::sqrt(static_cast<double>(l)) * a1 / nu;
    out.push_back({a2, nu, y, kPi / (2.0 * energy * y)});
  }
  return out;
}

SearchScenario misplaced_scenario(std::size_t l, std::size_t n1, std::size_t n2, std::size_t n12, double alpha2,
                                  double energy) {
  check_misplaced_shape(l, n1, n2, n12);
  if (!(alpha2 > 0.0 && alpha2 < 1.0)) throw ValidationError("misplaced confidence: alpha2 must lie in (0, 1)");
  const std::size_t n_items = n1 + n2 - n12;
  std::vector<ItemIndex> targets(l);
  std::iota(targets.begin(), targets.end(), ItemIndex{0});
  InformationSet a1{{}, 1.0 - alpha2, "A1"};
  InformationSet a2{{}, alpha2, "A2"};
  for (ItemIndex i = 0; i < n1; ++i) a1.members.push_back(i);
  for (ItemIndex i = n1 - n12; i < n_items; ++i) a2.members.push_back(i);
  return SearchScenario::create(n_items, std::move(targets), {std::move(a1), std::move(a2)}, energy);
}

double simulated_first_residual_zero(const SearchScenario& scenario, double tolerance) {
  const StatePrep prep = weighted_superposition(scenario);
  if (prep.residual_items.empty()) throw ValidationError("first residual zero: scenario has no residual component");
  const FullPropagator propagator(full_hamiltonian(scenario, prep));
  const FullState s = initial_full_state(prep);
  auto signal = [&](double t) {
    const PlaneProjection p = project_onto_plane(prep, propagator.evolve(s, t));
    return (p.reduced.b * std::conj(p.reduced.a)).imag();
  };

  // The residual zero cannot come before pi/(2E); march forward from there.
  const double e = scenario.energy();
  const double step = 0.01 / e;
  double lo = 0.0;
  double hi = kPi / (2.0 * e);
  if (signal(hi) > 0.0) {
    lo = hi;
    for (;;) {
      hi = lo + step;
      if (signal(hi) <= 0.0) break;
      lo = hi;
      if (lo > 1e9 / e) throw InternalError("first residual zero: no sign change found");
    }
  } else {
    // Only possible for y == 1 to rounding; refine from the origin.
    lo = step * 1e-3;
  }
  for (int it = 0; it < 200 && hi - lo > tolerance * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (signal(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ComparisonReport compare_structured_unstructured(const SearchScenario& scenario) {
  const double e = scenario.energy();
  ComparisonReport r;
  r.y_structured = weighted_superposition(scenario).y;
  r.y_unstructured = std::sqrt(static_cast<double>(scenario.target_count()) / static_cast<double>(scenario.n_items()));
  r.t_structured = optimal_time(r.y_structured, e);
  r.t_unstructured = optimal_time(r.y_unstructured, e);
  r.speedup = r.t_unstructured / r.t_structured;
  r.time_ratio = r.t_structured / r.t_unstructured;
  r.confidence = classify_confidence(scenario);
  r.support_size = scenario.support().size();
  r.support_exponent = scenario.n_items() > 1 ? std::log(static_cast<double>(r.support_size)) /
                                                    std::log(static_cast<double>(scenario.n_items()))
                                              : 0.0;
  r.baseline = make_time_report("", r.y_structured, r.t_structured, r.t_unstructured,
                                BoundKind::kUnstructuredBaseline);
  return r;
}

const char* to_string(SuiteMode mode) noexcept {
  switch (mode) {
    case SuiteMode::kBasic: return "BASIC";
    case SuiteMode::kDisjoint: return "DISJOINT";
    case SuiteMode::kMisplaced: return "MISPLACED";
  }
  return "UNKNOWN";
}

std::vector<SearchScenario> random_scenario_suite(std::uint64_t seed, std::size_t count, SuiteMode mode,
                                                  const SuiteOptions& options) {
  if (count < 1) throw ValidationError("scenario suite: count must be at least 1");
  if (options.min_items < 1 || options.min_items > options.max_items) {
    throw ValidationError("scenario suite: need 1 <= min_items <= max_items");
  }
  if (options.max_sets < 1) throw ValidationError("scenario suite: max_sets must be at least 1");
  if (mode == SuiteMode::kMisplaced && options.min_items < 2) {
    throw ValidationError("scenario suite: misplaced scenarios need at least 2 items");
  }
  if (options.alpha2 && !(*options.alpha2 > 0.0 && *options.alpha2 < 1.0)) {
    throw ValidationError("scenario suite: alpha2 must lie in (0, 1)");
  }
  const CounterRng root = CounterRng(seed).split(to_string(mode));
  std::vector<SearchScenario> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng = root.split(static_cast<std::uint64_t>(i));
    switch (mode) {
      case SuiteMode::kBasic: out.push_back(random_basic(rng, options)); break;
      case SuiteMode::kDisjoint: out.push_back(random_disjoint(rng, options)); break;
      case SuiteMode::kMisplaced: out.push_back(random_misplaced(rng, options)); break;
    }
  }
  return out;
}

}  // namespace qsearch
