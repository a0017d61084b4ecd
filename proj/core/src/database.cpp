#include "qsearch/database.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qsearch/error.hpp"

namespace qsearch {

namespace {

void sort_unique(std::vector<ItemIndex>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool contains(const std::vector<ItemIndex>& sorted, ItemIndex item) {
  return std::binary_search(sorted.begin(), sorted.end(), item);
}

}  // namespace

SearchScenario SearchScenario::create(std::size_t n_items, std::vector<ItemIndex> targets,
                                      std::vector<InformationSet> info_sets, double energy,
                                      WeightPolicy policy) {
  if (n_items == 0) throw ValidationError("scenario: n_items must be positive");
  if (!(energy > 0.0) || !std::isfinite(energy)) throw ValidationError("scenario: energy must be positive and finite");

  sort_unique(targets);
  if (targets.empty()) throw ValidationError("scenario: target set must be nonempty (l >= 1)");
  if (targets.back() >= n_items) {
    throw ValidationError("scenario: target index " + std::to_string(targets.back()) + " out of range [0, " +
                          std::to_string(n_items) + ")");
  }

  if (info_sets.empty()) throw ValidationError("scenario: at least one information set is required");
  double weight_sum = 0.0;
  for (std::size_t j = 0; j < info_sets.size(); ++j) {
    auto& set = info_sets[j];
    sort_unique(set.members);
    if (set.members.empty()) throw ValidationError("scenario: information set " + std::to_string(j) + " is empty");
    if (set.members.back() >= n_items) {
      throw ValidationError("scenario: information set " + std::to_string(j) + " has member " +
                            std::to_string(set.members.back()) + " out of range");
    }
    if (!(set.weight > 0.0) || !std::isfinite(set.weight)) {
      throw ValidationError("scenario: information set " + std::to_string(j) + " must have a positive weight");
    }
    weight_sum += set.weight;
  }

  bool renormalized = false;
  if (std::abs(weight_sum - 1.0) > 1e-12) {
    if (policy == WeightPolicy::kStrict) {
      std::ostringstream os;
      os.precision(17);
      os << "scenario: weights sum to " << weight_sum << ", expected 1 within 1e-12";
      throw ValidationError(os.str());
    }
    for (auto& set : info_sets) set.weight /= weight_sum;
    renormalized = true;
  }

  if (!validate_coverage(targets, info_sets)) {
    throw ValidationError("scenario: coverage violated, some target lies outside every information set");
  }

  SearchScenario s;
  s.n_items_ = n_items;
  s.targets_ = std::move(targets);
  s.info_sets_ = std::move(info_sets);
  s.energy_ = energy;
  s.weights_renormalized_ = renormalized;
  return s;
}

std::vector<ItemIndex> SearchScenario::support() const {
  std::vector<ItemIndex> out;
  for (const auto& set : info_sets_) out.insert(out.end(), set.members.begin(), set.members.end());
  sort_unique(out);
  return out;
}

SearchScenario SearchScenario::with_energy(double energy) const {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw ValidationError("scenario: energy must be positive and finite");
  SearchScenario copy = *this;
  copy.energy_ = energy;
  return copy;
}

SearchScenario SearchScenario::with_labels(std::vector<std::string> labels) const {
  if (!labels.empty() && labels.size() != n_items_) {
    throw ValidationError("scenario: labels must be empty or have exactly n_items entries");
  }
  SearchScenario copy = *this;
  copy.labels_ = std::move(labels);
  return copy;
}

int oracle_eval(const SearchScenario& scenario, ItemIndex item) {
  if (item >= scenario.n_items()) {
    throw ValidationError("oracle_eval: item " + std::to_string(item) + " out of range");
  }
  const auto t = scenario.targets();
  return std::binary_search(t.begin(), t.end(), item) ? 1 : 0;
}

bool validate_coverage(std::span<const ItemIndex> targets, std::span<const InformationSet> info_sets) {
  std::set<ItemIndex> covered;
  for (const auto& set : info_sets) covered.insert(set.members.begin(), set.members.end());
  return std::all_of(targets.begin(), targets.end(), [&](ItemIndex t) { return covered.count(t) > 0; });
}

bool validate_coverage(const SearchScenario& scenario) {
  return validate_coverage(scenario.targets(), scenario.info_sets());
}

ConfidenceReport classify_confidence(std::span<const ItemIndex> targets, std::span<const InformationSet> info_sets) {
  if (!validate_coverage(targets, info_sets)) {
    throw ValidationError("classify_confidence: coverage violated");
  }
  std::vector<ItemIndex> sorted_targets(targets.begin(), targets.end());
  sort_unique(sorted_targets);

  ConfidenceReport report;
  report.intersections.reserve(info_sets.size());
  for (const auto& set : info_sets) {
    std::vector<ItemIndex> members = set.members;
    sort_unique(members);
    std::size_t hits = 0;
    for (ItemIndex m : members) hits += contains(sorted_targets, m) ? 1 : 0;
    report.intersections.push_back(hits);
    if (hits == 0) report.kind = Confidence::kNotBasic;
  }
  return report;
}

ConfidenceReport classify_confidence(const SearchScenario& scenario) {
  return classify_confidence(scenario.targets(), scenario.info_sets());
}

const char* to_string(Confidence c) noexcept { return c == Confidence::kBasic ? "BASIC" : "NOT_BASIC"; }

bool pairwise_disjoint(std::span<const InformationSet> info_sets) {
  std::set<ItemIndex> seen;
  for (const auto& set : info_sets) {
    std::set<ItemIndex> local(set.members.begin(), set.members.end());
    for (ItemIndex m : local) {
      if (!seen.insert(m).second) return false;
    }
  }
  return true;
}

}  // namespace qsearch
