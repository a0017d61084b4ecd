#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qsearch {

using ItemIndex = std::size_t;

/// A prescribed subset of the database together with its reliability weight.
struct InformationSet {
  std::vector<ItemIndex> members;
  double weight = 1.0;
  std::string name;  // metadata only
};

enum class WeightPolicy {
  /// Positive weights that do not sum to 1 are rescaled; the scenario records
  /// that it was renormalized.
  kNormalize,
  /// Weights must already sum to 1 within 1e-12.
  kStrict,
};

/// Unsorted database of N items, a hidden target set, the information sets
/// and the energy scale of the search Hamiltonian.
///
/// Invariants (enforced by create()):
///   * 1 <= |targets| <= N, every index in [0, N)
///   * every information set is nonempty with members in [0, N)
///   * weights are positive and sum to 1
///   * the targets are covered by the union of the information sets
///   * energy > 0
///
/// Targets and set members are stored sorted and deduplicated.
class SearchScenario {
 public:
  static SearchScenario create(std::size_t n_items, std::vector<ItemIndex> targets,
                               std::vector<InformationSet> info_sets, double energy = 1.0,
                               WeightPolicy policy = WeightPolicy::kNormalize);

  std::size_t n_items() const noexcept { return n_items_; }
  std::size_t target_count() const noexcept { return targets_.size(); }
  std::size_t set_count() const noexcept { return info_sets_.size(); }
  double energy() const noexcept { return energy_; }
  bool weights_renormalized() const noexcept { return weights_renormalized_; }

  /// Direct access to the hidden targets. Only state preparation and
  /// verification code may use this; estimation goes through oracle_eval.
  std::span<const ItemIndex> targets() const noexcept { return targets_; }
  std::span<const InformationSet> info_sets() const noexcept { return info_sets_; }
  std::span<const std::string> labels() const noexcept { return labels_; }

  /// Sorted union of all information sets (size l + R for a covering scenario).
  std::vector<ItemIndex> support() const;

  /// Copy with a different energy scale.
  SearchScenario with_energy(double energy) const;

  /// Attach item labels (empty, or exactly N entries).
  SearchScenario with_labels(std::vector<std::string> labels) const;

 private:
  SearchScenario() = default;

  std::size_t n_items_ = 0;
  std::vector<ItemIndex> targets_;
  std::vector<InformationSet> info_sets_;
  std::vector<std::string> labels_;
  double energy_ = 1.0;
  bool weights_renormalized_ = false;
};

/// Black-box predicate: 1 iff item is a target.
int oracle_eval(const SearchScenario& scenario, ItemIndex item);

/// True iff every target lies in at least one information set.
bool validate_coverage(std::span<const ItemIndex> targets, std::span<const InformationSet> info_sets);
bool validate_coverage(const SearchScenario& scenario);

enum class Confidence { kBasic, kNotBasic };

struct ConfidenceReport {
  Confidence kind = Confidence::kBasic;
  /// |A_j ∩ T| in information-set order.
  std::vector<std::size_t> intersections;
};

/// kBasic iff every information set intersects the target set. Throws
/// ValidationError when coverage fails.
ConfidenceReport classify_confidence(std::span<const ItemIndex> targets,
                                     std::span<const InformationSet> info_sets);
ConfidenceReport classify_confidence(const SearchScenario& scenario);

const char* to_string(Confidence c) noexcept;

/// True iff no item belongs to two information sets.
bool pairwise_disjoint(std::span<const InformationSet> info_sets);

}  // namespace qsearch
