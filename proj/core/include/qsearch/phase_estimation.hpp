#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qsearch/database.hpp"
#include "qsearch/reduced_dynamics.hpp"
#include "qsearch/state_prep.hpp"

namespace qsearch {

/// True iff m is 2^n for some n >= 1.
bool is_power_of_two(std::size_t m) noexcept;

/// Q = exp(-iH 2pi/E) on the invariant plane. Q X1 = e^{-i2pi y} X1 and
/// Q X2 = e^{+i2pi y} X2.
Mat2 walk_operator(double y, double energy);

/// Joint state of the M-level ancilla register and the invariant plane,
/// expressed in the eigenbasis: coefficient (m, 0) multiplies |m> (x) X2 and
/// (m, 1) multiplies |m> (x) X1. Carries the 1/sqrt(M) factor, so it is a unit
/// vector.
class AncillaState {
 public:
  AncillaState() = default;
  explicit AncillaState(std::size_t m_size) : m_size_(m_size), coeffs_(2 * m_size) {}

  std::size_t m_size() const noexcept { return m_size_; }
  cplx& at(std::size_t m, int component) { return coeffs_[2 * m + static_cast<std::size_t>(component)]; }
  const cplx& at(std::size_t m, int component) const { return coeffs_[2 * m + static_cast<std::size_t>(component)]; }

  /// Register amplitudes for one eigen-component (0 = X2, 1 = X1).
  std::vector<cplx> component(int component) const;
  void set_component(int component, std::span<const cplx> values);

  double squared_norm() const noexcept;

  /// P(k) = sum over components of |coeff(k, c)|^2.
  std::vector<double> register_marginal() const;

 private:
  std::size_t m_size_ = 0;
  std::vector<cplx> coeffs_;
};

/// sum_m |m> (x) Q^m |s> / sqrt(M), obtained by applying the walk operator
/// repeatedly and projecting on {X2, X1}.
AncillaState build_psi1(double y, std::size_t m_size, double energy = 1.0);
AncillaState build_psi1(const StatePrep& prep, std::size_t m_size, double energy = 1.0);

/// out[k] = M^{-1/2} sum_x in[x] e^{-i2pi kx/M}.
std::vector<cplx> inverse_qft(std::span<const cplx> reg);
/// out[k] = M^{-1/2} sum_x in[x] e^{+i2pi kx/M}.
std::vector<cplx> forward_qft(std::span<const cplx> reg);

/// Inverse QFT applied to the register of both components (Psi_2).
AncillaState apply_inverse_qft(const AncillaState& psi1);

/// |alpha_k(omega)|^2 = (sin(pi(M omega - k)) / (M sin(pi(omega - k/M))))^2,
/// equal to 1 at the removable singularity omega - k/M in Z.
double alpha_squared(double omega, std::size_t k, std::size_t m_size);

struct PhaseDistribution {
  std::size_t m_size = 0;
  double y = 0.0;
  double y_branch_weight = 0.0;           // (1 - y)/2, register collapses to |y~>
  double complement_branch_weight = 0.0;  // (1 + y)/2, register collapses to |(1-y)~>
  std::vector<double> given_y_branch;
  std::vector<double> given_complement_branch;
  std::vector<double> total;
};

PhaseDistribution measurement_distribution(double y, std::size_t m_size);

/// min over integers j of |y1 - y2 + j|, in [0, 0.5].
double circle_distance(double y1, double y2) noexcept;

/// P(d(omega, k/M) <= radius/M) under the conditional distribution of the
/// branch whose phase is omega.
double conditional_window_probability(double omega, std::size_t m_size, double radius);

/// i.i.d. register readouts, deterministic in the seed.
std::vector<std::size_t> sample_phase_register(double y, std::size_t m_size, std::size_t n_samples,
                                               std::uint64_t seed);

enum class BranchRule {
  kSymmetric,      // candidates coincide (k = M/2)
  kBoundary,       // k = 0: only y = 1 is admissible
  kClusterWeight,  // minority side of the register is the y branch
  kVerification,   // oracle-checked evolution at each candidate time
  kFallback,       // no verifier and clusters indistinguishable
};

const char* to_string(BranchRule rule) noexcept;

struct PhaseEstimate {
  std::size_t m_size = 0;
  std::size_t k_mode = 0;  // folded readout min(k, M - k) of the modal cluster
  std::pair<double, double> y_candidates{};  // {k/M, 1 - k/M}
  double y_hat = 0.0;
  double resolution = 0.0;  // 1/M
  std::size_t samples_used = 0;
  std::size_t low_side = 0;   // readouts with 0 < k < M/2
  std::size_t high_side = 0;  // readouts with k > M/2
  BranchRule rule = BranchRule::kFallback;
  std::vector<std::size_t> histogram;  // raw readout counts, length M
};

/// Decides which of two candidate overlaps (low < high) the device has.
/// Returns one of the two values.
using BranchVerifier = std::function<double(double low, double high)>;

/// Cluster readouts by the unordered pair {k/M, 1 - k/M} and pick the
/// member that is y. The y branch carries weight (1 - y)/2 <= (1 + y)/2, so
/// the side of the register with fewer readouts holds y. When the two sides
/// differ by less than 2/sqrt(n) of the samples, or only one side was seen,
/// the verifier (if given) decides.
PhaseEstimate estimate_y(std::span<const std::size_t> samples, std::size_t m_size,
                         const BranchVerifier& verifier = {});

/// Success probability sin^2(Eyt) + y^2 cos^2(Eyt) of the search started
/// from overlap y.
double success_probability(double y, double energy, double t);

/// Evolution time in (0, pi/(2E(high - low))] at which the two hypotheses
/// y = low and y = high predict the most different success probabilities.
double discriminating_time(double low, double high, double energy);

/// Verifier that evolves the prepared state for discriminating_time(low,
/// high), measures `shots` times, counts oracle hits and returns the
/// hypothesis with the larger binomial likelihood (ties go to high). Only the
/// oracle is used to judge the outcome.
BranchVerifier make_oracle_verifier(const SearchScenario& scenario, const StatePrep& prep, std::size_t shots,
                                    std::uint64_t seed);

inline constexpr std::size_t kDefaultVerificationShots = 64;
inline constexpr std::size_t kDefaultRegisterSize = 64;

/// round(y_hat^2 * support_size) clamped to [1, support_size].
std::size_t estimate_count(double y_hat, std::size_t support_size);

enum class DisjointWeights { kPreserve, kUniform };

/// Keep each item only in the lowest-index set containing it and drop sets
/// that become empty. Weights of surviving sets are renormalized to sum 1
/// (proportionally, or uniformly for counting).
std::vector<InformationSet> disjointify(std::span<const InformationSet> info_sets,
                                        DisjointWeights weights = DisjointWeights::kPreserve);

struct TailBoundEntry {
  std::size_t m = 0;
  double bound = 0.0;                  // 1 - 1/(2(m - 1))
  double y_branch_probability = 0.0;   // P(d(y, k/M) <= m/M | y branch)
  double complement_probability = 0.0; // P(d(1 - y, k/M) <= m/M | 1 - y branch)
  bool satisfied = false;
};

struct TailBoundReport {
  double y = 0.0;
  std::size_t m_size = 0;
  std::vector<TailBoundEntry> entries;
  /// Smallest slack of P(k | branch) <= 1/(2M d)^2 over all k with d > 0
  /// (negative means violated).
  double pointwise_min_slack = 0.0;
  bool pointwise_satisfied = false;
  bool all_satisfied = false;
};

TailBoundReport tail_bound_report(double y, std::size_t m_size, std::span<const std::size_t> m_values);

/// n(n + 1)/2 gates for an n-qubit QFT (n Hadamards, n(n - 1)/2 controlled phases).
std::size_t qft_gate_count(std::size_t m_size);

}  // namespace qsearch
