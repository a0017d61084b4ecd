#include "qsearch/phase_estimation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "qsearch/error.hpp"
#include "qsearch/rng.hpp"

namespace qsearch {

namespace {

constexpr double kPi = std::numbers::pi;

void require_register_size(std::size_t m_size, const char* what) {
  if (!is_power_of_two(m_size)) {
    throw ValidationError(std::string(what) + ": register size M = " + std::to_string(m_size) +
                          " must be a power of two, at least 2");
  }
}

void require_overlap(double y) {
  if (!(y > 0.0 && y <= 1.0)) throw ValidationError("overlap parameter y must lie in (0, 1]");
}

std::vector<cplx> dft(std::span<const cplx> reg, double sign) {
  const std::size_t m = reg.size();
  require_register_size(m, "qft");
  std::vector<cplx> twiddle(m);
  for (std::size_t j = 0; j < m; ++j) {
    twiddle[j] = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m));
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  std::vector<cplx> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    cplx acc{};
    for (std::size_t x = 0; x < m; ++x) acc += reg[x] * twiddle[(k * x) % m];
    out[k] = acc * scale;
  }
  return out;
}

}  // namespace

bool is_power_of_two(std::size_t m) noexcept { return m >= 2 && std::has_single_bit(m); }

Mat2 walk_operator(double y, double energy) { return evolution_matrix(y, energy, 2.0 * kPi / energy); }

std::vector<cplx> AncillaState::component(int component) const {
  std::vector<cplx> out(m_size_);
  for (std::size_t m = 0; m < m_size_; ++m) out[m] = at(m, component);
  return out;
}

void AncillaState::set_component(int component, std::span<const cplx> values) {
  if (values.size() != m_size_) throw ValidationError("ancilla: component length mismatch");
  for (std::size_t m = 0; m < m_size_; ++m) at(m, component) = values[m];
}

double AncillaState::squared_norm() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return s;
}

std::vector<double> AncillaState::register_marginal() const {
  std::vector<double> p(m_size_);
  for (std::size_t m = 0; m < m_size_; ++m) p[m] = std::norm(at(m, 0)) + std::norm(at(m, 1));
  return p;
}

AncillaState build_psi1(double y, std::size_t m_size, double energy) {
  require_overlap(y);
  require_register_size(m_size, "build_psi1");
  const Mat2 q = walk_operator(y, energy);
  const Eigensystem eig = eigensystem(y, energy);
  const auto& x1 = eig.first.vector;
  const auto& x2 = eig.second.vector;
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_size));

  AncillaState psi(m_size);
  ReducedState v{cplx{y}, cplx{std::sqrt(std::max(0.0, 1.0 - y * y))}};
  for (std::size_t m = 0; m < m_size; ++m) {
    psi.at(m, 0) = scale * (x2[0] * v.a + x2[1] * v.b);
    psi.at(m, 1) = scale * (x1[0] * v.a + x1[1] * v.b);
    v = q * v;
  }
  return psi;
}

AncillaState build_psi1(const StatePrep& prep, std::size_t m_size, double energy) {
  return build_psi1(prep.y, m_size, energy);
}

std::vector<cplx> inverse_qft(std::span<const cplx> reg) { return dft(reg, -1.0); }
std::vector<cplx> forward_qft(std::span<const cplx> reg) { return dft(reg, +1.0); }

AncillaState apply_inverse_qft(const AncillaState& psi1) {
  AncillaState out(psi1.m_size());
  for (int c = 0; c < 2; ++c) out.set_component(c, inverse_qft(psi1.component(c)));
  return out;
}

double circle_distance(double y1, double y2) noexcept {
  const double x = y1 - y2;
  return std::abs(x - std::round(x));
}

double alpha_squared(double omega, std::size_t k, std::size_t m_size) {
  const double m = static_cast<double>(m_size);
  // |sin(pi M x)| and |sin(pi x)| only depend on x modulo 1 (M is an
  // integer), so work with the circle distance for accuracy.
  const double d = circle_distance(omega, static_cast<double>(k) / m);
  const double md = m * d;
  if (md < 1e-12) return 1.0;
  // omega on the register grid: every other outcome has exactly zero weight.
  if (std::abs(md - std::round(md)) < 1e-12) return 0.0;
  const double ratio = std::sin(kPi * m * d) / (m * std::sin(kPi * d));
  return ratio * ratio;
}

PhaseDistribution measurement_distribution(double y, std::size_t m_size) {
  require_overlap(y);
  require_register_size(m_size, "measurement_distribution");
  PhaseDistribution dist;
  dist.m_size = m_size;
  dist.y = y;
  dist.y_branch_weight = (1.0 - y) / 2.0;
  dist.complement_branch_weight = (1.0 + y) / 2.0;
  dist.given_y_branch.resize(m_size);
  dist.given_complement_branch.resize(m_size);
  dist.total.resize(m_size);
  for (std::size_t k = 0; k < m_size; ++k) {
    dist.given_y_branch[k] = alpha_squared(y, k, m_size);
    dist.given_complement_branch[k] = alpha_squared(1.0 - y, k, m_size);
    dist.total[k] = dist.y_branch_weight * dist.given_y_branch[k] +
                    dist.complement_branch_weight * dist.given_complement_branch[k];
  }
  return dist;
}

double conditional_window_probability(double omega, std::size_t m_size, double radius) {
  require_register_size(m_size, "conditional_window_probability");
  const double m = static_cast<double>(m_size);
  double p = 0.0;
  for (std::size_t k = 0; k < m_size; ++k) {
    if (circle_distance(omega, static_cast<double>(k) / m) <= radius / m + 1e-12) p += alpha_squared(omega, k, m_size);
  }
  return p;
}

std::vector<std::size_t> sample_phase_register(double y, std::size_t m_size, std::size_t n_samples,
                                               std::uint64_t seed) {
  if (n_samples == 0) throw ValidationError("sample_phase_register: n_samples must be positive");
  const PhaseDistribution dist = measurement_distribution(y, m_size);
  CounterRng rng(seed);
  std::vector<std::size_t> out(n_samples);
  for (auto& k : out) k = sample_index(dist.total, rng);
  return out;
}

const char* to_string(BranchRule rule) noexcept {
  switch (rule) {
    case BranchRule::kSymmetric: return "symmetric";
    case BranchRule::kBoundary: return "boundary";
    case BranchRule::kClusterWeight: return "cluster_weight";
    case BranchRule::kVerification: return "verification";
    case BranchRule::kFallback: return "fallback";
  }
  return "unknown";
}

PhaseEstimate estimate_y(std::span<const std::size_t> samples, std::size_t m_size, const BranchVerifier& verifier) {
  if (samples.empty()) throw ValidationError("estimate_y: no samples");
  require_register_size(m_size, "estimate_y");

  PhaseEstimate est;
  est.m_size = m_size;
  est.resolution = 1.0 / static_cast<double>(m_size);
  est.samples_used = samples.size();
  est.histogram.assign(m_size, 0);

  std::vector<std::size_t> folded(m_size / 2 + 1, 0);
  for (std::size_t k : samples) {
    if (k >= m_size) throw ValidationError("estimate_y: readout " + std::to_string(k) + " out of range");
    ++est.histogram[k];
    ++folded[std::min(k, m_size - k)];
    if (k > 0 && 2 * k < m_size) ++est.low_side;
    if (2 * k > m_size) ++est.high_side;
  }
  est.k_mode = static_cast<std::size_t>(std::distance(folded.begin(), std::max_element(folded.begin(), folded.end())));

  const double m = static_cast<double>(m_size);
  const double lo = static_cast<double>(est.k_mode) / m;
  const double hi = 1.0 - lo;
  est.y_candidates = {lo, hi};

  if (est.k_mode == 0) {
    est.y_hat = 1.0;
    est.rule = BranchRule::kBoundary;
    return est;
  }
  if (2 * est.k_mode == m_size) {
    est.y_hat = 0.5;
    est.rule = BranchRule::kSymmetric;
    return est;
  }

  const double n = static_cast<double>(samples.size());
  const double gap = std::abs(static_cast<double>(est.low_side) - static_cast<double>(est.high_side));
  const bool both_sides = est.low_side > 0 && est.high_side > 0;
  if (both_sides && gap >= 2.0 * std::sqrt(n)) {
    est.y_hat = est.low_side < est.high_side ? lo : hi;
    est.rule = BranchRule::kClusterWeight;
  } else if (verifier) {
    est.y_hat = verifier(std::min(lo, hi), std::max(lo, hi));
    if (est.y_hat != lo && est.y_hat != hi) throw InternalError("estimate_y: verifier returned a non-candidate");
    est.rule = BranchRule::kVerification;
  } else {
    est.y_hat = est.high_side < est.low_side ? hi : lo;
    est.rule = BranchRule::kFallback;
  }
  return est;
}

double success_probability(double y, double energy, double t) {
  const double theta = energy * y * t;
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  return sn * sn + y * y * c * c;
}

double discriminating_time(double low, double high, double energy) {
  if (!(low > 0.0 && low < high && high <= 1.0)) {
    throw ValidationError("discriminating_time: need 0 < low < high <= 1");
  }
  // Past a quarter beat the phase error from the 1/M resolution starts to
  // dominate, so the search stops there.
  constexpr int kSteps = 64;
  const double cap = kPi / (2.0 * energy * (high - low));
  double best_t = cap;
  double best_gap = -1.0;
  for (int i = 1; i <= kSteps; ++i) {
    const double t = cap * i / kSteps;
    const double gap = std::abs(success_probability(low, energy, t) - success_probability(high, energy, t));
    if (gap > best_gap + 1e-12) {
      best_gap = gap;
      best_t = t;
    }
  }
  return best_t;
}

BranchVerifier make_oracle_verifier(const SearchScenario& scenario, const StatePrep& prep, std::size_t shots,
                                    std::uint64_t seed) {
  if (shots == 0) throw ValidationError("verifier: shots must be positive");
  return [scenario, prep, shots, seed](double low, double high) -> double {
    if (!(low > 0.0)) return high;
    if (!(low < high)) return high;
    const double e = scenario.energy();
    const double t = discriminating_time(low, high, e);
    const SuccessDistribution dist = success_distribution(prep, e, t);
    CounterRng rng = CounterRng(seed).split(std::bit_cast<std::uint64_t>(low));
    std::size_t hits = 0;
    for (std::size_t s = 0; s < shots; ++s) {
      hits += static_cast<std::size_t>(oracle_eval(scenario, sample_index(dist.probability, rng)));
    }
    auto log_likelihood = [&](double y) {
      const double p = std::clamp(success_probability(y, e, t), 1e-12, 1.0 - 1e-12);
      const double h = static_cast<double>(hits);
      return h * std::log(p) + (static_cast<double>(shots) - h) * std::log1p(-p);
    };
    return log_likelihood(low) > log_likelihood(high) ? low : high;
  };
}

std::size_t estimate_count(double y_hat, std::size_t support_size) {
  if (support_size < 1) throw ValidationError("estimate_count: support size must be at least 1");
  if (!(y_hat >= 0.0 && y_hat <= 1.0)) throw ValidationError("estimate_count: y_hat must lie in [0, 1]");
  const double raw = std::round(y_hat * y_hat * static_cast<double>(support_size));
  return std::clamp<std::size_t>(static_cast<std::size_t>(raw), 1, support_size);
}

std::vector<InformationSet> disjointify(std::span<const InformationSet> info_sets, DisjointWeights weights) {
  std::set<ItemIndex> seen;
  std::vector<InformationSet> out;
  for (const auto& set : info_sets) {
    InformationSet kept{{}, set.weight, set.name};
    std::set<ItemIndex> local(set.members.begin(), set.members.end());
    for (ItemIndex m : local) {
      if (seen.insert(m).second) kept.members.push_back(m);
    }
    if (!kept.members.empty()) out.push_back(std::move(kept));
  }
  if (out.empty()) return out;
  if (weights == DisjointWeights::kUniform) {
    for (auto& s : out) s.weight = 1.0 / static_cast<double>(out.size());
  } else {
    double total = 0.0;
    for (const auto& s : out) total += s.weight;
    for (auto& s : out) s.weight /= total;
  }
  return out;
}

TailBoundReport tail_bound_report(double y, std::size_t m_size, std::span<const std::size_t> m_values) {
  require_overlap(y);
  require_register_size(m_size, "tail_bound_report");
  TailBoundReport rep;
  rep.y = y;
  rep.m_size = m_size;
  rep.all_satisfied = true;
  for (std::size_t mv : m_values) {
    if (mv <= 1) throw ValidationError("tail_bound_report: window multiplier m must exceed 1");
    TailBoundEntry e;
    e.m = mv;
    e.bound = 1.0 - 1.0 / (2.0 * static_cast<double>(mv - 1));
    e.y_branch_probability = conditional_window_probability(y, m_size, static_cast<double>(mv));
    e.complement_probability = conditional_window_probability(1.0 - y, m_size, static_cast<double>(mv));
    e.satisfied = e.y_branch_probability >= e.bound - 1e-12 && e.complement_probability >= e.bound - 1e-12;
    rep.all_satisfied = rep.all_satisfied && e.satisfied;
    rep.entries.push_back(e);
  }

  const double m = static_cast<double>(m_size);
  rep.pointwise_min_slack = std::numeric_limits<double>::max();
  for (std::size_t k = 0; k < m_size; ++k) {
    for (double omega : {y, 1.0 - y}) {
      const double d = circle_distance(omega, static_cast<double>(k) / m);
      if (d <= 1e-12) continue;
      const double bound = 1.0 / ((2.0 * m * d) * (2.0 * m * d));
      rep.pointwise_min_slack = std::min(rep.pointwise_min_slack, bound - alpha_squared(omega, k, m_size));
    }
  }
  rep.pointwise_satisfied = rep.pointwise_min_slack >= -1e-12;
  rep.all_satisfied = rep.all_satisfied && rep.pointwise_satisfied;
  return rep;
}

std::size_t qft_gate_count(std::size_t m_size) {
  require_register_size(m_size, "qft_gate_count");
  const auto n = static_cast<std::size_t>(std::countr_zero(m_size));
  return n * (n + 1) / 2;
}

}  // namespace qsearch
