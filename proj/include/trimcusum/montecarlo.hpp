#pragma once

// Seeded Monte Carlo experiments: null critical-value tables, power curves,
// finite-variance size, and the trimmed-vs-truncated diagnostics.
//
// Replicate r of an experiment with master seed s draws its observations from
// CounterStream(s, r), so every aggregate is a deterministic function of the
// spec and is bit-identical across backends and worker counts.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trimcusum/empirical.hpp"
#include "trimcusum/heavy_tail.hpp"
#include "trimcusum/parallel.hpp"
#include "trimcusum/trimmed_cusum.hpp"

namespace trimcusum {

/// How the trim depth is chosen for a sample size.
class TrimRule {
 public:
  /// max(2, floor(n^0.3)).
  static TrimRule pow03() { return TrimRule(std::nullopt); }
  static TrimRule fixed(std::size_t d) { return TrimRule(d); }

  std::size_t depth(std::size_t n) const;
  std::optional<std::size_t> fixed_depth() const noexcept { return fixed_; }

  friend bool operator==(const TrimRule&, const TrimRule&) = default;

 private:
  explicit TrimRule(std::optional<std::size_t> fixed) : fixed_(fixed) {}
  std::optional<std::size_t> fixed_;
};

struct SimulationSpec {
  TailModel model = TailModel::two_sided(1.5, 0.5);
  std::size_t n = 100;
  TrimRule d_rule = TrimRule::pow03();
  std::size_t replications = 100000;
  double level = 0.95;
  std::uint64_t master_seed = 0;

  std::size_t depth() const { return d_rule.depth(n); }
  void validate() const;
};

/// Observations after position `at` (1-based) carry mean `shift` until the next break.
struct Break {
  std::size_t at = 0;
  double shift = 0.0;
};

struct ChangeSpec {
  std::vector<Break> breaks;

  static ChangeSpec single(std::size_t at, double shift) { return {{Break{at, shift}}}; }
  /// Break positions strictly increasing within [1, n-1].
  void validate(std::size_t n) const;
  /// Mean offset of 0-based observation j.
  double offset_at(std::size_t j) const;
};

std::vector<double> default_shift_grid();

struct PowerSpec {
  SimulationSpec base;
  std::size_t change_at = 0;
  std::vector<double> shift_grid = default_shift_grid();
  double critical_value = 0.0;

  void validate() const;
};

/// Seed of the table row for sample size n (splitmix64 of master seed and n).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt);

/// Errors of replicate r under the null.
Sample generate_H0(const SimulationSpec& spec, std::size_t replicate);

/// Same error stream as generate_H0 with segment shifts added.
Sample generate_HA(const SimulationSpec& spec, const ChangeSpec& change, std::size_t replicate);

/// Trimmed CUSUM statistic of every null replicate, in replicate order.
std::vector<double> null_statistics(const SimulationSpec& spec, const Execution& exec = {});

struct CriticalValueRow {
  /// Sample size; empty for the asymptotic row.
  std::optional<std::size_t> n;
  std::size_t d = 0;
  double value = 0.0;
  double standard_error = 0.0;
};

/// One simulated row per n (seed derive_seed(master, n)) plus the n = infinity row.
std::vector<CriticalValueRow> critical_value_table(const SimulationSpec& spec,
                                                   std::span<const std::size_t> n_list,
                                                   const Execution& exec = {});

struct PowerPoint {
  double shift = 0.0;
  double rate = 0.0;
  double standard_error = 0.0;
};

std::vector<PowerPoint> power_curve(const PowerSpec& spec, const Execution& exec = {});

struct RejectionRate {
  double rate = 0.0;
  double standard_error = 0.0;
  double critical_value = 0.0;
  std::size_t replications = 0;
};

/// Gaussian data, default trimming, asymptotic critical value.
RejectionRate size_under_finite_variance(std::size_t n, std::size_t replications, double level,
                                         std::uint64_t seed, const Execution& exec = {});

/// Rejection rate of an arbitrary null spec against the asymptotic critical value.
RejectionRate asymptotic_size(const SimulationSpec& spec, const Execution& exec = {});

struct Example1Summary {
  Moments moments;
  double ks_to_normal = 0.0;
  std::vector<double> values;
};

/// n m(eta_{n,d}) / B_n per replicate for the one-sided law.
Example1Summary example1_diagnostic(std::size_t n, std::size_t d, std::size_t reps,
                                    std::uint64_t seed,
                                    const TailModel& model = TailModel::one_sided(1.5),
                                    const Execution& exec = {});

struct DivergenceSummary {
  /// Median of the randomly centered partial-sum gap over A_n.
  double median_centered = 0.0;
  /// Median of the uncentered partial-sum gap over A_n.
  double median_uncentered = 0.0;
  /// Median of the trimmed-vs-truncated CUSUM gap over A_n.
  double median_cusum_gap = 0.0;
  std::size_t replications = 0;
};

DivergenceSummary trim_trunc_divergence(std::size_t n, std::size_t d, std::size_t reps,
                                        std::uint64_t seed,
                                        const TailModel& model = TailModel::one_sided(1.5),
                                        const Execution& exec = {});

struct AnRatioSummary {
  double median = 0.0;
  std::size_t replications = 0;
};

/// Median of Ahat_n / A_n over null replicates.
AnRatioSummary an_ratio(const SimulationSpec& spec, const Execution& exec = {});

}  // namespace trimcusum
