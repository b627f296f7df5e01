#pragma once

// Bootstrap and permutation critical values for the trimmed CUSUM statistic.
//
// Resampling acts on the trimmed, centered observations
//   x_j = X_j 1{|X_j| <= eta} - xbar,
// never on the raw sample. Replicate b draws from counter stream b of the
// plan's seed (resampling domain), so results do not depend on evaluation
// order or thread count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trimcusum/parallel.hpp"
#include "trimcusum/trimmed_cusum.hpp"

namespace trimcusum {

enum class ResampleMode {
  with_replacement,     ///< bootstrap
  without_replacement,  ///< permutation when m = n
};

std::string to_string(ResampleMode mode);
/// Accepts "bootstrap"/"with_replacement" and "permutation"/"without_replacement".
ResampleMode resample_mode_from_string(const std::string& name);

struct ResamplePlan {
  /// Resample size; defaults to the sample size.
  std::optional<std::size_t> m;
  ResampleMode mode = ResampleMode::without_replacement;
  std::size_t replications = 2000;
  double level = 0.95;
  std::uint64_t seed = 0;

  std::size_t size_for(std::size_t n) const noexcept { return m.value_or(n); }
  /// Throws DomainError if the plan cannot be applied to a pool of n values.
  void validate(std::size_t n) const;
};

struct CriticalValueEstimate {
  double value = 0.0;
  double level = 0.0;
  std::size_t replications = 0;
  double standard_error = 0.0;
};

/// x_j = X_j 1{|X_j| <= eta} - xbar; sums to zero.
std::vector<double> trimmed_centered(std::span<const double> values, std::size_t d);

/// The m draws y_1..y_m of replicate `replicate_index`.
std::vector<double> resample(std::span<const double> pool, const ResamplePlan& plan,
                             std::size_t replicate_index);

/// CUSUM path of the replicate's draws.
CusumPath resampled_path(std::span<const double> pool, const ResamplePlan& plan,
                         std::size_t replicate_index);

/// sup |T_{m,n}| / (sigma_hat sqrt(m)) for every replicate, in replicate order.
std::vector<double> resampled_statistics(std::span<const double> values, std::size_t d,
                                         const ResamplePlan& plan, const Execution& exec = {});

/// Ceiling-rank empirical quantile of resampled_statistics.
CriticalValueEstimate resampled_critical_value(std::span<const double> values, std::size_t d,
                                               const ResamplePlan& plan,
                                               const Execution& exec = {});

}  // namespace trimcusum
