#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "trimcusum/parallel.hpp"
#include "trimcusum/resampling.hpp"

namespace trimcusum {

enum class CriticalValueMethod { asymptotic, resampled };

std::string to_string(CriticalValueMethod method);

struct TestReport {
  std::size_t n = 0;
  std::size_t d = 0;
  double statistic = 0.0;
  double critical_value = 0.0;
  double level = 0.0;
  /// statistic > critical_value.
  bool reject = false;
  /// Estimated change: the last observation before the shift (1-based).
  std::size_t change_at = 1;
  bool change_degenerate = false;
  CriticalValueMethod method = CriticalValueMethod::asymptotic;
  /// Resampling details when method == resampled.
  CriticalValueEstimate resampled;
};

/// Test against the Brownian-bridge limit.
TestReport asymptotic_test(std::span<const double> values, std::size_t d, double level);

/// Test against a bootstrap / permutation critical value.
TestReport resampled_test(std::span<const double> values, std::size_t d, const ResamplePlan& plan,
                          const Execution& exec = {});

}  // namespace trimcusum
