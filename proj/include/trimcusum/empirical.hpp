#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace trimcusum {

/// 1-based rank ceil(count * level) used for all empirical quantiles.
std::size_t ceiling_rank(std::size_t count, double level);

/// Order statistic of rank ceil(count * level); always an element of `values`.
double empirical_quantile(std::span<const double> values, double level);

/// As above on already sorted input.
double sorted_quantile(std::span<const double> sorted, double level);

/// Half-width of the distribution-free binomial interval around the
/// level-quantile: (x_(u) - x_(l)) / 2 with l, u = ceil(B p -+ sqrt(B p (1-p))).
double quantile_standard_error(std::span<const double> sorted, double level);

/// sqrt(p (1 - p) / count).
double binomial_standard_error(double p, std::size_t count);

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  /// Unbiased sample variance; absent for fewer than two values.
  std::optional<double> variance;
};

Moments moments(std::span<const double> values);

/// Median (average of the two middle order statistics for even counts).
double median(std::span<const double> values);

/// Kolmogorov-Smirnov distance between the empirical CDF of `values` and N(0,1).
double ks_to_normal(std::span<const double> values);

}  // namespace trimcusum
