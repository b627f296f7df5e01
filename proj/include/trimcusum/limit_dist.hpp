#pragma once

// Distribution of sup_{0<=t<=1} |B(t)| for a Brownian bridge B (Kolmogorov
// distribution), the asymptotic null law of the trimmed CUSUM statistic.

#include <cstddef>

namespace trimcusum {

struct SeriesEvaluation {
  double value = 0.0;
  std::size_t terms = 0;
  /// Alternating-series remainder bound: magnitude of the first omitted term.
  double error_bound = 0.0;
};

class BridgeSupDist {
 public:
  explicit BridgeSupDist(double series_tolerance = 1e-12, std::size_t max_terms = 100);

  double series_tolerance() const noexcept { return tolerance_; }
  std::size_t max_terms() const noexcept { return max_terms_; }

  /// P{sup|B| <= x} = 1 - 2 sum_{k>=1} (-1)^{k+1} exp(-2 k^2 x^2).
  ///
  /// Where the alternating series would need more than max_terms terms (small
  /// x) the Jacobi theta form sqrt(2 pi)/x sum exp(-(2k-1)^2 pi^2 / (8 x^2)) is
  /// used instead; it converges fastest exactly there.
  double cdf(double x) const;

  /// The alternating series alone, with its truncation data. Requires x > 0.
  SeriesEvaluation alternating_series(double x) const;

  /// The theta-function series alone. Requires x > 0.
  SeriesEvaluation theta_series(double x) const;

  /// x with cdf(x) = level. Bisection on [0, 5] followed by Newton polishing.
  double quantile(double level) const;

  /// d/dx cdf(x).
  double density(double x) const;

 private:
  double tolerance_;
  std::size_t max_terms_;
};

double sup_bridge_cdf(double x);
double sup_bridge_quantile(double level);

}  // namespace trimcusum
