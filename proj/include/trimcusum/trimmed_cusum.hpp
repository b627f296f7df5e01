#pragma once

// Modulus trimming and the trimmed CUSUM process.
//
// The trim threshold eta is the d-th largest |X_j| and the indicator is
// inclusive (|X_j| <= eta), so with distinct moduli exactly d - 1 observations
// are zeroed and ties at the threshold are all kept.

#include <cstddef>
#include <span>
#include <vector>

namespace trimcusum {

using Sample = std::vector<double>;

/// max(2, floor(n^0.3)).
std::size_t default_trim_depth(std::size_t n);

/// d-th largest of |values|, duplicates occupying consecutive ranks.
double trim_threshold(std::span<const double> values, std::size_t d);

struct TrimmedSample {
  std::vector<double> values;
  std::size_t d = 0;
  double eta = 0.0;
  std::vector<bool> kept;
  double xbar = 0.0;      ///< (1/n) sum of kept values
  double a_hat_sq = 0.0;  ///< sum of (X_j 1{kept} - xbar)^2
  double sigma_hat = 0.0; ///< sqrt(a_hat_sq / n)

  std::size_t size() const noexcept { return values.size(); }
  std::size_t trimmed_count() const noexcept;
  /// X_j 1{|X_j| <= eta}.
  std::vector<double> terms() const;
};

TrimmedSample trim(std::span<const double> values, std::size_t d);

/// Tied-down partial-sum path points[k] = S_k - (k/n) S_n, k = 0..n.
struct CusumPath {
  std::vector<double> points;
  double sup_abs = 0.0;
  /// Smallest k in [1, n-1] attaining sup_abs (0 when n < 2).
  std::size_t argmax_k = 0;

  std::size_t length() const noexcept { return points.empty() ? 0 : points.size() - 1; }
};

CusumPath cusum_path(std::span<const double> terms);

/// Self-normalized statistic sup_k |T_n(k/n)| / (sigma_hat sqrt(n)).
/// Throws DegenerateSampleError when sigma_hat = 0.
double test_statistic(std::span<const double> values, std::size_t d);

/// Statistic together with the pieces it was built from.
struct TrimmedCusum {
  TrimmedSample trimmed;
  CusumPath path;
  double statistic = 0.0;
};

TrimmedCusum evaluate(std::span<const double> values, std::size_t d);

/// CUSUM path of X_j 1{|X_j| <= threshold} for a deterministic threshold.
CusumPath truncated_cusum_path(std::span<const double> values, double threshold);

/// max_k |trimmed path - truncated path|.
double trim_trunc_gap(std::span<const double> values, std::size_t d, double threshold);

/// max_k |sum_{j<=k} [X_j (1{|X_j| <= eta} - 1{|X_j| <= threshold}) - m_at_eta]|.
/// With m_at_eta = 0 this is the uncentered partial-sum gap.
double centered_gap_process(std::span<const double> values, std::size_t d, double threshold,
                            double m_at_eta);

struct ChangeLocation {
  std::size_t index = 1;
  /// True when the path is identically zero and `index` carries no information.
  bool degenerate = false;
};

/// argmax estimator of a single change; ties go to the smaller index.
ChangeLocation locate_change(const CusumPath& path);

namespace detail {

/// Allocation-light statistic used by the Monte Carlo kernels. `scratch` is
/// resized as needed. Returns NaN instead of throwing on a degenerate sample.
double statistic_nothrow(std::span<const double> values, std::size_t d,
                         std::vector<double>& scratch) noexcept;

/// cusum_path(terms).sup_abs without materializing the path.
double cusum_sup(std::span<const double> terms) noexcept;

}  // namespace detail

}  // namespace trimcusum
