#include "trimcusum/limit_dist.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "trimcusum/errors.hpp"

namespace trimcusum {

namespace {

constexpr double kUpperBracket = 5.0;

// Smallest k with exp(-2 k^2 x^2) < tol.
double terms_needed(double x, double tol) {
  return std::sqrt(-std::log(tol) / 2.0) / x;
}

}  // namespace

BridgeSupDist::BridgeSupDist(double series_tolerance, std::size_t max_terms)
    : tolerance_(series_tolerance), max_terms_(max_terms) {
  if (!(series_tolerance > 0.0)) throw DomainError("series tolerance must be positive");
  if (max_terms < 1) throw DomainError("max_terms must be at least 1");
}

SeriesEvaluation BridgeSupDist::alternating_series(double x) const {
  if (!(x > 0.0)) throw DomainError("alternating_series requires x > 0");
  SeriesEvaluation out;
  const double x2 = x * x;
  double sum = 0.0;
  double sign = 1.0;
  std::size_t k = 1;
  for (; k <= max_terms_; ++k) {
    const double kd = static_cast<double>(k);
    const double term = std::exp(-2.0 * kd * kd * x2);
    if (term < tolerance_) break;
    sum += sign * term;
    sign = -sign;
  }
  const double next = static_cast<double>(k);
  out.terms = k - 1;
  out.error_bound = 2.0 * std::exp(-2.0 * next * next * x2);
  out.value = 1.0 - 2.0 * sum;
  return out;
}

SeriesEvaluation BridgeSupDist::theta_series(double x) const {
  if (!(x > 0.0)) throw DomainError("theta_series requires x > 0");
  SeriesEvaluation out;
  const double scale = std::sqrt(2.0 * std::numbers::pi) / x;
  const double rate = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
  double sum = 0.0;
  std::size_t k = 1;
  for (; k <= max_terms_; ++k) {
    const double odd = 2.0 * static_cast<double>(k) - 1.0;
    const double term = std::exp(-odd * odd * rate);
    if (scale * term < tolerance_) break;
    sum += term;
  }
  const double odd = 2.0 * static_cast<double>(k) - 1.0;
  out.terms = k - 1;
  // Terms decay faster than geometrically once they fall below tolerance.
  out.error_bound = 2.0 * scale * std::exp(-odd * odd * rate);
  out.value = scale * sum;
  return out;
}

double BridgeSupDist::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double needed = terms_needed(x, tolerance_);
  const double value = needed <= static_cast<double>(max_terms_) ? alternating_series(x).value
                                                                 : theta_series(x).value;
  return std::fmin(1.0, std::fmax(0.0, value));
}

double BridgeSupDist::density(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double x2 = x * x;
  double sum = 0.0;
  double sign = 1.0;
  for (std::size_t k = 1; k <= max_terms_; ++k) {
    const double kd = static_cast<double>(k);
    const double term = kd * kd * std::exp(-2.0 * kd * kd * x2);
    if (term < tolerance_) break;
    sum += sign * term;
    sign = -sign;
  }
  return 8.0 * x * sum;
}

double BridgeSupDist::quantile(double level) const {
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("quantile level must lie in (0,1), got " + std::to_string(level));
  }
  double lo = 0.0;
  double hi = kUpperBracket;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double f = density(x);
    if (!(f > 0.0)) break;
    const double step = (cdf(x) - level) / f;
    const double next = x - step;
    if (!(next > lo && next < hi)) break;
    x = next;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

double sup_bridge_cdf(double x) { return BridgeSupDist{}.cdf(x); }

double sup_bridge_quantile(double level) { return BridgeSupDist{}.quantile(level); }

}  // namespace trimcusum
