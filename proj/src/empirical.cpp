#include "trimcusum/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "trimcusum/errors.hpp"

namespace trimcusum {

std::size_t ceiling_rank(std::size_t count, double level) {
  if (count == 0) throw DomainError("empirical quantile of an empty set");
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("quantile level must lie in (0,1), got " + std::to_string(level));
  }
  // The slack absorbs representation error in level (2000 * 0.95 must give 1900).
  const double raw = static_cast<double>(count) * level;
  auto rank = static_cast<std::size_t>(std::ceil(raw - 1e-9 * raw));
  return std::clamp<std::size_t>(rank, 1, count);
}

double sorted_quantile(std::span<const double> sorted, double level) {
  return sorted[ceiling_rank(sorted.size(), level) - 1];
}

double empirical_quantile(std::span<const double> values, double level) {
  std::vector<double> copy(values.begin(), values.end());
  const std::size_t rank = ceiling_rank(copy.size(), level);
  auto nth = copy.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(copy.begin(), nth, copy.end());
  return *nth;
}

double quantile_standard_error(std::span<const double> sorted, double level) {
  const std::size_t count = sorted.size();
  if (count < 2) return 0.0;
  const double b = static_cast<double>(count);
  const double half = std::sqrt(b * level * (1.0 - level));
  auto rank_at = [&](double r) {
    const auto clamped = std::clamp(std::ceil(r), 1.0, b);
    return static_cast<std::size_t>(clamped) - 1;
  };
  const double lower = sorted[rank_at(b * level - half)];
  const double upper = sorted[rank_at(b * level + half)];
  return 0.5 * (upper - lower);
}

double binomial_standard_error(double p, std::size_t count) {
  if (count == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

Moments moments(std::span<const double> values) {
  Moments m;
  m.count = values.size();
  if (values.empty()) return m;
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / static_cast<double>(values.size());
  if (values.size() >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - m.mean) * (v - m.mean);
    m.variance = ss / static_cast<double>(values.size() - 1);
  }
  return m;
}

double median(std::span<const double> values) {
  if (values.empty()) throw DomainError("median of an empty set");
  std::vector<double> copy(values.begin(), values.end());
  std::sort(copy.begin(), copy.end());
  const std::size_t mid = copy.size() / 2;
  return copy.size() % 2 == 1 ? copy[mid] : 0.5 * (copy[mid - 1] + copy[mid]);
}

double ks_to_normal(std::span<const double> values) {
  if (values.empty()) throw DomainError("KS distance of an empty set");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double count = static_cast<double>(sorted.size());
  double dist = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = 0.5 * std::erfc(-sorted[i] / std::numbers::sqrt2);
    const double above = static_cast<double>(i + 1) / count - phi;
    const double below = phi - static_cast<double>(i) / count;
    dist = std::max({dist, above, below});
  }
  return dist;
}

}  // namespace trimcusum
