#include "trimcusum/trimmed_cusum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "trimcusum/errors.hpp"

namespace trimcusum {

namespace {

void require_trim_depth(std::size_t d, std::size_t n) {
  if (d < 1 || d >= n) {
    throw DomainError("trim depth d=" + std::to_string(d) + " must satisfy 1 <= d < n=" +
                      std::to_string(n));
  }
}

double kth_largest_modulus(std::span<const double> values, std::size_t d,
                           std::vector<double>& scratch) {
  scratch.resize(values.size());
  std::transform(values.begin(), values.end(), scratch.begin(),
                 [](double v) { return std::abs(v); });
  const auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(d - 1);
  std::nth_element(scratch.begin(), nth, scratch.end(), std::greater<>());
  return *nth;
}

// One pass to S_n, one pass for the path. Shared by every path builder so
// that the kernels and the public API agree bit for bit.
template <typename Term>
double fill_path(std::size_t n, Term term, std::vector<double>* points, std::size_t* argmax,
                 double* total_out) {
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) total += term(j);

  const double nd = static_cast<double>(n);
  double running = 0.0;
  double sup = 0.0;
  std::size_t best = n >= 2 ? 1 : 0;
  if (points) {
    points->assign(n + 1, 0.0);
  }
  for (std::size_t k = 1; k <= n; ++k) {
    running += term(k - 1);
    const double value = std::fma(-(static_cast<double>(k) / nd), total, running);
    if (points) (*points)[k] = value;
    const double mag = std::abs(value);
    if (mag > sup) {
      sup = mag;
      best = k;
    }
  }
  if (argmax) *argmax = best;
  if (total_out) *total_out = total;
  return sup;
}

}  // namespace

std::size_t default_trim_depth(std::size_t n) {
  if (n < 2) throw DomainError("default_trim_depth requires n >= 2");
  auto d = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 0.3)));
  // pow can land just below an exact integer (n = 1024 gives 8); settle the
  // floor exactly through d^10 <= n^3, in long double to keep the range.
  const long double cube = static_cast<long double>(n) * n * n;
  auto tenth = [](std::size_t k) {
    long double r = 1.0L;
    for (int i = 0; i < 10; ++i) r *= static_cast<long double>(k);
    return r;
  };
  while (tenth(d + 1) <= cube) ++d;
  while (d > 0 && tenth(d) > cube) --d;
  return std::max<std::size_t>(2, d);
}

double trim_threshold(std::span<const double> values, std::size_t d) {
  if (d < 1 || d > values.size()) {
    throw DomainError("trim depth d=" + std::to_string(d) + " must satisfy 1 <= d <= n=" +
                      std::to_string(values.size()));
  }
  std::vector<double> scratch;
  return kth_largest_modulus(values, d, scratch);
}

std::size_t TrimmedSample::trimmed_count() const noexcept {
  return static_cast<std::size_t>(std::count(kept.begin(), kept.end(), false));
}

std::vector<double> TrimmedSample::terms() const {
  std::vector<double> out(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) out[j] = kept[j] ? values[j] : 0.0;
  return out;
}

TrimmedSample trim(std::span<const double> values, std::size_t d) {
  const std::size_t n = values.size();
  require_trim_depth(d, n);
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("sample contains a non-finite value");
  }

  TrimmedSample out;
  out.values.assign(values.begin(), values.end());
  out.d = d;
  out.eta = trim_threshold(values, d);
  out.kept.resize(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    out.kept[j] = std::abs(values[j]) <= out.eta;
    total += out.kept[j] ? values[j] : 0.0;
  }
  out.xbar = total / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dev = (out.kept[j] ? values[j] : 0.0) - out.xbar;
    ss += dev * dev;
  }
  out.a_hat_sq = ss;
  out.sigma_hat = std::sqrt(ss / static_cast<double>(n));
  return out;
}

CusumPath cusum_path(std::span<const double> terms) {
  if (terms.empty()) throw DomainError("cusum_path requires at least one term");
  CusumPath path;
  path.sup_abs = fill_path(
      terms.size(), [&](std::size_t j) { return terms[j]; }, &path.points, &path.argmax_k,
      nullptr);
  return path;
}

TrimmedCusum evaluate(std::span<const double> values, std::size_t d) {
  TrimmedCusum out;
  out.trimmed = trim(values, d);
  const auto& t = out.trimmed;
  out.path.sup_abs = fill_path(
      t.size(), [&](std::size_t j) { return t.kept[j] ? t.values[j] : 0.0; }, &out.path.points,
      &out.path.argmax_k, nullptr);
  if (!(t.a_hat_sq > 0.0)) {
    throw DegenerateSampleError("trimmed sample has zero variance; statistic undefined");
  }
  out.statistic = out.path.sup_abs / std::sqrt(t.a_hat_sq);
  return out;
}

double test_statistic(std::span<const double> values, std::size_t d) {
  return evaluate(values, d).statistic;
}

CusumPath truncated_cusum_path(std::span<const double> values, double threshold) {
  if (!(threshold >= 0.0)) throw DomainError("truncation threshold must be >= 0");
  if (values.empty()) throw DomainError("truncated_cusum_path requires a nonempty sample");
  CusumPath path;
  path.sup_abs = fill_path(
      values.size(),
      [&](std::size_t j) { return std::abs(values[j]) <= threshold ? values[j] : 0.0; },
      &path.points, &path.argmax_k, nullptr);
  return path;
}

double trim_trunc_gap(std::span<const double> values, std::size_t d, double threshold) {
  require_trim_depth(d, values.size());
  const double eta = trim_threshold(values, d);
  const CusumPath trimmed = truncated_cusum_path(values, eta);
  const CusumPath truncated = truncated_cusum_path(values, threshold);
  double gap = 0.0;
  for (std::size_t k = 0; k < trimmed.points.size(); ++k) {
    gap = std::max(gap, std::abs(trimmed.points[k] - truncated.points[k]));
  }
  return gap;
}

double centered_gap_process(std::span<const double> values, std::size_t d, double threshold,
                            double m_at_eta) {
  require_trim_depth(d, values.size());
  const double eta = trim_threshold(values, d);
  double running = 0.0;
  double gap = 0.0;
  for (double x : values) {
    const double mod = std::abs(x);
    const double diff = (mod <= eta ? x : 0.0) - (mod <= threshold ? x : 0.0);
    running += diff - m_at_eta;
    gap = std::max(gap, std::abs(running));
  }
  return gap;
}

ChangeLocation locate_change(const CusumPath& path) {
  if (path.points.empty()) throw DomainError("locate_change requires a nonempty path");
  ChangeLocation loc;
  loc.degenerate = !(path.sup_abs > 0.0);
  loc.index = loc.degenerate ? 1 : path.argmax_k;
  return loc;
}

namespace detail {

double statistic_nothrow(std::span<const double> values, std::size_t d,
                         std::vector<double>& scratch) noexcept {
  const std::size_t n = values.size();
  if (d < 1 || d >= n) return std::numeric_limits<double>::quiet_NaN();
  const double eta = kth_largest_modulus(values, d, scratch);
  auto term = [&](std::size_t j) { return std::abs(values[j]) <= eta ? values[j] : 0.0; };
  double total = 0.0;
  const double sup = fill_path(n, term, nullptr, nullptr, &total);
  const double xbar = total / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double dev = term(j) - xbar;
    ss += dev * dev;
  }
  if (!(ss > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  return sup / std::sqrt(ss);
}

double cusum_sup(std::span<const double> terms) noexcept {
  return fill_path(
      terms.size(), [&](std::size_t j) { return terms[j]; }, nullptr, nullptr, nullptr);
}

}  // namespace detail

}  // namespace trimcusum
