#include "trimcusum/heavy_tail.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "trimcusum/errors.hpp"

namespace trimcusum {

namespace {

void require_probability_open(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0)) {
    throw DomainError(std::string(what) + ": probability must lie in (0,1), got " +
                      std::to_string(u));
  }
}

void require_depth(std::size_t d, std::size_t n) {
  if (d < 1 || d >= n) {
    throw DomainError("trim depth d=" + std::to_string(d) + " must satisfy 1 <= d < n=" +
                      std::to_string(n));
  }
}

// Integral of x * alpha (1+x)^(-alpha-1) over [0, t], i.e. E[X 1{X <= t}] for the
// one-sided law. Written with expm1 so that alpha near 1 stays accurate.
double right_tail_partial_mean(double alpha, double t) {
  const double l = std::log1p(t);
  const double eps = 1.0 - alpha;
  const double growth = std::abs(eps) < 1e-10 ? l : std::expm1(eps * l) / eps;
  return alpha * growth + std::expm1(-alpha * l);
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::two_sided_pareto:
      return "two_sided_pareto";
    case Family::one_sided_pareto:
      return "one_sided_pareto";
    case Family::gaussian:
      return "gaussian";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "two_sided_pareto" || name == "two_sided") return Family::two_sided_pareto;
  if (name == "one_sided_pareto" || name == "one_sided") return Family::one_sided_pareto;
  if (name == "gaussian" || name == "normal") return Family::gaussian;
  throw DomainError("unknown distribution family '" + name + "'");
}

TailModel::TailModel(Family family, double alpha, double p, double q)
    : family_(family), alpha_(alpha), p_(p), q_(q) {
  if (family == Family::gaussian) return;
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw DomainError("tail index alpha must lie in (0,2), got " + std::to_string(alpha));
  }
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw DomainError("tail weights p, q must lie in [0,1]");
  }
  if (std::abs(p + q - 1.0) > 1e-12) {
    throw DomainError("tail weights must satisfy p + q = 1");
  }
  if (family == Family::one_sided_pareto && (p != 1.0 || q != 0.0)) {
    throw DomainError("one-sided Pareto requires p = 1, q = 0");
  }
}

TailModel TailModel::two_sided(double alpha, double p) {
  return TailModel(Family::two_sided_pareto, alpha, p, 1.0 - p);
}

TailModel TailModel::two_sided(double alpha, double p, double q) {
  return TailModel(Family::two_sided_pareto, alpha, p, q);
}

TailModel TailModel::one_sided(double alpha) {
  return TailModel(Family::one_sided_pareto, alpha, 1.0, 0.0);
}

TailModel TailModel::gaussian() { return TailModel(Family::gaussian, 2.0, 0.5, 0.5); }

double cdf(const TailModel& model, double t) {
  const double a = model.alpha();
  switch (model.family()) {
    case Family::gaussian:
      return 0.5 * std::erfc(-t / std::numbers::sqrt2);
    case Family::one_sided_pareto:
      return t <= 0.0 ? 0.0 : -std::expm1(-a * std::log1p(t));
    case Family::two_sided_pareto:
      if (t <= 0.0) return model.q() * std::exp(-a * std::log1p(-t));
      return 1.0 - model.p() * std::exp(-a * std::log1p(t));
  }
  return 0.0;
}

double quantile(const TailModel& model, double u) {
  require_probability_open(u, "quantile");
  const double a = model.alpha();
  switch (model.family()) {
    case Family::gaussian:
      return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
    case Family::one_sided_pareto:
      return std::expm1(-std::log1p(-u) / a);
    case Family::two_sided_pareto:
      if (u <= model.q()) return -std::expm1(-(std::log(u) - std::log(model.q())) / a);
      return std::expm1(-(std::log1p(-u) - std::log(model.p())) / a);
  }
  return 0.0;
}

void fill_iid(const TailModel& model, const CounterStream& stream, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = quantile(model, stream.uniform(i));
  }
}

std::vector<double> sample_iid(const TailModel& model, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample size must be at least 1");
  std::vector<double> out(n);
  fill_iid(model, CounterStream(seed, 0), out);
  return out;
}

double tail_H(const TailModel& model, double t) {
  if (!(t >= 0.0)) throw DomainError("tail_H requires t >= 0");
  if (model.family() == Family::gaussian) return std::erfc(t / std::numbers::sqrt2);
  return std::exp(-model.alpha() * std::log1p(t));
}

double tail_H_inv(const TailModel& model, double u) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw DomainError("tail_H_inv requires 0 < u <= 1, got " + std::to_string(u));
  }
  if (model.family() == Family::gaussian) {
    return u == 1.0 ? 0.0 : std::numbers::sqrt2 * boost::math::erfc_inv(u);
  }
  return std::expm1(-std::log(u) / model.alpha());
}

double density(const TailModel& model, double t) {
  const double a = model.alpha();
  switch (model.family()) {
    case Family::gaussian:
      return std::exp(-0.5 * t * t) * std::numbers::inv_sqrtpi / std::numbers::sqrt2;
    case Family::one_sided_pareto:
      return t < 0.0 ? 0.0 : a * std::exp(-(a + 1.0) * std::log1p(t));
    case Family::two_sided_pareto:
      if (t <= 0.0) return model.q() * a * std::exp(-(a + 1.0) * std::log1p(-t));
      return model.p() * a * std::exp(-(a + 1.0) * std::log1p(t));
  }
  return 0.0;
}

double truncated_mean(const TailModel& model, double t) {
  if (!(t >= 0.0)) throw DomainError("truncated_mean requires t >= 0");
  if (model.family() == Family::gaussian) return 0.0;
  return (model.p() - model.q()) * right_tail_partial_mean(model.alpha(), t);
}

double m_shift(const TailModel& model, double t, std::size_t d, std::size_t n) {
  require_depth(d, n);
  const double threshold = tail_H_inv(model, static_cast<double>(d) / static_cast<double>(n));
  return truncated_mean(model, t) - truncated_mean(model, threshold);
}

double norming_An(const TailModel& model, std::size_t d, std::size_t n) {
  if (!model.is_pareto()) {
    throw UnsupportedModelError("A_n is defined for stable-domain (Pareto) families only");
  }
  require_depth(d, n);
  const double a = model.alpha();
  const double h = tail_H_inv(model, static_cast<double>(d) / static_cast<double>(n));
  return std::sqrt(a / (2.0 - a) * static_cast<double>(d)) * h;
}

double norming_Bn(const TailModel& model, std::size_t d, std::size_t n) {
  if (model.family() != Family::one_sided_pareto) {
    throw UnsupportedModelError("B_n is defined for the one-sided Pareto family only");
  }
  require_depth(d, n);
  const double dn = static_cast<double>(d);
  const double h = tail_H_inv(model, dn / static_cast<double>(n));
  // H = 1 - F on the positive axis, so |H'| = f.
  const double slope = density(model, h);
  return model.alpha() * dn * std::sqrt(dn) / (static_cast<double>(n) * slope);
}

}  // namespace trimcusum
