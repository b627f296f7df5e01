#pragma once

// Closed-form heavy-tailed laws used by the trimmed CUSUM theory.
//
// two_sided_pareto: F(t) = q (1-t)^-alpha for t <= 0, 1 - p (1+t)^-alpha for t > 0.
// one_sided_pareto: the same with p = 1, q = 0 (support (0, inf)).
// gaussian:         standard normal, the finite-variance control.
//
// Both Pareto families have exact power tails, so H(t) = P{|X| > t} = (1+t)^-alpha
// and every quantity below has a closed form.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trimcusum/counter_rng.hpp"

namespace trimcusum {

enum class Family { two_sided_pareto, one_sided_pareto, gaussian };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

class TailModel {
 public:
  /// Two-sided Pareto-type law with right weight p and left weight q = 1 - p.
  static TailModel two_sided(double alpha, double p);
  /// As above with both weights explicit; requires |p + q - 1| <= 1e-12.
  static TailModel two_sided(double alpha, double p, double q);
  static TailModel one_sided(double alpha);
  static TailModel gaussian();

  Family family() const noexcept { return family_; }
  /// Tail index; 2 for the gaussian family (no stable-domain meaning).
  double alpha() const noexcept { return alpha_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  bool is_pareto() const noexcept { return family_ != Family::gaussian; }

  friend bool operator==(const TailModel&, const TailModel&) = default;

 private:
  TailModel(Family family, double alpha, double p, double q);

  Family family_;
  double alpha_;
  double p_;
  double q_;
};

double cdf(const TailModel& model, double t);

/// Inverse CDF on (0,1). Throws DomainError outside.
double quantile(const TailModel& model, double u);

/// X = F^-1(U) with U drawn from `stream`, draws 0..out.size()-1.
void fill_iid(const TailModel& model, const CounterStream& stream, std::span<double> out);

/// n i.i.d. draws from stream 0 of `seed`.
std::vector<double> sample_iid(const TailModel& model, std::size_t n, std::uint64_t seed);

/// H(t) = P{|X| > t}, t >= 0.
double tail_H(const TailModel& model, double t);

/// Generalized inverse of H on (0,1]. Throws DomainError for u <= 0 or u > 1.
double tail_H_inv(const TailModel& model, double u);

/// f = F'.
double density(const TailModel& model, double t);

/// E[X 1{|X| <= t}].
double truncated_mean(const TailModel& model, double t);

/// m(t) = E[X 1{|X| <= t}] - E[X 1{|X| <= H^-1(d/n)}], the random-centering term
/// that separates trimmed from truncated partial sums.
double m_shift(const TailModel& model, double t, std::size_t d, std::size_t n);

/// A_n = sqrt(alpha / (2 - alpha) * H^-1(d/n)^2 * d). Pareto families only.
double norming_An(const TailModel& model, std::size_t d, std::size_t n);

/// B_n = alpha d^{3/2} / (n |H'(H^-1(d/n))|). One-sided family only.
double norming_Bn(const TailModel& model, std::size_t d, std::size_t n);

}  // namespace trimcusum
