#include "trimcusum/resampling.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "trimcusum/counter_rng.hpp"
#include "trimcusum/empirical.hpp"
#include "trimcusum/errors.hpp"

namespace trimcusum {

namespace {

// Draws y_0..y_{m-1} into `out`. `work` holds the partially shuffled pool in
// the without-replacement case.
void draw_into(std::span<const double> pool, const ResamplePlan& plan, std::size_t replicate,
               std::span<double> out, std::vector<double>& work) {
  const CounterStream stream(plan.seed, replicate, StreamDomain::resampling);
  const std::size_t n = pool.size();
  if (plan.mode == ResampleMode::with_replacement) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = pool[stream.below(n, i)];
    return;
  }
  work.assign(pool.begin(), pool.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t j = i + stream.below(n - i, i);
    std::swap(work[i], work[j]);
    out[i] = work[i];
  }
}

}  // namespace

std::string to_string(ResampleMode mode) {
  return mode == ResampleMode::with_replacement ? "bootstrap" : "permutation";
}

ResampleMode resample_mode_from_string(const std::string& name) {
  if (name == "bootstrap" || name == "with_replacement") return ResampleMode::with_replacement;
  if (name == "permutation" || name == "without_replacement") {
    return ResampleMode::without_replacement;
  }
  throw DomainError("unknown resampling mode '" + name + "'");
}

void ResamplePlan::validate(std::size_t n) const {
  const std::size_t size = size_for(n);
  if (size < 1) throw DomainError("resample size m must be at least 1");
  if (mode == ResampleMode::without_replacement && size > n) {
    throw DomainError("sampling without replacement requires m <= n (m=" + std::to_string(size) +
                      ", n=" + std::to_string(n) + ")");
  }
  if (size >= CounterStream::kStride) throw DomainError("resample size exceeds stream stride");
  if (replications < 1) throw DomainError("at least one resampling replication is required");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0,1)");
}

std::vector<double> trimmed_centered(std::span<const double> values, std::size_t d) {
  const TrimmedSample t = trim(values, d);
  std::vector<double> x(t.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = (t.kept[j] ? t.values[j] : 0.0) - t.xbar;
  }
  return x;
}

std::vector<double> resample(std::span<const double> pool, const ResamplePlan& plan,
                             std::size_t replicate_index) {
  if (pool.empty()) throw DomainError("cannot resample from an empty pool");
  plan.validate(pool.size());
  if (replicate_index >= plan.replications) {
    throw DomainError("replicate index " + std::to_string(replicate_index) +
                      " out of range for " + std::to_string(plan.replications) + " replications");
  }
  std::vector<double> out(plan.size_for(pool.size()));
  std::vector<double> work;
  draw_into(pool, plan, replicate_index, out, work);
  return out;
}

CusumPath resampled_path(std::span<const double> pool, const ResamplePlan& plan,
                         std::size_t replicate_index) {
  return cusum_path(resample(pool, plan, replicate_index));
}

std::vector<double> resampled_statistics(std::span<const double> values, std::size_t d,
                                         const ResamplePlan& plan, const Execution& exec) {
  const TrimmedSample t = trim(values, d);
  if (!(t.a_hat_sq > 0.0)) {
    throw DegenerateSampleError("trimmed sample has zero variance; cannot resample");
  }
  std::vector<double> pool(t.size());
  for (std::size_t j = 0; j < pool.size(); ++j) pool[j] = (t.kept[j] ? t.values[j] : 0.0) - t.xbar;
  plan.validate(pool.size());

  const std::size_t m = plan.size_for(pool.size());
  const double norm = t.sigma_hat * std::sqrt(static_cast<double>(m));
  return map_replicates(
      plan.replications,
      [&](std::size_t b, ReplicateScratch& scratch) {
        scratch.sample.resize(m);
        draw_into(pool, plan, b, scratch.sample, scratch.work);
        return detail::cusum_sup(scratch.sample) / norm;
      },
      exec);
}

CriticalValueEstimate resampled_critical_value(std::span<const double> values, std::size_t d,
                                               const ResamplePlan& plan, const Execution& exec) {
  std::vector<double> stats = resampled_statistics(values, d, plan, exec);
  std::sort(stats.begin(), stats.end());
  CriticalValueEstimate out;
  out.value = sorted_quantile(stats, plan.level);
  out.level = plan.level;
  out.replications = plan.replications;
  out.standard_error = quantile_standard_error(stats, plan.level);
  return out;
}

}  // namespace trimcusum
