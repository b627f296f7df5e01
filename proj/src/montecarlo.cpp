#include "trimcusum/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trimcusum/counter_rng.hpp"
#include "trimcusum/errors.hpp"
#include "trimcusum/limit_dist.hpp"

namespace trimcusum {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Kernels run inside OpenMP regions and must not throw; failures become NaN
// rows that are reported once the map has finished.
template <typename Kernel>
auto guarded(Kernel kernel) {
  return [kernel](std::size_t r, ReplicateScratch& scratch, std::span<double> row) {
    try {
      kernel(r, scratch, row);
    } catch (...) {
      std::fill(row.begin(), row.end(), kNaN);
    }
  };
}

void require_all_finite(std::span<const double> table, const char* what) {
  const auto bad = std::find_if(table.begin(), table.end(), [](double v) { return std::isnan(v); });
  if (bad != table.end()) {
    throw DegenerateSampleError(std::string(what) + ": replicate " +
                                std::to_string(bad - table.begin()) +
                                " produced a degenerate trimmed sample");
  }
}

void fill_errors(const SimulationSpec& spec, std::size_t replicate, std::vector<double>& out) {
  out.resize(spec.n);
  fill_iid(spec.model, CounterStream(spec.master_seed, replicate), out);
}

void require_replicate(const SimulationSpec& spec, std::size_t replicate) {
  if (replicate >= spec.replications) {
    throw DomainError("replicate " + std::to_string(replicate) + " out of range for N=" +
                      std::to_string(spec.replications));
  }
}

}  // namespace

std::size_t TrimRule::depth(std::size_t n) const {
  return fixed_ ? *fixed_ : default_trim_depth(n);
}

void SimulationSpec::validate() const {
  if (n < 4) throw DomainError("simulation sample size must be at least 4");
  if (n >= CounterStream::kStride) throw DomainError("sample size exceeds stream stride");
  if (replications < 1) throw DomainError("at least one replication is required");
  if (replications > CounterStream::kMaxStreams) throw DomainError("too many replications");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0,1)");
  const std::size_t d = depth();
  if (d < 1 || d >= n) {
    throw DomainError("trim depth d=" + std::to_string(d) + " invalid for n=" + std::to_string(n));
  }
}

void ChangeSpec::validate(std::size_t n) const {
  std::size_t previous = 0;
  for (const Break& b : breaks) {
    if (b.at < 1 || b.at >= n) {
      throw DomainError("break position " + std::to_string(b.at) + " must lie in [1, n-1]");
    }
    if (b.at <= previous) throw DomainError("break positions must be strictly increasing");
    if (!std::isfinite(b.shift)) throw DomainError("break shift must be finite");
    previous = b.at;
  }
}

double ChangeSpec::offset_at(std::size_t j) const {
  double level = 0.0;
  for (const Break& b : breaks) {
    if (j < b.at) break;
    level = b.shift;
  }
  return level;
}

std::vector<double> default_shift_grid() {
  std::vector<double> grid;
  for (int i = -30; i <= 30; ++i) grid.push_back(static_cast<double>(i) / 10.0);
  return grid;
}

void PowerSpec::validate() const {
  base.validate();
  if (change_at < 1 || change_at >= base.n) throw DomainError("change location must lie in [1, n-1]");
  if (!(critical_value > 0.0)) throw DomainError("critical value must be positive");
  if (shift_grid.empty()) throw DomainError("shift grid is empty");
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) {
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Sample generate_H0(const SimulationSpec& spec, std::size_t replicate) {
  spec.validate();
  require_replicate(spec, replicate);
  Sample out;
  fill_errors(spec, replicate, out);
  return out;
}

Sample generate_HA(const SimulationSpec& spec, const ChangeSpec& change, std::size_t replicate) {
  change.validate(spec.n);
  Sample out = generate_H0(spec, replicate);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += change.offset_at(j);
  return out;
}

std::vector<double> null_statistics(const SimulationSpec& spec, const Execution& exec) {
  spec.validate();
  const std::size_t d = spec.depth();
  auto table = map_replicate_rows(
      spec.replications, 1,
      guarded([&](std::size_t r, ReplicateScratch& s, std::span<double> row) {
        fill_errors(spec, r, s.sample);
        row[0] = detail::statistic_nothrow(s.sample, d, s.order);
      }),
      exec);
  require_all_finite(table, "null_statistics");
  return table;
}

std::vector<CriticalValueRow> critical_value_table(const SimulationSpec& spec,
                                                   std::span<const std::size_t> n_list,
                                                   const Execution& exec) {
  std::vector<CriticalValueRow> rows;
  for (std::size_t n : n_list) {
    SimulationSpec row_spec = spec;
    row_spec.n = n;
    row_spec.master_seed = derive_seed(spec.master_seed, n);
    std::vector<double> stats = null_statistics(row_spec, exec);
    std::sort(stats.begin(), stats.end());
    rows.push_back(CriticalValueRow{n, row_spec.depth(), sorted_quantile(stats, spec.level),
                                    quantile_standard_error(stats, spec.level)});
  }
  rows.push_back(CriticalValueRow{std::nullopt, 0, sup_bridge_quantile(spec.level), 0.0});
  return rows;
}

std::vector<PowerPoint> power_curve(const PowerSpec& spec, const Execution& exec) {
  spec.validate();
  const SimulationSpec& base = spec.base;
  const std::size_t d = base.depth();
  const std::size_t width = spec.shift_grid.size();
  auto table = map_replicate_rows(
      base.replications, width,
      guarded([&](std::size_t r, ReplicateScratch& s, std::span<double> row) {
        fill_errors(base, r, s.sample);
        s.work.resize(base.n);
        for (std::size_t i = 0; i < width; ++i) {
          const ChangeSpec change = ChangeSpec::single(spec.change_at, spec.shift_grid[i]);
          for (std::size_t j = 0; j < base.n; ++j) s.work[j] = s.sample[j] + change.offset_at(j);
          const double stat = detail::statistic_nothrow(s.work, d, s.order);
          row[i] = std::isnan(stat) ? kNaN : (stat > spec.critical_value ? 1.0 : 0.0);
        }
      }),
      exec);
  require_all_finite(table, "power_curve");

  std::vector<PowerPoint> out;
  for (std::size_t i = 0; i < width; ++i) {
    std::size_t rejections = 0;
    for (std::size_t r = 0; r < base.replications; ++r) {
      rejections += table[r * width + i] > 0.5 ? 1 : 0;
    }
    const double rate = static_cast<double>(rejections) / static_cast<double>(base.replications);
    out.push_back({spec.shift_grid[i], rate, binomial_standard_error(rate, base.replications)});
  }
  return out;
}

RejectionRate asymptotic_size(const SimulationSpec& spec, const Execution& exec) {
  const std::vector<double> stats = null_statistics(spec, exec);
  RejectionRate out;
  out.critical_value = sup_bridge_quantile(spec.level);
  out.replications = stats.size();
  const auto rejections = std::count_if(stats.begin(), stats.end(),
                                        [&](double s) { return s > out.critical_value; });
  out.rate = static_cast<double>(rejections) / static_cast<double>(stats.size());
  out.standard_error = binomial_standard_error(1.0 - spec.level, stats.size());
  return out;
}

RejectionRate size_under_finite_variance(std::size_t n, std::size_t replications, double level,
                                         std::uint64_t seed, const Execution& exec) {
  SimulationSpec spec;
  spec.model = TailModel::gaussian();
  spec.n = n;
  spec.replications = replications;
  spec.level = level;
  spec.master_seed = seed;
  return asymptotic_size(spec, exec);
}

Example1Summary example1_diagnostic(std::size_t n, std::size_t d, std::size_t reps,
                                    std::uint64_t seed, const TailModel& model,
                                    const Execution& exec) {
  if (model.family() != Family::one_sided_pareto) {
    throw UnsupportedModelError("the random-centering diagnostic needs the one-sided Pareto law");
  }
  if (d < 2 || d >= n) throw DomainError("random-centering diagnostic requires 2 <= d < n");
  if (reps < 1) throw DomainError("at least one replication is required");

  SimulationSpec spec;
  spec.model = model;
  spec.n = n;
  spec.d_rule = TrimRule::fixed(d);
  spec.replications = reps;
  spec.master_seed = seed;
  spec.validate();

  const double bn = norming_Bn(model, d, n);
  const double nd = static_cast<double>(n);
  auto table = map_replicate_rows(
      reps, 1,
      guarded([&](std::size_t r, ReplicateScratch& s, std::span<double> row) {
        fill_errors(spec, r, s.sample);
        const double eta = trim_threshold(s.sample, d);
        row[0] = nd * m_shift(model, eta, d, n) / bn;
      }),
      exec);
  require_all_finite(table, "example1_diagnostic");

  Example1Summary out;
  out.moments = moments(table);
  out.ks_to_normal = ks_to_normal(table);
  out.values = std::move(table);
  return out;
}

DivergenceSummary trim_trunc_divergence(std::size_t n, std::size_t d, std::size_t reps,
                                        std::uint64_t seed, const TailModel& model,
                                        const Execution& exec) {
  if (!model.is_pareto()) {
    throw UnsupportedModelError("the trimmed-vs-truncated diagnostic needs a Pareto law");
  }
  SimulationSpec spec;
  spec.model = model;
  spec.n = n;
  spec.d_rule = TrimRule::fixed(d);
  spec.replications = reps;
  spec.master_seed = seed;
  spec.validate();

  const double an = norming_An(model, d, n);
  const double threshold = tail_H_inv(model, static_cast<double>(d) / static_cast<double>(n));
  auto table = map_replicate_rows(
      reps, 3,
      guarded([&](std::size_t r, ReplicateScratch& s, std::span<double> row) {
        fill_errors(spec, r, s.sample);
        const double eta = trim_threshold(s.sample, d);
        const double m = m_shift(model, eta, d, n);
        row[0] = centered_gap_process(s.sample, d, threshold, m) / an;
        row[1] = centered_gap_process(s.sample, d, threshold, 0.0) / an;
        row[2] = trim_trunc_gap(s.sample, d, threshold) / an;
      }),
      exec);
  require_all_finite(table, "trim_trunc_divergence");

  std::vector<double> column(reps);
  auto column_median = [&](std::size_t c) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = table[r * 3 + c];
    return median(column);
  };
  DivergenceSummary out;
  out.median_centered = column_median(0);
  out.median_uncentered = column_median(1);
  out.median_cusum_gap = column_median(2);
  out.replications = reps;
  return out;
}

AnRatioSummary an_ratio(const SimulationSpec& spec, const Execution& exec) {
  spec.validate();
  const std::size_t d = spec.depth();
  const double an = norming_An(spec.model, d, spec.n);
  auto table = map_replicate_rows(
      spec.replications, 1,
      guarded([&](std::size_t r, ReplicateScratch& s, std::span<double> row) {
        fill_errors(spec, r, s.sample);
        row[0] = std::sqrt(trim(s.sample, d).a_hat_sq) / an;
      }),
      exec);
  require_all_finite(table, "an_ratio");
  return {median(table), spec.replications};
}

}  // namespace trimcusum
