// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "trimcusum/empirical.hpp"
#include "trimcusum/heavy_tail.hpp"
#include "trimcusum/limit_dist.hpp"
#include "trimcusum/montecarlo.hpp"
#include "trimcusum/resampling.hpp"
#include "trimcusum/trimmed_cusum.hpp"

namespace {

using namespace trimcusum;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

SimulationSpec table_spec(std::size_t n, std::size_t reps, std::uint64_t seed) {
  SimulationSpec spec;
  spec.model = TailModel::two_sided(1.5, 0.5);
  spec.n = n;
  spec.replications = reps;
  spec.level = 0.95;
  spec.master_seed = seed;
  return spec;
}

void criterion1() {
  const auto start = Clock::now();
  const double q = sup_bridge_quantile(0.95);
  const double ms = 1e3 * seconds_since(start);
  report(1, std::abs(q - 1.358) <= 0.001 && ms < 1.0,
         fmt("quantile(0.95)=%.6f (target 1.358 +- 0.001), %.3f ms (< 1 ms)", q, ms));
}

// Returns the n=800 simulated value for criterion 7 and the n=400 value for criterion 6.
std::vector<CriticalValueRow> criteria2and3() {
  const std::vector<std::size_t> ns{100, 200, 400, 800};
  const std::vector<double> reference{1.244, 1.272, 1.299, 1.312};
  const auto start = Clock::now();
  const auto rows = critical_value_table(table_spec(100, 100000, 0), ns);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    ok = ok && std::abs(rows[i].value - reference[i]) <= 0.015;
    detail += fmt("n=%zu: %.4f (%.3f+-0.015, se %.4f); ", ns[i], rows[i].value, reference[i],
                  rows[i].standard_error);
  }
  report(2, ok, detail + fmt("%.1f s", seconds_since(start)));

  const double asymptotic = rows.back().value;
  bool monotone = true;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (i > 0 && rows[i].value < rows[i - 1].value) monotone = false;
    if (!(rows[i].value < asymptotic)) monotone = false;
  }
  report(3, monotone,
         fmt("values %.4f <= %.4f <= %.4f <= %.4f, all < %.4f", rows[0].value, rows[1].value,
             rows[2].value, rows[3].value, asymptotic));
  return rows;
}

void criterion4() {
  const RejectionRate r = asymptotic_size(table_spec(800, 10000, 4));
  report(4, r.rate >= 0.025 && r.rate <= 0.060,
         fmt("two-sided Pareto n=800 N=1e4: rate %.4f in [0.025, 0.060]", r.rate));
}

void criterion5() {
  const RejectionRate r = size_under_finite_variance(800, 10000, 0.95, 5);
  report(5, r.rate >= 0.025 && r.rate <= 0.060,
         fmt("gaussian n=800 N=1e4: rate %.4f in [0.025, 0.060]", r.rate));
}

void criterion6(double critical_value) {
  const auto start = Clock::now();
  PowerSpec spec;
  spec.base = table_spec(400, 10000, 6);
  spec.critical_value = critical_value;
  spec.change_at = 200;
  const auto half = power_curve(spec);
  spec.change_at = 100;
  const auto quarter = power_curve(spec);

  const std::size_t zero = 30;
  const double se0 = binomial_standard_error(0.05, 10000);
  const bool null_ok = std::abs(half[zero].rate - 0.05) <= 2 * se0;

  // Walk outwards from c = 0 on each side.
  bool monotone = true;
  for (std::size_t i = zero; i + 1 < half.size(); ++i) {
    const double slack = 2 * std::max(half[i].standard_error, half[i + 1].standard_error);
    if (half[i + 1].rate < half[i].rate - slack) monotone = false;
  }
  for (std::size_t i = zero; i > 0; --i) {
    const double slack = 2 * std::max(half[i].standard_error, half[i - 1].standard_error);
    if (half[i - 1].rate < half[i].rate - slack) monotone = false;
  }
  const bool strong = half.front().rate >= 0.9 && half.back().rate >= 0.9;

  bool location = true;
  double worst = 0.0;
  for (std::size_t i = 0; i < half.size(); ++i) {
    const double slack = 2 * std::max(half[i].standard_error, quarter[i].standard_error);
    worst = std::max(worst, quarter[i].rate - half[i].rate);
    if (half[i].rate < quarter[i].rate - slack) location = false;
  }
  report(6, null_ok && monotone && strong && location,
         fmt("cv %.4f; power(0)=%.4f (0.05+-%.4f) %s; monotone in |c| %s; power(-3)=%.4f "
             "power(3)=%.4f (>=0.9) %s; k=n/2 vs n/4 worst deficit %.4f %s; %.1f s",
             critical_value, half[zero].rate, 2 * se0, null_ok ? "ok" : "bad",
             monotone ? "ok" : "bad", half.front().rate, half.back().rate, strong ? "ok" : "bad",
             worst, location ? "ok" : "bad", seconds_since(start)));
}

void criterion7(double simulated) {
  const auto start = Clock::now();
  const SimulationSpec spec = table_spec(800, 1, 7);
  const std::size_t d = spec.depth();
  const Sample null = generate_H0(spec, 0);
  const Sample alt = generate_HA(spec, ChangeSpec::single(400, 2.0), 0);

  bool ok = true;
  std::string detail = fmt("simulated %.4f; ", simulated);
  for (const auto& [label, sample] : {std::pair{"H0", &null}, std::pair{"HA", &alt}}) {
    double values[2];
    int i = 0;
    for (ResampleMode mode : {ResampleMode::without_replacement, ResampleMode::with_replacement}) {
      ResamplePlan plan;
      plan.mode = mode;
      plan.replications = 2000;
      plan.seed = 70;
      values[i] = resampled_critical_value(*sample, d, plan).value;
      ok = ok && std::abs(values[i] - simulated) <= 0.08;
      ++i;
    }
    ok = ok && std::abs(values[0] - values[1]) <= 0.08;
    detail += fmt("%s permutation %.4f bootstrap %.4f; ", label, values[0], values[1]);
  }
  report(7, ok, detail + fmt("tolerance 0.08, %.1f s", seconds_since(start)));
}

void criterion8() {
  const auto start = Clock::now();
  const auto big = example1_diagnostic(100000, 31, 2000, 8);
  const double variance = big.moments.variance.value_or(NAN);
  const bool mean_ok = std::abs(big.moments.mean) <= 0.1;
  const bool var_ok = variance >= 0.7 && variance <= 1.4;

  std::vector<double> ks;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    std::vector<double> per_seed;
    for (std::uint64_t seed : {81u, 82u, 83u}) {
      per_seed.push_back(example1_diagnostic(n, default_trim_depth(n), 2000, seed).ks_to_normal);
    }
    ks.push_back(median(per_seed));
  }
  const bool trend = ks[0] > ks[1] && ks[1] > ks[2];
  report(8, mean_ok && var_ok && trend,
         fmt("n=1e5 d=31: mean %.4f (|.|<=0.1) %s, variance %.4f in [0.7,1.4] %s; median KS "
             "%.4f > %.4f > %.4f %s; %.1f s",
             big.moments.mean, mean_ok ? "ok" : "bad", variance, var_ok ? "ok" : "bad", ks[0],
             ks[1], ks[2], trend ? "ok" : "bad", seconds_since(start)));
}

void criterion9() {
  const auto start = Clock::now();
  std::vector<DivergenceSummary> s;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    s.push_back(trim_trunc_divergence(n, default_trim_depth(n), 500, 9));
  }
  const bool trend = s[0].median_centered > s[1].median_centered &&
                     s[1].median_centered > s[2].median_centered;
  const bool contrast = s[2].median_uncentered > s[2].median_centered;
  report(9, trend && contrast,
         fmt("centered median %.4f > %.4f > %.4f %s; n=1e5 uncentered %.4f > centered %.4f %s; "
             "%.1f s",
             s[0].median_centered, s[1].median_centered, s[2].median_centered,
             trend ? "ok" : "bad", s[2].median_uncentered, s[2].median_centered,
             contrast ? "ok" : "bad", seconds_since(start)));
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9; }

bool path_is(const CusumPath& path, const std::vector<double>& expected) {
  if (path.points.size() != expected.size()) return false;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (!near(path.points[k], expected[k])) return false;
  }
  return true;
}

void criterion10() {
  const Sample x{3.0, -1.0, 0.5, -4.0, 2.0};
  const TrimmedSample t = trim(x, 2);
  std::vector<std::string> bad;
  auto check = [&](bool ok, const char* what) {
    if (!ok) bad.push_back(what);
  };
  check(near(t.eta, 3.0), "eta");
  check(t.kept == std::vector<bool>{true, true, true, false, true}, "kept");
  check(near(t.xbar, 0.9), "xbar");
  check(near(t.a_hat_sq, 10.2), "A^2");
  check(near(t.sigma_hat, std::sqrt(2.04)), "sigma");
  check(path_is(cusum_path(t.terms()), {0.0, 2.1, 0.2, -0.2, -1.1, 0.0}), "cusum path");
  check(near(test_statistic(x, 2), 2.1 / std::sqrt(10.2)), "statistic");
  check(std::abs(test_statistic(x, 2) - 0.65754) <= 5e-6, "statistic 0.65754");
  check(path_is(truncated_cusum_path(x, 2.5), {0.0, -0.3, -1.6, -1.4, -1.7, 0.0}),
        "truncated path");
  check(near(trim_trunc_gap(x, 2, 2.5), 2.4), "gap");
  const auto centered = trimmed_centered(x, 2);
  const std::vector<double> expected{2.1, -1.9, -0.4, -0.9, 1.1};
  for (std::size_t j = 0; j < 5; ++j) check(near(centered[j], expected[j]), "centered values");
  std::string detail = "eta, xbar, A^2, CUSUM path, statistic, truncated path, gap, centered "
                       "values to 1e-9";
  if (!bad.empty()) {
    detail = "mismatch:";
    for (const auto& b : bad) detail += " " + b;
  }
  report(10, bad.empty(), detail);
}

Sample pareto_draws(std::size_t n, std::uint64_t seed) {
  return sample_iid(TailModel::two_sided(1.5, 0.5), n, seed);
}

void criterion11() {
  std::vector<std::string> bad;
  auto check = [&](bool ok, const char* what) {
    if (!ok) bad.push_back(what);
  };

  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const std::size_t n = 5 + trial * 3;
    const Sample x = pareto_draws(n, 1000 + trial);
    const std::size_t d = 1 + trial % (n - 1);
    const TrimmedCusum e = evaluate(x, d);
    const double scale = std::accumulate(x.begin(), x.end(), 0.0,
                                         [](double s, double v) { return s + std::abs(v); });
    check(e.path.points.front() == 0.0 && std::abs(e.path.points.back()) <= 1e-9 * scale,
          "tied-down");

    Sample shifted = e.trimmed.terms();
    for (auto& v : shifted) v += 3.25;
    const CusumPath moved = cusum_path(shifted);
    bool centered = true;
    for (std::size_t k = 0; k <= n; ++k) {
      centered = centered && std::abs(moved.points[k] - e.path.points[k]) <= 1e-9 * (scale + 4 * n);
    }
    check(centered, "centering");

    Sample scaled = x;
    for (auto& v : scaled) v *= 41.5;
    check(std::abs(test_statistic(scaled, d) - e.statistic) <= 1e-10 * e.statistic, "scale");
    check(e.trimmed.trimmed_count() == d - 1, "kept-count");
  }

  // 3! oracle: permutation law is uniform over the six orderings.
  const Sample three{1.0, -2.0, 4.5};
  const auto pool = trimmed_centered(three, 1);
  const double norm = trim(three, 1).sigma_hat * std::sqrt(3.0);
  std::vector<std::size_t> idx{0, 1, 2};
  std::vector<double> exact;
  do {
    exact.push_back(cusum_path(std::vector<double>{pool[idx[0]], pool[idx[1]], pool[idx[2]]})
                        .sup_abs /
                    norm);
  } while (std::next_permutation(idx.begin(), idx.end()));
  std::sort(exact.begin(), exact.end());
  for (double level : {0.75, 0.95}) {
    ResamplePlan plan;
    plan.replications = 20000;
    plan.level = level;
    plan.seed = 11;
    check(std::abs(resampled_critical_value(three, 1, plan).value -
                   exact[ceiling_rank(6, level) - 1]) <= 1e-12,
          "3! oracle");
  }

  ResamplePlan plan;
  plan.mode = ResampleMode::with_replacement;
  plan.replications = 300;
  plan.seed = 12;
  const Sample series = pareto_draws(400, 13);
  check(resample(trimmed_centered(series, 6), plan, 17) ==
            resample(trimmed_centered(series, 6), plan, 17),
        "resample determinism");

  const SimulationSpec spec = table_spec(200, 2000, 14);
  PowerSpec power;
  power.base = table_spec(120, 500, 15);
  power.change_at = 60;
  power.critical_value = 1.3;
  const auto stats = null_statistics(spec, Execution::serial());
  const auto rows = critical_value_table(spec, std::vector<std::size_t>{100, 200},
                                         Execution::serial());
  const auto curve = power_curve(power, Execution::serial());
  const auto cv = resampled_critical_value(series, 6, plan, Execution::serial());
  const auto ex1 = example1_diagnostic(3000, 11, 200, 16, TailModel::one_sided(1.5),
                                       Execution::serial());
  const auto div = trim_trunc_divergence(3000, 11, 200, 17, TailModel::one_sided(1.5),
                                         Execution::serial());
  for (int workers : {1, 2, 8}) {
    const Execution exec = Execution::threads(workers);
    bool same = null_statistics(spec, exec) == stats;
    const auto r = critical_value_table(spec, std::vector<std::size_t>{100, 200}, exec);
    for (std::size_t i = 0; i < r.size(); ++i) {
      same = same && r[i].value == rows[i].value && r[i].standard_error == rows[i].standard_error;
    }
    const auto c = power_curve(power, exec);
    for (std::size_t i = 0; i < c.size(); ++i) same = same && c[i].rate == curve[i].rate;
    same = same && resampled_critical_value(series, 6, plan, exec).value == cv.value;
    const auto e = example1_diagnostic(3000, 11, 200, 16, TailModel::one_sided(1.5), exec);
    same = same && e.moments.mean == ex1.moments.mean &&
           e.moments.variance == ex1.moments.variance && e.ks_to_normal == ex1.ks_to_normal;
    const auto v = trim_trunc_divergence(3000, 11, 200, 17, TailModel::one_sided(1.5), exec);
    same = same && v.median_centered == div.median_centered &&
           v.median_uncentered == div.median_uncentered &&
           v.median_cusum_gap == div.median_cusum_gap;
    check(same, workers == 1 ? "1 worker" : (workers == 2 ? "2 workers" : "8 workers"));
  }

  std::string detail = "tied-down, centering, scale, kept-count (200 samples), 3! oracle, resample "
                       "determinism, bit-identical aggregates at 1/2/8 workers";
  if (!bad.empty()) {
    detail = "violated:";
    for (const auto& b : bad) detail += " " + b;
  }
  report(11, bad.empty(), detail);
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion1();
  const auto rows = criteria2and3();
  criterion4();
  criterion5();
  criterion6(rows[2].value);
  criterion7(rows[3].value);
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  std::printf("acceptance: %d of 11 criteria failed (%.1f s)\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
