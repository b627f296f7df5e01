#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "trimcusum/change_test.hpp"
#include "trimcusum/cli.hpp"
#include "trimcusum/errors.hpp"
#include "trimcusum/limit_dist.hpp"
#include "trimcusum/montecarlo.hpp"

namespace trimcusum::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kDefaultTableReps = 100000;
constexpr std::size_t kDefaultPowerReps = 10000;
constexpr std::size_t kDefaultResampleReps = 2000;
constexpr std::size_t kDefaultDiagnoseReps = 500;

// Reports carry 6 significant digits, tables full precision.
std::string report_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double report_number(double v) { return std::stod(report_text(v)); }

std::string table_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Family family_for(const RunConfig& c) {
  if (c.family) return *c.family;
  return c.subcommand == Subcommand::diagnose ? Family::one_sided_pareto
                                              : Family::two_sided_pareto;
}

TailModel model_for(const RunConfig& c) {
  switch (family_for(c)) {
    case Family::gaussian:
      return TailModel::gaussian();
    case Family::one_sided_pareto:
      return TailModel::one_sided(c.alpha);
    case Family::two_sided_pareto:
      break;
  }
  return TailModel::two_sided(c.alpha, c.p);
}

Execution execution_for(const RunConfig& c) { return Execution::threads(c.workers); }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// Everything that determines the output; worker count is deliberately absent.
Json config_echo(const RunConfig& c) {
  Json j;
  j["subcommand"] = to_string(c.subcommand);
  j["input"] = optional_json(c.input_path);
  j["d"] = optional_json(c.d);
  j["level"] = c.level;
  j["seed"] = c.seed;
  j["reps"] = optional_json(c.replications);
  j["family"] = to_string(family_for(c));
  j["alpha"] = c.alpha;
  j["p"] = c.p;
  j["resample_B"] = optional_json(c.resample_B);
  j["m"] = optional_json(c.m);
  j["mode"] = to_string(c.mode);
  j["n"] = c.n_list;
  j["k"] = optional_json(c.change_at);
  j["critical_value"] = optional_json(c.critical_value);
  return j;
}

Format format_for(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

std::size_t single_n(const RunConfig& c, std::size_t fallback) {
  if (c.n_list.size() > 1) throw UsageError("this subcommand takes a single --n");
  return c.n_list.empty() ? fallback : c.n_list.front();
}

Sample require_series(const RunConfig& c) {
  if (!c.input_path) throw UsageError("--input is required for '" + to_string(c.subcommand) + "'");
  return load_series(*c.input_path);
}

std::size_t depth_for(const RunConfig& c, std::size_t n) {
  const std::size_t d = c.d ? *c.d : default_trim_depth(n);
  if (d < 2 || d >= n) {
    throw UsageError("--d must satisfy 2 <= d < n (d=" + std::to_string(d) +
                     ", n=" + std::to_string(n) + ")");
  }
  return d;
}

ResamplePlan plan_for(const RunConfig& c, std::size_t replications) {
  ResamplePlan plan;
  plan.m = c.m;
  plan.mode = c.mode;
  plan.replications = replications;
  plan.level = c.level;
  plan.seed = c.seed;
  return plan;
}

int run_test(const RunConfig& c, std::ostream& out) {
  const Sample sample = require_series(c);
  const std::size_t d = depth_for(c, sample.size());
  const TestReport asymptotic = asymptotic_test(sample, d, c.level);
  TestReport report = asymptotic;
  if (c.resample_B) {
    report = resampled_test(sample, d, plan_for(c, *c.resample_B), execution_for(c));
  }

  if (format_for(c, Format::json) == Format::csv) {
    out << "n,d,statistic,critical_value,asymptotic_critical_value,level,reject,change_at,method\n";
    out << report.n << ',' << report.d << ',' << report_text(report.statistic) << ','
        << report_text(report.critical_value) << ','
        << report_text(asymptotic.critical_value) << ',' << report_text(report.level) << ','
        << (report.reject ? "true" : "false") << ',' << report.change_at << ','
        << to_string(report.method) << '\n';
  } else {
    Json j;
    j["config"] = config_echo(c);
    j["n"] = report.n;
    j["d"] = report.d;
    j["statistic"] = report_number(report.statistic);
    j["critical_value"] = report_number(report.critical_value);
    j["asymptotic_critical_value"] = report_number(asymptotic.critical_value);
    j["level"] = report.level;
    j["reject"] = report.reject;
    j["change_at"] = report.change_at;
    j["change_degenerate"] = report.change_degenerate;
    j["method"] = to_string(report.method);
    if (report.method == CriticalValueMethod::resampled) {
      j["resampled"] = {{"mode", to_string(c.mode)},
                        {"m", c.m.value_or(report.n)},
                        {"replications", report.resampled.replications},
                        {"critical_value", report_number(report.resampled.value)},
                        {"standard_error", report_number(report.resampled.standard_error)}};
    }
    out << j.dump(2) << '\n';
  }
  return report.reject ? kExitReject : kExitOk;
}

SimulationSpec simulation_for(const RunConfig& c, std::size_t n, std::size_t reps) {
  SimulationSpec spec;
  spec.model = model_for(c);
  spec.n = n;
  spec.d_rule = c.d ? TrimRule::fixed(*c.d) : TrimRule::pow03();
  spec.replications = reps;
  spec.level = c.level;
  spec.master_seed = c.seed;
  return spec;
}

int run_simulate(const RunConfig& c, std::ostream& out) {
  const std::vector<std::size_t> n_list =
      c.n_list.empty() ? std::vector<std::size_t>{100, 200, 400, 800} : c.n_list;
  const SimulationSpec spec =
      simulation_for(c, n_list.front(), c.replications.value_or(kDefaultTableReps));
  const auto rows = critical_value_table(spec, n_list, execution_for(c));

  if (format_for(c, Format::csv) == Format::json) {
    Json j;
    j["config"] = config_echo(c);
    Json table = Json::array();
    for (const auto& r : rows) {
      table.push_back({{"n", r.n ? Json(*r.n) : Json("inf")},
                       {"d", r.n ? Json(r.d) : Json(nullptr)},
                       {"critical_value", r.value},
                       {"standard_error", r.standard_error}});
    }
    j["rows"] = table;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "n,d,critical_value,standard_error\n";
  for (const auto& r : rows) {
    out << (r.n ? std::to_string(*r.n) : "inf") << ',' << (r.n ? std::to_string(r.d) : "") << ','
        << table_text(r.value) << ',' << table_text(r.standard_error) << '\n';
  }
  return kExitOk;
}

int run_power(const RunConfig& c, std::ostream& out) {
  const std::size_t n = single_n(c, 400);
  const std::size_t reps = c.replications.value_or(kDefaultPowerReps);
  PowerSpec spec;
  spec.base = simulation_for(c, n, reps);
  spec.change_at = c.change_at.value_or(n / 2);
  if (c.critical_value) {
    spec.critical_value = *c.critical_value;
  } else {
    // Same seed derivation as the `simulate` table row for this n.
    SimulationSpec null_spec = spec.base;
    null_spec.master_seed = derive_seed(c.seed, n);
    std::vector<double> stats = null_statistics(null_spec, execution_for(c));
    spec.critical_value = empirical_quantile(stats, c.level);
  }
  const auto points = power_curve(spec, execution_for(c));

  if (format_for(c, Format::csv) == Format::json) {
    Json j;
    j["config"] = config_echo(c);
    j["critical_value"] = spec.critical_value;
    Json arr = Json::array();
    for (const auto& p : points) {
      arr.push_back({{"shift", p.shift}, {"power", p.rate}, {"standard_error", p.standard_error}});
    }
    j["points"] = arr;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "shift,power\n";
  for (const auto& p : points) out << table_text(p.shift) << ',' << table_text(p.rate) << '\n';
  return kExitOk;
}

int run_resample(const RunConfig& c, std::ostream& out) {
  const Sample sample = require_series(c);
  const std::size_t d = depth_for(c, sample.size());
  const std::size_t reps = c.resample_B.value_or(c.replications.value_or(kDefaultResampleReps));
  const ResamplePlan plan = plan_for(c, reps);
  const auto est = resampled_critical_value(sample, d, plan, execution_for(c));
  const std::size_t m = plan.size_for(sample.size());

  if (format_for(c, Format::csv) == Format::json) {
    Json j;
    j["config"] = config_echo(c);
    j["mode"] = to_string(c.mode);
    j["m"] = m;
    j["d"] = d;
    j["replications"] = est.replications;
    j["level"] = est.level;
    j["critical_value"] = est.value;
    j["standard_error"] = est.standard_error;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "mode,m,d,replications,level,critical_value,standard_error\n";
  out << to_string(c.mode) << ',' << m << ',' << d << ',' << est.replications << ','
      << table_text(est.level) << ',' << table_text(est.value) << ','
      << table_text(est.standard_error) << '\n';
  return kExitOk;
}

int run_diagnose(const RunConfig& c, std::ostream& out) {
  const std::size_t n = single_n(c, 10000);
  const std::size_t d = depth_for(c, n);
  const std::size_t reps = c.replications.value_or(kDefaultDiagnoseReps);
  const TailModel model = model_for(c);
  if (!model.is_pareto()) throw UsageError("diagnose needs a Pareto family");

  Json j;
  j["config"] = config_echo(c);
  j["n"] = n;
  j["d"] = d;
  if (model.family() == Family::one_sided_pareto) {
    const auto ex = example1_diagnostic(n, d, reps, c.seed, model, execution_for(c));
    j["example1"] = {{"replications", ex.moments.count},
                     {"mean", report_number(ex.moments.mean)},
                     {"variance", ex.moments.variance ? Json(report_number(*ex.moments.variance))
                                                      : Json(nullptr)},
                     {"ks_to_normal", report_number(ex.ks_to_normal)}};
  } else {
    j["example1"] = nullptr;
  }
  const auto div = trim_trunc_divergence(n, d, reps, c.seed, model, execution_for(c));
  j["divergence"] = {{"replications", div.replications},
                     {"median_centered_gap", report_number(div.median_centered)},
                     {"median_uncentered_gap", report_number(div.median_uncentered)},
                     {"median_cusum_gap", report_number(div.median_cusum_gap)}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_quantile(const RunConfig& c, std::ostream& out) {
  const double q = sup_bridge_quantile(c.level);
  if (c.format == Format::json) {
    Json j;
    j["config"] = config_echo(c);
    j["level"] = c.level;
    j["quantile"] = report_number(q);
    out << j.dump(2) << '\n';
  } else {
    out << report_text(q) << '\n';
  }
  return kExitOk;
}

}  // namespace

std::string to_string(Subcommand sub) {
  switch (sub) {
    case Subcommand::test:
      return "test";
    case Subcommand::simulate:
      return "simulate";
    case Subcommand::power:
      return "power";
    case Subcommand::resample:
      return "resample";
    case Subcommand::diagnose:
      return "diagnose";
    case Subcommand::quantile:
      return "quantile";
  }
  return "unknown";
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  CLI::App app{"Trimmed CUSUM change-point test for heavy-tailed data"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string input, output, family, format, mode = "permutation";
  std::size_t d = 0, reps = 0, resample_b = 0, m = 0, k = 0;
  double critical = 0.0;

  struct Registered {
    CLI::App* app;
    Subcommand sub;
    std::vector<CLI::Option*> opts;
  };
  std::vector<Registered> subs;

  auto add = [&](const char* name, Subcommand sub, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    Registered r{s, sub, {}};
    r.opts.push_back(s->add_option("--input", input, "Series file, one value per line"));
    r.opts.push_back(s->add_option("--output", output, "Write the report here instead of stdout"));
    r.opts.push_back(s->add_option("--d", d, "Trim depth (default max(2, floor(n^0.3)))"));
    s->add_option("--level", cfg.level, "Confidence level 1-alpha")->check(CLI::Range(0.0, 1.0));
    s->add_option("--seed", cfg.seed, "Master seed");
    r.opts.push_back(s->add_option("--reps", reps, "Monte Carlo replications"));
    s->add_option("--alpha", cfg.alpha, "Tail index");
    s->add_option("--p", cfg.p, "Right-tail weight (q = 1 - p)");
    r.opts.push_back(s->add_option("--family", family, "two_sided_pareto|one_sided_pareto|gaussian"));
    r.opts.push_back(s->add_option("--format", format, "json|csv")
                         ->check(CLI::IsMember({"json", "csv"})));
    r.opts.push_back(s->add_option("--resample-B", resample_b, "Resampling replications"));
    r.opts.push_back(s->add_option("--m", m, "Resample size (default n)"));
    s->add_option("--mode", mode, "bootstrap|permutation")
        ->check(CLI::IsMember({"bootstrap", "permutation"}));
    s->add_option("--workers", cfg.workers, "OpenMP worker threads (0 = runtime default)");
    s->add_option("--n", cfg.n_list, "Sample size(s)")->delimiter(',');
    r.opts.push_back(s->add_option("--k", k, "Change location for power curves (default n/2)"));
    r.opts.push_back(
        s->add_option("--critical-value", critical, "Critical value for power curves"));
    subs.push_back(r);
  };
  add("test", Subcommand::test, "Run the trimmed CUSUM test on a series");
  add("simulate", Subcommand::simulate, "Simulate null critical values");
  add("power", Subcommand::power, "Empirical power curve (CSV: shift,power)");
  add("resample", Subcommand::resample, "Bootstrap / permutation critical value for a series");
  add("diagnose", Subcommand::diagnose, "Trimmed-vs-truncated diagnostics");
  add("quantile", Subcommand::quantile, "Asymptotic critical value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& r : subs) {
    if (!r.app->parsed()) continue;
    cfg.subcommand = r.sub;
    // opts: input, output, d, reps, family, format, resample-B, m, k, critical-value
    if (r.opts[0]->count()) cfg.input_path = input;
    if (r.opts[1]->count()) cfg.output_path = output;
    if (r.opts[2]->count()) cfg.d = d;
    if (r.opts[3]->count()) cfg.replications = reps;
    if (r.opts[4]->count()) {
      try {
        cfg.family = family_from_string(family);
      } catch (const DomainError& e) {
        throw UsageError(e.what());
      }
    }
    if (r.opts[5]->count()) cfg.format = format == "csv" ? Format::csv : Format::json;
    if (r.opts[6]->count()) cfg.resample_B = resample_b;
    if (r.opts[7]->count()) cfg.m = m;
    if (r.opts[8]->count()) cfg.change_at = k;
    if (r.opts[9]->count()) cfg.critical_value = critical;
  }
  cfg.mode = resample_mode_from_string(mode);
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw UsageError("--level must lie in (0,1)");
  return cfg;
}

void apply_environment(RunConfig& config, const char* env_value) {
  if (env_value == nullptr || *env_value == '\0') return;
  try {
    std::size_t pos = 0;
    const int workers = std::stoi(env_value, &pos);
    if (pos != std::string(env_value).size() || workers < 0) throw std::invalid_argument("");
    config.workers = workers;
  } catch (const std::exception&) {
    throw UsageError(std::string(kWorkersEnv) + " must be a non-negative integer");
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::unique_ptr<std::ofstream> file;
  std::ostream* sink = &out;
  if (config.output_path) {
    file = std::make_unique<std::ofstream>(*config.output_path);
    if (!*file) {
      err << "error: cannot open output file '" << *config.output_path << "'\n";
      return kExitData;
    }
    sink = file.get();
  }
  try {
    switch (config.subcommand) {
      case Subcommand::test:
        return run_test(config, *sink);
      case Subcommand::simulate:
        return run_simulate(config, *sink);
      case Subcommand::power:
        return run_power(config, *sink);
      case Subcommand::resample:
        return run_resample(config, *sink);
      case Subcommand::diagnose:
        return run_diagnose(config, *sink);
      case Subcommand::quantile:
        return run_quantile(config, *sink);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const DegenerateSampleError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedModelError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_command_line(argc, argv, out);
    if (!config) return kExitOk;
    apply_environment(*config, std::getenv(kWorkersEnv));
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run(*config, out, err);
}

}  // namespace trimcusum::cli
