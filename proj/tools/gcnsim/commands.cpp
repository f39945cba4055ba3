#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gcn/error.hpp"

namespace gcn::cli {
namespace {

struct Loaded {
  ScenarioConfig config;
  SolarTrace trace;
  SolverConfig solver;
};

Loaded load(const RunOptions& options) {
  Loaded l;
  if (options.config) l.config = load_scenario_config(*options.config);
  if (options.seed) l.config.rng_seed = *options.seed;
  l.config.validate();
  if (options.trace.empty()) throw ConfigError("--trace is required");
  l.trace = load_solar_trace(options.trace);
  if (options.node_limit < 1) throw ConfigError("--node-limit must be >= 1");
  if (!(options.gap >= 0.0)) throw ConfigError("--gap must be >= 0");
  l.solver.node_limit = options.node_limit;
  l.solver.gap_tolerance = options.gap;
  return l;
}

std::ofstream open_output(const std::filesystem::path& dir, const char* name) {
  std::filesystem::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw Error("cannot write " + (dir / name).string());
  return f;
}

void close_output(std::ofstream& f, const std::filesystem::path& dir, const char* name) {
  f.close();
  if (!f) throw Error("failed writing " + (dir / name).string());
}

// Maps exceptions to exit codes: infeasibility is 2, everything else 1.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace

SweepSpec SweepSpec::defaults(SweepVariable variable) {
  SweepSpec s;
  s.variable = variable;
  if (variable == SweepVariable::ue_count) {
    for (int n = 600; n <= 1400; n += 100) s.values.push_back(n);
  } else {
    s.values = {0.0, 0.1, 0.2, 0.3};
  }
  return s;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  for (double v : values) {
    if (variable == SweepVariable::ue_count) {
      if (!(v >= 1.0) || std::floor(v) != v) {
        throw ConfigError("ue_count sweep values must be positive integers");
      }
    } else if (!(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("kappa sweep values must lie in [0, 1]");
    }
  }
}

std::string_view variable_name(SweepVariable variable) {
  return variable == SweepVariable::ue_count ? "ue_count" : "kappa";
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SolarTrace& trace,
                                const SweepSpec& sweep, const SolverConfig& solver) {
  sweep.validate();
  std::vector<SweepRow> rows;
  for (double value : sweep.values) {
    ScenarioConfig cfg = base;
    if (sweep.variable == SweepVariable::ue_count) {
      cfg.ue_count = static_cast<std::size_t>(value);
    } else {
      cfg.kappa = value;
    }
    SweepRow gear_row;
    gear_row.variable = variable_name(sweep.variable);
    gear_row.value = value;
    gear_row.seed = cfg.rng_seed;
    SweepRow far_row = gear_row;
    far_row.strategy = StrategyKind::far;
    try {
      gear_row.result = run(cfg, trace, StrategyKind::gear, solver);
      far_row.result = run(cfg, trace, StrategyKind::far, solver);
      const double s = savings(*gear_row.result, *far_row.result);
      const double pct = savings_percent(*gear_row.result, *far_row.result);
      gear_row.savings_wh = far_row.savings_wh = s;
      gear_row.savings_pct = far_row.savings_pct = pct;
    } catch (const InfeasibleError&) {
      gear_row.result.reset();
      far_row.result.reset();
      gear_row.status = far_row.status = "infeasible";
    } catch (const Error&) {
      gear_row.result.reset();
      far_row.result.reset();
      gear_row.status = far_row.status = "error";
    }
    rows.push_back(std::move(gear_row));
    rows.push_back(std::move(far_row));
  }
  return rows;
}

int cmd_run(const RunOptions& options, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<StrategyKind> kinds;
    if (options.strategy == "both") {
      kinds = {StrategyKind::gear, StrategyKind::far};
    } else if (auto k = parse_strategy(options.strategy)) {
      kinds = {*k};
    } else {
      throw ConfigError("--strategy must be gear, far or both");
    }
    const Loaded l = load(options);

    std::vector<RunResult> results;
    for (StrategyKind k : kinds) results.push_back(run(l.config, l.trace, k, l.solver));

    auto slots = open_output(options.out, "slots.csv");
    write_slots_csv(slots, results);
    close_output(slots, options.out, "slots.csv");
    auto summary = open_output(options.out, "summary.csv");
    write_summary_csv(summary, results);
    close_output(summary, options.out, "summary.csv");
    return int{kOk};
  });
}

int cmd_sweep(const RunOptions& options, const SweepSpec& sweep, std::ostream& err) {
  return guarded(err, [&] {
    sweep.validate();
    const Loaded l = load(options);
    const auto rows = run_sweep(l.config, l.trace, sweep, l.solver);

    auto f = open_output(options.out, "sweep.csv");
    write_sweep_csv(f, rows);
    close_output(f, options.out, "sweep.csv");

    int code = kOk;
    for (const SweepRow& r : rows) {
      if (r.status != "ok") {
        err << "sweep point " << variable_name(sweep.variable) << '=' << r.value
            << " (" << strategy_name(r.strategy) << "): " << r.status << '\n';
        code = kInfeasible;
      }
    }
    return code;
  });
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Green cloudlet network simulator: GEAR vs FAR Avatar placement"};
  app.require_subcommand(1);

  RunOptions options;
  std::string config_path;
  std::uint64_t seed = 0;
  std::vector<double> values;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Scenario config file (key = value)");
    cmd->add_option("--trace", options.trace, "Hourly solar trace CSV")->required();
    cmd->add_option("--seed", seed, "RNG seed (overrides rng_seed)");
    cmd->add_option("--out", options.out, "Output directory");
    cmd->add_option("--node-limit", options.node_limit,
                    "Branch-and-Bound node budget per slot");
    cmd->add_option("--gap", options.gap, "Relative optimality gap tolerance");
  };

  auto* run_cmd = app.add_subcommand("run", "Simulate one day");
  add_common(run_cmd);
  run_cmd->add_option("--strategy", options.strategy, "gear, far or both")
      ->check(CLI::IsMember({"gear", "far", "both"}));

  auto* ues_cmd = app.add_subcommand("sweep-ues", "Daily totals over UE counts");
  add_common(ues_cmd);
  ues_cmd->add_option("--values", values, "UE counts (default 600..1400 step 100)")
      ->delimiter(',');

  auto* kappa_cmd = app.add_subcommand("sweep-kappa", "Daily totals over kappa");
  add_common(kappa_cmd);
  kappa_cmd->add_option("--values", values, "Kappa values (default 0,0.1,0.2,0.3)")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  auto* active = app.get_subcommands().front();
  if (!config_path.empty()) options.config = config_path;
  if (active->count("--seed") > 0) options.seed = seed;

  if (active == run_cmd) return cmd_run(options, err);

  SweepSpec sweep = SweepSpec::defaults(active == ues_cmd ? SweepVariable::ue_count
                                                          : SweepVariable::kappa);
  if (!values.empty()) sweep.values = values;
  return cmd_sweep(options, sweep, err);
}

}  // namespace gcn::cli
