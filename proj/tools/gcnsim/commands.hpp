#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gcn/report.hpp"

namespace gcn::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kInfeasible = 2 };

struct RunOptions {
  std::optional<std::filesystem::path> config;  // defaults when absent
  std::filesystem::path trace;
  std::string strategy = "both";  // gear | far | both
  std::optional<std::uint64_t> seed;
  std::filesystem::path out = ".";
  std::size_t node_limit = 100000;
  double gap = 0.0;
};

enum class SweepVariable { ue_count, kappa };

struct SweepSpec {
  SweepVariable variable = SweepVariable::ue_count;
  std::vector<double> values;

  /// 600..1400 step 100 for UE counts, {0, 0.1, 0.2, 0.3} for kappa.
  static SweepSpec defaults(SweepVariable variable);
  void validate() const;
};

std::string_view variable_name(SweepVariable variable);

/// Both strategies at every sweep value under one seed. A point whose run
/// fails yields rows with an empty result and a non-"ok" status.
std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SolarTrace& trace,
                                const SweepSpec& sweep, const SolverConfig& solver);

/// Writes slots.csv and summary.csv into options.out.
int cmd_run(const RunOptions& options, std::ostream& err);

/// Writes sweep.csv into options.out. Returns kInfeasible when any point
/// failed, after the file has been written.
int cmd_sweep(const RunOptions& options, const SweepSpec& sweep, std::ostream& err);

/// Full command line: `run`, `sweep-ues`, `sweep-kappa`.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gcn::cli
