#pragma once

// CSV serialisation of simulation results. Numbers use '.' as the decimal
// separator and exactly six fractional digits regardless of locale.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gcn/engine.hpp"

namespace gcn {

inline constexpr std::string_view kSlotsHeader =
    "slot,strategy,total_power_exact_w,total_power_approx_w,total_green_w,"
    "ongrid_exact_wh,ongrid_approx_wh,migrations,max_delay_ms";
inline constexpr std::string_view kSavingsColumn = "savings_wh";
inline constexpr std::string_view kSummaryHeader =
    "strategy,seed,ue_count,kappa,slot_count,ongrid_exact_wh,ongrid_approx_wh,"
    "migrations,max_delay_ms,savings_wh,savings_pct";
inline constexpr std::string_view kSweepHeader =
    "variable,value,strategy,seed,ongrid_exact_wh,ongrid_approx_wh,migrations,"
    "savings_wh,savings_pct,status";

std::string_view strategy_name(StrategyKind kind);
std::optional<StrategyKind> parse_strategy(std::string_view name);

/// Fixed-point, six fractional digits, never "-0.000000".
std::string format_fixed(double value);

/// FAR minus GEAR on the approximate on-grid metric.
double savings(const RunResult& gear, const RunResult& far);
double savings_percent(const RunResult& gear, const RunResult& far);

/// One row per (slot, run), slot-major. With exactly one GEAR and one FAR run
/// a trailing savings_wh column holds FAR - GEAR approximate energy per slot.
void write_slots_csv(std::ostream& out, std::span<const RunResult> runs);

/// One totals row per run.
void write_summary_csv(std::ostream& out, std::span<const RunResult> runs);

struct SweepRow {
  std::string variable;  // "ue_count" or "kappa"
  double value = 0.0;
  StrategyKind strategy = StrategyKind::gear;
  std::uint64_t seed = 0;
  std::optional<RunResult> result;  // empty when the point failed
  double savings_wh = 0.0;
  double savings_pct = 0.0;
  std::string status = "ok";
};

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace gcn
