#include "gcn/report.hpp"

#include <charconv>
#include <ostream>

namespace gcn {
namespace {

// Shortest round-trip form, used for sweep values such as 600 or 0.1.
std::string format_short(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

const RunResult* find(std::span<const RunResult> runs, StrategyKind kind) {
  const RunResult* hit = nullptr;
  for (const RunResult& r : runs) {
    if (r.strategy == kind) {
      if (hit) return nullptr;
      hit = &r;
    }
  }
  return hit;
}

}  // namespace

std::string_view strategy_name(StrategyKind kind) {
  return kind == StrategyKind::gear ? "gear" : "far";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) {
  if (name == "gear") return StrategyKind::gear;
  if (name == "far") return StrategyKind::far;
  return std::nullopt;
}

std::string format_fixed(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
  std::string s(buf, ptr);
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

double savings(const RunResult& gear, const RunResult& far) {
  return far.ongrid_energy_approx - gear.ongrid_energy_approx;
}

double savings_percent(const RunResult& gear, const RunResult& far) {
  if (far.ongrid_energy_approx <= 0.0) return 0.0;
  return 100.0 * savings(gear, far) / far.ongrid_energy_approx;
}

void write_slots_csv(std::ostream& out, std::span<const RunResult> runs) {
  const RunResult* gear = find(runs, StrategyKind::gear);
  const RunResult* far = find(runs, StrategyKind::far);
  const bool paired = runs.size() == 2 && gear && far;

  out << kSlotsHeader;
  if (paired) out << ',' << kSavingsColumn;
  out << '\n';

  std::size_t slots = 0;
  for (const RunResult& r : runs) slots = std::max(slots, r.slots.size());
  for (std::size_t t = 0; t < slots; ++t) {
    for (const RunResult& r : runs) {
      if (t >= r.slots.size()) continue;
      const SlotMetrics& m = r.slots[t];
      out << m.slot << ',' << strategy_name(r.strategy) << ','
          << format_fixed(m.total_power_exact) << ','
          << format_fixed(m.total_power_approx) << ',' << format_fixed(m.total_green)
          << ',' << format_fixed(m.ongrid_energy_exact) << ','
          << format_fixed(m.ongrid_energy_approx) << ',' << m.migrations << ','
          << format_fixed(m.max_delay);
      if (paired) {
        out << ','
            << format_fixed(far->slots.at(t).ongrid_energy_approx -
                            gear->slots.at(t).ongrid_energy_approx);
      }
      out << '\n';
    }
  }
}

void write_summary_csv(std::ostream& out, std::span<const RunResult> runs) {
  const RunResult* gear = find(runs, StrategyKind::gear);
  const RunResult* far = find(runs, StrategyKind::far);
  const bool paired = runs.size() == 2 && gear && far;

  out << kSummaryHeader << '\n';
  for (const RunResult& r : runs) {
    out << strategy_name(r.strategy) << ',' << r.seed() << ',' << r.config.ue_count
        << ',' << format_fixed(r.config.kappa) << ',' << r.slots.size() << ','
        << format_fixed(r.ongrid_energy_exact) << ','
        << format_fixed(r.ongrid_energy_approx) << ',' << r.migrations << ','
        << format_fixed(r.max_delay) << ',';
    if (paired) {
      out << format_fixed(savings(*gear, *far)) << ','
          << format_fixed(savings_percent(*gear, *far));
    } else {
      out << ',';
    }
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& row : rows) {
    out << row.variable << ',' << format_short(row.value) << ','
        << strategy_name(row.strategy) << ',' << row.seed << ',';
    if (row.result) {
      out << format_fixed(row.result->ongrid_energy_exact) << ','
          << format_fixed(row.result->ongrid_energy_approx) << ','
          << row.result->migrations << ',' << format_fixed(row.savings_wh) << ','
          << format_fixed(row.savings_pct);
    } else {
      out << ",,,,";
    }
    out << ',' << row.status << '\n';
  }
}

}  // namespace gcn
