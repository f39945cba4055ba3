// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "gcn/engine.hpp"
#include "gcn/report.hpp"
#include "gcn/solver.hpp"
#include "random_instances.hpp"

namespace fs = std::filesystem;
using namespace gcn;

namespace {

const fs::path kData = GCN_DATA_DIR;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Case {
  MilpInstance inst;
  bool complete = false;
  bool ample = false;
  Solution optimum;
};

// 200 structurally feasible instances with their brute-force optimum.
std::vector<Case> instances() {
  std::vector<Case> cases;
  std::mt19937_64 rng(2024);
  while (cases.size() < 200) {
    const auto shape = testing::random_shape(rng);
    MilpInstance inst = testing::random_instance(rng, shape);
    try {
      Solution opt = brute_force(inst);
      cases.push_back({std::move(inst), shape.complete_sets, shape.ample_capacity, std::move(opt)});
    } catch (const InfeasibleError&) {
    }
  }
  return cases;
}

// Every run the acceptance suite accepts, for the SLA criterion.
std::vector<const RunResult*> accepted;

double slot_savings(const RunResult& g, const RunResult& f, std::size_t s) {
  return f.slots[s].ongrid_energy_approx - g.slots[s].ongrid_energy_approx;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const std::vector<Case> cases = instances();

  report(1, "solver exactness", [&] {
    const auto t0 = Clock::now();
    std::size_t proven = 0, mismatches = 0;
    for (const Case& c : cases) {
      const Solution s = solve(c.inst);
      if (!s.proven_optimal) continue;
      ++proven;
      if (s.objective != c.optimum.objective) ++mismatches;
    }
    const double secs = seconds_since(t0);
    return Outcome{proven > 0 && mismatches == 0 && secs < 30.0,
                   fmt("%zu/200 proven, %zu mismatches vs brute force, %.2f s", proven,
                       mismatches, secs)};
  });

  report(2, "bound admissibility", [&] {
    std::size_t violations = 0, tight_cases = 0, not_tight = 0;
    for (const Case& c : cases) {
      const BnbNode root = make_node(c.inst, std::vector<std::optional<CloudletIndex>>(
                                                 c.inst.weights().size()));
      const double b = aggregate_bound(root, c.inst);
      if (b > c.optimum.objective) ++violations;
      const double absorbed = std::max(
          0.0, std::accumulate(c.inst.weights().begin(), c.inst.weights().end(), 0.0) -
                   std::accumulate(c.inst.green_power().begin(), c.inst.green_power().end(), 0.0));
      if (c.complete && c.ample && c.optimum.objective == absorbed) {
        ++tight_cases;
        if (b != c.optimum.objective) ++not_tight;
      }
    }
    return Outcome{violations == 0 && not_tight == 0,
                   fmt("%zu bound violations; %zu/%zu tight cases not equal", violations,
                       not_tight, tight_cases)};
  });

  report(3, "partition instance", [] {
    const auto inst = MilpInstance::create({3, 3, 4, 4}, std::vector<std::vector<CloudletIndex>>(4, {0, 1}),
                                           {7, 7}, {4, 4});
    const Solution s = solve(inst);
    return Outcome{s.objective == 0.0 && s.proven_optimal,
                   fmt("objective %.9g, proven %d", s.objective, int(s.proven_optimal))};
  });

  const ScenarioConfig desk = load_scenario_config(kData / "configs/desk.cfg");
  const SolarTrace bell = load_solar_trace(kData / "traces/bell.csv");
  const SolarTrace dark{};
  const RunResult day_gear = run(desk, bell, StrategyKind::gear);
  const RunResult day_far = run(desk, bell, StrategyKind::far);
  accepted = {&day_gear, &day_far};

  report(4, "per-slot dominance", [&] {
    std::size_t worse = 0;
    for (std::size_t s = 0; s < day_gear.slots.size(); ++s) {
      if (day_gear.slots[s].ongrid_energy_approx > day_far.slots[s].ongrid_energy_approx) ++worse;
    }
    const double sv = savings(day_gear, day_far);
    return Outcome{worse == 0 && sv > 0.0 && day_gear.slots.size() == 96,
                   fmt("%zu slots where GEAR > FAR; daily GEAR %.3f Wh, FAR %.3f Wh, savings %.3f Wh",
                       worse, day_gear.ongrid_energy_approx, day_far.ongrid_energy_approx, sv)};
  });

  const RunResult dark_gear = run(desk, dark, StrategyKind::gear);
  const RunResult dark_far = run(desk, dark, StrategyKind::far);
  accepted.push_back(&dark_gear);
  accepted.push_back(&dark_far);

  report(5, "zero-green equality", [&] {
    std::size_t dark_slots = 0, nonzero = 0;
    for (std::size_t s = 0; s < day_gear.slots.size(); ++s) {
      if (bell.hourly_irradiance[hour_of_slot(s, 0.25)] != 0.0) continue;
      ++dark_slots;
      if (slot_savings(day_gear, day_far, s) != 0.0) ++nonzero;
    }
    const bool equal = dark_gear.ongrid_energy_approx == dark_far.ongrid_energy_approx;
    return Outcome{equal && nonzero == 0 && dark_slots > 0,
                   fmt("dark-trace totals %s (%.6f Wh); %zu/%zu zero-irradiance slots with nonzero savings",
                       equal ? "bit-equal" : "differ", dark_gear.ongrid_energy_approx, nonzero,
                       dark_slots)};
  });

  // Sweeps for criteria 7 and 8; every run joins the SLA and conservation sets.
  std::vector<RunResult> sweep_runs;
  sweep_runs.reserve(2 * (8 + 4));
  std::vector<std::size_t> ue_values;
  for (std::size_t n = 50; n <= 400; n += 50) {
    ScenarioConfig cfg = desk;
    cfg.ue_count = n;
    ue_values.push_back(n);
    sweep_runs.push_back(run(cfg, bell, StrategyKind::gear));
    sweep_runs.push_back(run(cfg, bell, StrategyKind::far));
  }
  const std::vector<double> kappas{0.0, 0.1, 0.2, 0.3};
  for (double k : kappas) {
    ScenarioConfig cfg = desk;
    cfg.kappa = k;
    sweep_runs.push_back(run(cfg, bell, StrategyKind::gear));
    sweep_runs.push_back(run(cfg, bell, StrategyKind::far));
  }
  for (const RunResult& r : sweep_runs) accepted.push_back(&r);

  report(6, "conservation", [&] {
    std::size_t checked = 0, violations = 0;
    for (const RunResult* r : accepted) {
      for (const SlotMetrics& m : r->slots) {
        ++checked;
        const double floor =
            0.25 * std::max(0.0, m.total_power_approx - m.total_green);
        if (m.ongrid_energy_approx < floor - 1e-6) ++violations;
      }
    }
    return Outcome{violations == 0, fmt("%zu violations over %zu slots", violations, checked)};
  });

  report(7, "UE-sweep saturation", [&] {
    std::vector<double> sv;
    std::size_t sat = ue_values.size();
    for (std::size_t i = 0; i < ue_values.size(); ++i) {
      const RunResult& g = sweep_runs[2 * i];
      const RunResult& f = sweep_runs[2 * i + 1];
      sv.push_back(savings(g, f));
      bool saturated = true;
      for (const SlotMetrics& m : g.slots) {
        if (m.total_green > 0.0 && !(m.total_power_approx > m.total_green)) saturated = false;
      }
      if (saturated && sat == ue_values.size()) sat = i;
    }
    const std::size_t rise_end = std::min(sat, ue_values.size() - 1);
    bool rising = true;
    for (std::size_t i = 1; i <= rise_end; ++i) rising = rising && sv[i] >= sv[i - 1];
    const double peak = *std::max_element(sv.begin(), sv.end());
    double spread = 0.0;
    if (sat < ue_values.size()) {
      const auto [lo, hi] = std::minmax_element(sv.begin() + sat, sv.end());
      spread = *hi - *lo;
    }
    const bool flat = spread < 0.05 * peak;
    std::string series;
    for (std::size_t i = 0; i < sv.size(); ++i) {
      series += fmt("%s%zu:%.1f", i ? " " : "", ue_values[i], sv[i]);
    }
    const std::string where = sat < ue_values.size()
                                  ? fmt("saturation at %zu UEs, post-saturation spread %.1f Wh",
                                        ue_values[sat], spread)
                                  : std::string("saturation not reached by 400 UEs, no post-saturation points");
    return Outcome{rising && flat, fmt("savings Wh {%s}; %s", series.c_str(), where.c_str())};
  });

  report(8, "kappa-sweep monotonicity", [&] {
    const std::size_t base = 2 * ue_values.size();
    bool ok = true;
    std::string series;
    for (std::size_t i = 0; i < kappas.size(); ++i) {
      const RunResult& g = sweep_runs[base + 2 * i];
      const RunResult& f = sweep_runs[base + 2 * i + 1];
      series += fmt("%s%.1f:FAR %.1f/%.1f sv %.1f/%.1f", i ? "; " : "", kappas[i],
                    f.ongrid_energy_approx, f.ongrid_energy_exact, savings(g, f),
                    f.ongrid_energy_exact - g.ongrid_energy_exact);
      if (i == 0) continue;
      const RunResult& pg = sweep_runs[base + 2 * (i - 1)];
      const RunResult& pf = sweep_runs[base + 2 * (i - 1) + 1];
      ok = ok && f.ongrid_energy_approx >= pf.ongrid_energy_approx;
      ok = ok && savings(g, f) >= savings(pg, pf);
      ok = ok && f.ongrid_energy_exact >= 0.99 * pf.ongrid_energy_exact;
      const double sv_exact = f.ongrid_energy_exact - g.ongrid_energy_exact;
      const double prev_exact = pf.ongrid_energy_exact - pg.ongrid_energy_exact;
      ok = ok && sv_exact >= prev_exact - 0.01 * std::abs(prev_exact);
    }
    return Outcome{ok, "approx/exact Wh {" + series + "}"};
  });

  report(9, "SLA", [&] {
    std::size_t violations = 0;
    double worst = 0.0;
    for (const RunResult* r : accepted) {
      worst = std::max(worst, r->max_delay);
      for (const SlotMetrics& m : r->slots) violations += m.sla_violations;
    }
    return Outcome{violations == 0 && worst <= 10.0,
                   fmt("%zu runs, %zu violations, worst delay %.2f ms", accepted.size(),
                       violations, worst)};
  });

  report(10, "determinism and runtime", [&] {
    const fs::path dir = fs::temp_directory_path() / "gcn_acceptance";
    fs::remove_all(dir);
    cli::RunOptions o;
    o.config = kData / "configs/desk.cfg";
    o.trace = kData / "traces/bell.csv";
    o.node_limit = 100000;
    std::ostringstream err;
    const auto t0 = Clock::now();
    o.out = dir / "a";
    const int a = cli::cmd_run(o, err);
    const double secs = seconds_since(t0);
    o.out = dir / "b";
    const int b = cli::cmd_run(o, err);
    const bool same = read_file(dir / "a/slots.csv") == read_file(dir / "b/slots.csv") &&
                      read_file(dir / "a/summary.csv") == read_file(dir / "b/summary.csv") &&
                      !read_file(dir / "a/slots.csv").empty();
    fs::remove_all(dir);
    return Outcome{a == 0 && b == 0 && same && secs < 300.0,
                   fmt("exit %d/%d, outputs %s, one day (both strategies) %.2f s", a, b,
                       same ? "byte-identical" : "differ", secs)};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
