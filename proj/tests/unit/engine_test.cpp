#include "gcn/engine.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace gcn {
namespace {

const std::filesystem::path kData = GCN_DATA_DIR;

SolarTrace bell() { return load_solar_trace(kData / "traces/bell.csv"); }
SolarTrace dark() { return SolarTrace{}; }

ScenarioConfig small(std::size_t ues = 60) {
  ScenarioConfig cfg;
  cfg.ue_count = ues;
  cfg.rng_seed = 11;
  return cfg;
}

Network one_site_network() {
  return Network{SiteTopology({{0.0, 0.0}}), {CloudletSpec{4}}, PowerParams{}, DelayParams{}};
}

TEST(SlotMetrics, ExactVersusApproxOnOneCloudlet) {
  const Network net = one_site_network();
  SlotState state{net, {}, {0.0}, {}};
  for (AvatarId k = 0; k < 17; ++k) state.loads.push_back({k, 10.0, 0});
  StrategyOutcome outcome{Assignment{std::vector<CloudletIndex>(17, 0)}, 0, std::nullopt};
  const SlotMetrics m = compute_slot_metrics(state, outcome, 3);
  EXPECT_EQ(m.slot, 3u);
  EXPECT_NEAR(m.total_power_exact, 199.1, 1e-9);
  EXPECT_NEAR(m.total_power_approx, 124.1, 1e-5);
  EXPECT_NEAR(m.ongrid_energy_exact, 49.775, 1e-9);
  EXPECT_NEAR(m.ongrid_energy_approx, 31.025, 1e-5);
  EXPECT_EQ(m.max_delay, 0.0);
  EXPECT_EQ(m.sla_violations, 0u);
}

TEST(SlotMetrics, GreenCoversDemand) {
  const Network net = one_site_network();
  SlotState state{net, {{0, 50.0, 0}}, {1000.0}, {}};
  const SlotMetrics m =
      compute_slot_metrics(state, {Assignment{{0}}, 0, std::nullopt}, 0);
  EXPECT_EQ(m.ongrid_energy_exact, 0.0);
  EXPECT_EQ(m.ongrid_energy_approx, 0.0);
  EXPECT_DOUBLE_EQ(m.total_green, 1000.0);
}

TEST(SlotMetrics, CountsSlaViolations) {
  const Network net{SiteTopology({{0.0, 0.0}, {5.0, 0.0}}),
                    {CloudletSpec{1}, CloudletSpec{1}}, PowerParams{}, DelayParams{}};
  SlotState state{net, {{0, 20.0, 0}, {1, 20.0, 1}}, {0.0, 0.0}, {}};
  const SlotMetrics m =
      compute_slot_metrics(state, {Assignment{{1, 1}}, 0, std::nullopt}, 0);
  EXPECT_NEAR(m.max_delay, 16.65, 1e-9);
  EXPECT_EQ(m.sla_violations, 1u);
}

TEST(Run, EmptyWorldIsAllZero) {
  ScenarioConfig cfg = small(0);
  for (StrategyKind kind : {StrategyKind::gear, StrategyKind::far}) {
    const RunResult r = run(cfg, bell(), kind);
    ASSERT_EQ(r.slots.size(), 96u);
    EXPECT_EQ(r.ongrid_energy_exact, 0.0);
    EXPECT_EQ(r.ongrid_energy_approx, 0.0);
    EXPECT_EQ(r.migrations, 0u);
    EXPECT_EQ(r.max_delay, 0.0);
  }
}

TEST(Run, DarkDayMakesStrategiesEqual) {
  const ScenarioConfig cfg = small();
  const RunResult g = run(cfg, dark(), StrategyKind::gear);
  const RunResult f = run(cfg, dark(), StrategyKind::far);
  EXPECT_EQ(g.ongrid_energy_approx, f.ongrid_energy_approx);
  for (std::size_t s = 0; s < g.slots.size(); ++s) {
    EXPECT_EQ(g.slots[s].ongrid_energy_approx, f.slots[s].ongrid_energy_approx) << s;
  }
}

TEST(Run, CommonRandomNumbers) {
  const ScenarioConfig cfg = small();
  std::vector<std::vector<AvatarLoad>> loads[2];
  std::vector<std::vector<double>> green[2];
  int which = 0;
  const SlotObserver observe = [&](std::size_t, const SlotState& st, const StrategyOutcome&) {
    loads[which].push_back(st.loads);
    green[which].push_back(st.green_power);
  };
  run(cfg, bell(), StrategyKind::gear, {}, observe);
  which = 1;
  run(cfg, bell(), StrategyKind::far, {}, observe);
  ASSERT_EQ(loads[0].size(), 96u);
  ASSERT_EQ(loads[1].size(), 96u);
  for (std::size_t s = 0; s < 96; ++s) {
    ASSERT_EQ(loads[0][s].size(), loads[1][s].size());
    for (std::size_t k = 0; k < loads[0][s].size(); ++k) {
      EXPECT_EQ(loads[0][s][k].total_cpu, loads[1][s][k].total_cpu);
      EXPECT_EQ(loads[0][s][k].attached_enb, loads[1][s][k].attached_enb);
    }
    EXPECT_EQ(green[0][s], green[1][s]);
  }
}

TEST(Run, GearNeverWorseAndConserves) {
  const ScenarioConfig cfg = small(120);
  const RunResult g = run(cfg, bell(), StrategyKind::gear);
  const RunResult f = run(cfg, bell(), StrategyKind::far);
  double sum_g = 0.0, sum_exact = 0.0;
  std::size_t migrations = 0;
  for (std::size_t s = 0; s < 96; ++s) {
    const SlotMetrics& m = g.slots[s];
    EXPECT_LE(m.ongrid_energy_approx, f.slots[s].ongrid_energy_approx) << s;
    EXPECT_GE(m.ongrid_energy_exact, m.ongrid_energy_approx) << s;
    EXPECT_EQ(m.sla_violations, 0u);
    EXPECT_EQ(f.slots[s].sla_violations, 0u);
    EXPECT_NEAR(std::accumulate(m.power_exact.begin(), m.power_exact.end(), 0.0),
                m.total_power_exact, 1e-6);
    EXPECT_NEAR(std::accumulate(m.green.begin(), m.green.end(), 0.0), m.total_green, 1e-6);
    EXPECT_EQ(m.total_green, f.slots[s].total_green);
    sum_g += m.ongrid_energy_approx;
    sum_exact += m.ongrid_energy_exact;
    migrations += m.migrations;
  }
  EXPECT_NEAR(sum_g, g.ongrid_energy_approx, 1e-6);
  EXPECT_NEAR(sum_exact, g.ongrid_energy_exact, 1e-6);
  EXPECT_EQ(migrations, g.migrations);
  EXPECT_LT(g.ongrid_energy_approx, f.ongrid_energy_approx);
  EXPECT_LE(g.max_delay, 10.0);
}

TEST(Run, Reproducible) {
  const ScenarioConfig cfg = small();
  const RunResult a = run(cfg, bell(), StrategyKind::gear);
  const RunResult b = run(cfg, bell(), StrategyKind::gear);
  EXPECT_EQ(a.ongrid_energy_exact, b.ongrid_energy_exact);
  EXPECT_EQ(a.ongrid_energy_approx, b.ongrid_energy_approx);
  EXPECT_EQ(a.migrations, b.migrations);
  ScenarioConfig other = cfg;
  other.rng_seed = 12;
  EXPECT_NE(run(other, bell(), StrategyKind::gear).ongrid_energy_exact, a.ongrid_energy_exact);
}

TEST(Run, ReportsOverfullNetwork) {
  ScenarioConfig cfg = small(300);
  cfg.capacity_range = {1, 1};
  EXPECT_THROW(run(cfg, bell(), StrategyKind::far), InfeasibleError);
}

TEST(Run, RejectsInvalidConfig) {
  ScenarioConfig cfg = small();
  cfg.kappa = -0.5;
  EXPECT_THROW(run(cfg, bell(), StrategyKind::gear), ConfigError);
}

}  // namespace
}  // namespace gcn
