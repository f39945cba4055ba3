#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gcn/error.hpp"
#include "gcn/scenario.hpp"
#include "gcn/solver.hpp"
#include "gcn/strategy.hpp"

namespace gcn {

struct SlotMetrics {
  std::size_t slot = 0;
  std::vector<double> power_exact;   // W per cloudlet, full server count
  std::vector<double> power_approx;  // W per cloudlet, per-Avatar weights
  std::vector<double> green;         // W per cloudlet
  double total_power_exact = 0.0;
  double total_power_approx = 0.0;
  double total_green = 0.0;
  double ongrid_energy_exact = 0.0;   // Wh
  double ongrid_energy_approx = 0.0;  // Wh
  std::size_t migrations = 0;
  double max_delay = 0.0;  // ms
  std::size_t sla_violations = 0;
};

struct RunResult {
  StrategyKind strategy = StrategyKind::gear;
  ScenarioConfig config;
  SolverConfig solver;
  std::vector<SlotMetrics> slots;
  double ongrid_energy_exact = 0.0;   // Wh over the run
  double ongrid_energy_approx = 0.0;  // Wh over the run
  std::size_t migrations = 0;
  double max_delay = 0.0;

  std::uint64_t seed() const noexcept { return config.rng_seed; }
};

/// A strategy or scenario failure, tagged with the slot in which it happened.
class SlotFailure : public InfeasibleError {
 public:
  SlotFailure(std::size_t slot, const std::string& what)
      : InfeasibleError("slot " + std::to_string(slot) + ": " + what), slot_(slot) {}

  std::size_t slot() const noexcept { return slot_; }

 private:
  std::size_t slot_;
};

/// Power, green and on-grid energy of one slot under both power models.
SlotMetrics compute_slot_metrics(const SlotState& state,
                                 const StrategyOutcome& outcome,
                                 std::size_t slot);

/// Called once per slot after the strategy has decided.
using SlotObserver =
    std::function<void(std::size_t slot, const SlotState&, const StrategyOutcome&)>;

/// Simulates config.slot_count slots. Each slot advances every UE, draws the
/// next-slot CPU loads and green supply, and hands the strategy exact
/// knowledge of them. Mobility, loads and capacities come from RNG streams
/// that the strategy never touches, so GEAR and FAR runs at one seed see the
/// same world.
RunResult run(const ScenarioConfig& config, const SolarTrace& trace,
              StrategyKind strategy, const SolverConfig& solver = {},
              const SlotObserver& observer = {});

}  // namespace gcn
