#include "gcn/engine.hpp"

#include <algorithm>

namespace gcn {

SlotMetrics compute_slot_metrics(const SlotState& state,
                                 const StrategyOutcome& outcome,
                                 std::size_t slot) {
  const Network& net = state.network;
  const std::size_t c = net.cloudlet_count();
  const Assignment& assignment = outcome.assignment;

  SlotMetrics m;
  m.slot = slot;
  m.migrations = outcome.migrations;
  m.green = state.green_power;
  m.power_approx.assign(c, 0.0);
  for (AvatarId k = 0; k < assignment.size(); ++k) {
    const CloudletIndex i = assignment.placement[k];
    m.power_approx.at(i) += avatar_weight(state.loads[k].total_cpu, net.power);
    const double delay =
        propagation_delay(i, state.loads[k].attached_enb, net.topology, net.delay);
    m.max_delay = std::max(m.max_delay, delay);
    if (delay > net.delay.sla_max_delay) ++m.sla_violations;
  }

  const ServerPacking packing =
      pack_network(assignment, c, net.power.server_capacity);
  m.power_exact.reserve(c);
  double approx_gap = 0.0;
  for (CloudletIndex i = 0; i < c; ++i) {
    m.power_exact.push_back(cloudlet_power_exact(packing[i], state.loads, net.power));
    m.total_power_exact += m.power_exact[i];
    m.total_power_approx += m.power_approx[i];
    m.total_green += m.green[i];
    m.ongrid_energy_exact +=
        ongrid_energy(m.power_exact[i], m.green[i], net.delay.slot_length);
    approx_gap += std::max(0.0, m.power_approx[i] - m.green[i]);
  }
  // The approximate gaps sit on the power lattice, so their sum is exact and
  // identical for any two placements with the same per-cloudlet gaps.
  m.ongrid_energy_approx = net.delay.slot_length * approx_gap;
  return m;
}

RunResult run(const ScenarioConfig& config, const SolarTrace& trace,
              StrategyKind strategy, const SolverConfig& solver,
              const SlotObserver& observer) {
  config.validate();
  RngStreams rng = RngStreams::from_seed(config.rng_seed);
  const Network network = init_topology(config, rng.topology);
  World world = init_ues(config, network, rng.mobility);

  RunResult result;
  result.strategy = strategy;
  result.config = config;
  result.solver = solver;
  result.slots.reserve(config.slot_count);

  Assignment current = std::move(world.initial);
  for (std::size_t slot = 0; slot < config.slot_count; ++slot) {
    SlotState state{network, {}, {}, current};
    state.loads.reserve(world.ues.size());
    for (UEState& ue : world.ues) {
      ue = step_mobility(ue, kSlotSeconds, config, rng.mobility);
      state.loads.push_back({ue.avatar_id, sample_utilization(config, rng.load),
                             enb_of(ue.position, network.topology)});
    }
    state.green_power.reserve(network.cloudlet_count());
    for (const CloudletSpec& spec : network.cloudlets) {
      state.green_power.push_back(green_power(trace, slot, spec, config.kappa,
                                              network.delay.slot_length));
    }

    StrategyOutcome outcome;
    try {
      outcome = assign(strategy, state, solver);
    } catch (const InfeasibleError& e) {
      throw SlotFailure(slot, e.what());
    }
    if (observer) observer(slot, state, outcome);

    SlotMetrics metrics = compute_slot_metrics(state, outcome, slot);
    result.ongrid_energy_exact += metrics.ongrid_energy_exact;
    result.ongrid_energy_approx += metrics.ongrid_energy_approx;
    result.migrations += metrics.migrations;
    result.max_delay = std::max(result.max_delay, metrics.max_delay);
    result.slots.push_back(std::move(metrics));
    current = std::move(outcome.assignment);
  }
  return result;
}

}  // namespace gcn
