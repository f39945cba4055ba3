#include "gcn/strategy.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "gcn/error.hpp"

namespace gcn {

std::size_t Network::capacity(CloudletIndex i) const {
  return static_cast<std::size_t>(cloudlets.at(i).server_count) *
         static_cast<std::size_t>(power.server_capacity);
}

std::size_t count_migrations(const Assignment& prev, const Assignment& next) {
  std::size_t moved = 0;
  for (AvatarId k = 0; k < next.size(); ++k) {
    if (k >= prev.size() || prev.placement[k] != next.placement[k]) ++moved;
  }
  return moved;
}

std::vector<CloudletIndex> cloudlets_by_distance(SiteIndex enb,
                                                 const SiteTopology& topo) {
  std::vector<CloudletIndex> order(topo.site_count());
  std::iota(order.begin(), order.end(), CloudletIndex{0});
  std::stable_sort(order.begin(), order.end(), [&](CloudletIndex a, CloudletIndex b) {
    return topo.distance(a, enb) < topo.distance(b, enb);
  });
  return order;
}

StrategyOutcome far_assign(const SlotState& state) {
  const Network& net = state.network;
  const std::size_t c = net.cloudlet_count();
  std::vector<std::size_t> used(c, 0);

  // Sorted candidate lists are shared by every Avatar attached to one eNB.
  std::vector<std::vector<CloudletIndex>> nearest(net.topology.site_count());

  StrategyOutcome out;
  out.assignment.placement.resize(state.loads.size());
  for (AvatarId k = 0; k < state.loads.size(); ++k) {
    const SiteIndex enb = state.loads[k].attached_enb;
    auto& candidates = nearest.at(enb);
    if (candidates.empty()) candidates = cloudlets_by_distance(enb, net.topology);
    bool placed = false;
    for (CloudletIndex i : candidates) {
      if (propagation_delay(i, enb, net.topology, net.delay) > net.delay.sla_max_delay) {
        break;
      }
      if (used[i] < net.capacity(i)) {
        out.assignment.placement[k] = i;
        ++used[i];
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw InsufficientCapacity("no cloudlet within the SLA radius of eNB " +
                                 std::to_string(enb) + " has room for avatar " +
                                 std::to_string(k));
    }
  }
  out.migrations = count_migrations(state.prev_assignment, out.assignment);
  return out;
}

StrategyOutcome gear_assign(const SlotState& state, const SolverConfig& config) {
  const Network& net = state.network;
  const MilpInstance inst =
      build_instance(state.loads, net.cloudlets, state.green_power, net.topology,
                     net.power, net.delay);

  std::optional<Assignment> seed;
  double seed_objective = 0.0;
  if (is_feasible(inst, state.prev_assignment)) {
    seed = state.prev_assignment;
    seed_objective = evaluate(inst, *seed);
  }
  try {
    StrategyOutcome far = far_assign(state);
    const double far_objective = evaluate(inst, far.assignment);
    if (!seed || far_objective < seed_objective) seed = std::move(far.assignment);
  } catch (const InsufficientCapacity&) {
    // FAR can run out of room where the solver still finds a placement.
  }

  SolverConfig seeded = config;
  seeded.seed_assignment = std::move(seed);
  Solution sol = solve(inst, seeded);

  StrategyOutcome out;
  out.assignment = sol.assignment;
  out.migrations = count_migrations(state.prev_assignment, out.assignment);
  out.solver_stats = std::move(sol);
  return out;
}

StrategyOutcome assign(StrategyKind kind, const SlotState& state,
                       const SolverConfig& config) {
  return kind == StrategyKind::gear ? gear_assign(state, config) : far_assign(state);
}

}  // namespace gcn
