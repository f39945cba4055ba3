#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gcn/model.hpp"
#include "gcn/solver.hpp"

namespace gcn {

/// Scenario constants shared by every slot of a run.
struct Network {
  SiteTopology topology;
  std::vector<CloudletSpec> cloudlets;
  PowerParams power;
  DelayParams delay;

  std::size_t cloudlet_count() const noexcept { return cloudlets.size(); }
  /// m_i * tau
  std::size_t capacity(CloudletIndex i) const;
};

/// What a strategy sees when deciding placements for the next slot.
struct SlotState {
  const Network& network;
  std::vector<AvatarLoad> loads;     // indexed by avatar id
  std::vector<double> green_power;   // W per cloudlet
  Assignment prev_assignment;
};

struct StrategyOutcome {
  Assignment assignment;
  std::size_t migrations = 0;
  std::optional<Solution> solver_stats;
};

enum class StrategyKind { gear, far };

/// Number of Avatars whose cloudlet differs between the two assignments.
/// Avatars missing from `prev` count as migrated.
std::size_t count_migrations(const Assignment& prev, const Assignment& next);

/// Cloudlets ordered by distance from `enb`, ties by lowest index.
std::vector<CloudletIndex> cloudlets_by_distance(SiteIndex enb,
                                                 const SiteTopology& topo);

/// Nearest-cloudlet placement. Avatars are taken in ascending id; each goes to
/// the closest cloudlet within the SLA radius that still has room. Throws
/// InsufficientCapacity when some Avatar finds none.
StrategyOutcome far_assign(const SlotState& state);

/// Solver-backed placement minimising on-grid power. The search starts from
/// the better of the FAR placement and the previous assignment (the previous
/// one wins ties), so the result is never worse than either.
StrategyOutcome gear_assign(const SlotState& state, const SolverConfig& config);

StrategyOutcome assign(StrategyKind kind, const SlotState& state,
                       const SolverConfig& config);

}  // namespace gcn
