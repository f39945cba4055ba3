#pragma once

// Branch-and-Bound for the per-slot Avatar placement problem:
//
//   minimise   sum_i max(0, sum_{k -> i} w_k - G_i)
//   subject to every Avatar k placed in exactly one cloudlet of its
//              feasible set, and at most capacity_i Avatars per cloudlet.
//
// The objective is kept in power form (watts); callers multiply by the slot
// length to report energy.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gcn/model.hpp"

namespace gcn {

/// A validated placement problem. Weights and green supplies are snapped to
/// kPowerQuantum on construction, so every objective and bound computed from
/// an instance is exact.
class MilpInstance {
 public:
  /// Throws InfeasibleAvatar when a feasible set is empty,
  /// InsufficientCapacity when the capacities cannot hold every Avatar, and
  /// ConfigError on inconsistent dimensions or out-of-range cloudlet ids.
  static MilpInstance create(std::vector<double> weights,
                             std::vector<std::vector<CloudletIndex>> feasible_sets,
                             std::vector<double> green_power,
                             std::vector<std::size_t> count_capacity);

  std::size_t avatar_count() const noexcept { return weights_.size(); }
  std::size_t cloudlet_count() const noexcept { return green_.size(); }

  double weight(AvatarId k) const { return weights_.at(k); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Ascending, duplicate-free.
  const std::vector<CloudletIndex>& feasible_set(AvatarId k) const {
    return feasible_.at(k);
  }
  bool allows(AvatarId k, CloudletIndex i) const;
  double green(CloudletIndex i) const { return green_.at(i); }
  const std::vector<double>& green_power() const noexcept { return green_; }
  std::size_t capacity(CloudletIndex i) const { return capacity_.at(i); }
  const std::vector<std::size_t>& count_capacity() const noexcept {
    return capacity_;
  }

 private:
  MilpInstance() = default;

  std::vector<double> weights_;
  std::vector<std::vector<CloudletIndex>> feasible_;
  std::vector<double> green_;
  std::vector<std::size_t> capacity_;
  std::vector<unsigned char> allowed_;  // avatar-major bitmap
};

/// Weights from avatar_weight, feasible sets from the SLA radius around each
/// Avatar's eNB, capacities m_i * tau. `loads` must be indexed by avatar id.
MilpInstance build_instance(std::span<const AvatarLoad> loads,
                            std::span<const CloudletSpec> specs,
                            std::span<const double> green,
                            const SiteTopology& topo, const PowerParams& power,
                            const DelayParams& delay);

struct SolverConfig {
  std::size_t node_limit = 100000;
  double gap_tolerance = 0.0;
  std::optional<Assignment> seed_assignment;
};

struct Solution {
  Assignment assignment;
  double objective = 0.0;    // W, sum of positive power gaps
  double lower_bound = 0.0;  // W
  double gap = 0.0;          // (objective - lower_bound) / objective
  std::size_t nodes_explored = 0;
  bool proven_optimal = false;
};

/// Search-tree node: a partial placement with its committed per-cloudlet
/// load and count.
struct BnbNode {
  std::vector<std::optional<CloudletIndex>> fixed;  // indexed by avatar id
  std::vector<double> committed_load;
  std::vector<std::size_t> committed_count;
  std::vector<AvatarId> remaining;
  double bound = 0.0;
};

/// Node with the given partial placement; its bound is filled in.
BnbNode make_node(const MilpInstance& inst,
                  std::vector<std::optional<CloudletIndex>> fixed);

/// Bound obtained by dropping the delay and capacity constraints: committed
/// excess plus whatever remaining weight cannot fit in the committed green
/// slack.
double aggregate_bound(const BnbNode& node, const MilpInstance& inst);

/// True when `assignment` places every Avatar inside its feasible set and
/// respects every capacity.
bool is_feasible(const MilpInstance& inst, const Assignment& assignment);

/// Objective value of a complete assignment.
double evaluate(const MilpInstance& inst, const Assignment& assignment);

/// Depth-first Branch-and-Bound. Throws InfeasibleError when no complete
/// assignment exists or none was found within the node limit.
Solution solve(const MilpInstance& inst, const SolverConfig& config = {});

/// Upper limit on the number of assignments brute_force will enumerate.
inline constexpr std::size_t kBruteForceLimit = 1'000'000;

/// Exhaustive enumeration; throws TooLarge past kBruteForceLimit candidate
/// assignments and InfeasibleError if none satisfies the capacities.
Solution brute_force(const MilpInstance& inst);

}  // namespace gcn
