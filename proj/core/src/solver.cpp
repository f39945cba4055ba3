#include "gcn/solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "gcn/error.hpp"

namespace gcn {
namespace {

constexpr double kTiny = 1e-12;

// Committed excess plus the part of the remaining weight that cannot be
// absorbed by committed green slack.
double gap_bound(double excess, double slack, double remaining_weight) {
  return excess + std::max(0.0, remaining_weight - slack);
}

}  // namespace

MilpInstance MilpInstance::create(
    std::vector<double> weights,
    std::vector<std::vector<CloudletIndex>> feasible_sets,
    std::vector<double> green_power, std::vector<std::size_t> count_capacity) {
  const std::size_t n = weights.size();
  const std::size_t c = green_power.size();
  if (feasible_sets.size() != n) {
    throw ConfigError("one feasible set per avatar required");
  }
  if (count_capacity.size() != c) {
    throw ConfigError("one capacity per cloudlet required");
  }

  MilpInstance inst;
  inst.weights_.reserve(n);
  for (double w : weights) {
    if (!(w >= 0.0)) throw ConfigError("avatar weights must be non-negative");
    inst.weights_.push_back(snap_power(w));
  }
  inst.green_.reserve(c);
  for (double g : green_power) {
    if (!(g >= 0.0)) throw ConfigError("green power must be non-negative");
    inst.green_.push_back(snap_power(g));
  }
  inst.capacity_ = std::move(count_capacity);
  inst.allowed_.assign(n * c, 0);
  inst.feasible_.reserve(n);
  for (AvatarId k = 0; k < n; ++k) {
    auto& set = feasible_sets[k];
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.empty()) throw InfeasibleAvatar(k);
    for (CloudletIndex i : set) {
      if (i >= c) throw ConfigError("feasible set names an unknown cloudlet");
      inst.allowed_[k * c + i] = 1;
    }
    inst.feasible_.push_back(std::move(set));
  }
  const std::size_t total =
      std::accumulate(inst.capacity_.begin(), inst.capacity_.end(), std::size_t{0});
  if (total < n) {
    throw InsufficientCapacity("total capacity " + std::to_string(total) +
                               " is below the avatar count " + std::to_string(n));
  }
  return inst;
}

bool MilpInstance::allows(AvatarId k, CloudletIndex i) const {
  if (k >= avatar_count() || i >= cloudlet_count()) return false;
  return allowed_[k * cloudlet_count() + i] != 0;
}

MilpInstance build_instance(std::span<const AvatarLoad> loads,
                            std::span<const CloudletSpec> specs,
                            std::span<const double> green,
                            const SiteTopology& topo, const PowerParams& power,
                            const DelayParams& delay) {
  power.validate();
  delay.validate();
  if (specs.size() != topo.site_count() || green.size() != topo.site_count()) {
    throw ConfigError("cloudlet specs and green supplies must match the topology");
  }
  std::vector<double> weights;
  std::vector<std::vector<CloudletIndex>> feasible;
  weights.reserve(loads.size());
  feasible.reserve(loads.size());
  for (AvatarId k = 0; k < loads.size(); ++k) {
    if (loads[k].avatar_id != k) {
      throw ConfigError("loads must be indexed by avatar id");
    }
    weights.push_back(avatar_weight(loads[k].total_cpu, power));
    feasible.push_back(feasible_set(loads[k].attached_enb, topo, delay));
  }
  std::vector<std::size_t> capacity;
  capacity.reserve(specs.size());
  for (const CloudletSpec& s : specs) {
    capacity.push_back(static_cast<std::size_t>(s.server_count) *
                       static_cast<std::size_t>(power.server_capacity));
  }
  return MilpInstance::create(std::move(weights), std::move(feasible),
                              std::vector<double>(green.begin(), green.end()),
                              std::move(capacity));
}

BnbNode make_node(const MilpInstance& inst,
                  std::vector<std::optional<CloudletIndex>> fixed) {
  if (fixed.size() != inst.avatar_count()) {
    throw ConfigError("partial placement must cover every avatar");
  }
  BnbNode node;
  node.committed_load.assign(inst.cloudlet_count(), 0.0);
  node.committed_count.assign(inst.cloudlet_count(), 0);
  for (AvatarId k = 0; k < fixed.size(); ++k) {
    if (fixed[k]) {
      const CloudletIndex i = *fixed[k];
      if (i >= inst.cloudlet_count()) throw ConfigError("unknown cloudlet");
      node.committed_load[i] += inst.weight(k);
      ++node.committed_count[i];
    } else {
      node.remaining.push_back(k);
    }
  }
  node.fixed = std::move(fixed);
  node.bound = aggregate_bound(node, inst);
  return node;
}

double aggregate_bound(const BnbNode& node, const MilpInstance& inst) {
  double excess = 0.0;
  double slack = 0.0;
  for (CloudletIndex i = 0; i < inst.cloudlet_count(); ++i) {
    const double diff = node.committed_load[i] - inst.green(i);
    if (diff > 0.0) {
      excess += diff;
    } else {
      slack -= diff;
    }
  }
  double remaining = 0.0;
  for (AvatarId k : node.remaining) remaining += inst.weight(k);
  return gap_bound(excess, slack, remaining);
}

bool is_feasible(const MilpInstance& inst, const Assignment& assignment) {
  if (assignment.size() != inst.avatar_count()) return false;
  std::vector<std::size_t> counts(inst.cloudlet_count(), 0);
  for (AvatarId k = 0; k < assignment.size(); ++k) {
    const CloudletIndex i = assignment.placement[k];
    if (!inst.allows(k, i)) return false;
    if (++counts[i] > inst.capacity(i)) return false;
  }
  return true;
}

double evaluate(const MilpInstance& inst, const Assignment& assignment) {
  std::vector<double> load(inst.cloudlet_count(), 0.0);
  for (AvatarId k = 0; k < assignment.size(); ++k) {
    load.at(assignment.placement[k]) += inst.weight(k);
  }
  double objective = 0.0;
  for (CloudletIndex i = 0; i < load.size(); ++i) {
    objective += std::max(0.0, load[i] - inst.green(i));
  }
  return objective;
}

namespace {

// Explicit-stack depth-first search. Depth p decides the p-th Avatar of
// `order_`; frames_[p] holds the candidate cloudlets for that decision.
class BranchAndBound {
 public:
  BranchAndBound(const MilpInstance& inst, const SolverConfig& config)
      : inst_(inst),
        config_(config),
        n_(inst.avatar_count()),
        c_(inst.cloudlet_count()),
        load_(c_, 0.0),
        count_(c_, 0),
        choice_(n_, 0),
        frames_(n_) {
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), AvatarId{0});
    std::stable_sort(order_.begin(), order_.end(), [&](AvatarId a, AvatarId b) {
      return inst_.weight(a) > inst_.weight(b);
    });
    remaining_.assign(n_ + 1, 0.0);
    for (std::size_t p = n_; p-- > 0;) {
      remaining_[p] = remaining_[p + 1] + inst_.weight(order_[p]);
    }
    // Avatars with equal weight and feasible set are interchangeable; their
    // cloudlets are forced to be non-decreasing along the order.
    twin_of_previous_.assign(n_, false);
    for (std::size_t p = 1; p < n_; ++p) {
      const AvatarId a = order_[p - 1];
      const AvatarId b = order_[p];
      twin_of_previous_[p] = inst_.weight(a) == inst_.weight(b) &&
                             inst_.feasible_set(a) == inst_.feasible_set(b);
    }
    for (CloudletIndex i = 0; i < c_; ++i) slack_ += inst_.green(i);
  }

  Solution run() {
    const double root_bound = gap_bound(0.0, slack_, remaining_[0]);
    std::size_t nodes = 1;

    if (config_.seed_assignment && is_feasible(inst_, *config_.seed_assignment)) {
      adopt(*config_.seed_assignment, evaluate(inst_, *config_.seed_assignment));
    }
    if (n_ == 0) adopt(Assignment{}, 0.0);

    bool exhausted = false;
    bool gap_closed = has_incumbent_ && within_gap(root_bound);
    std::size_t depth = 0;
    if (!gap_closed && n_ > 0) {
      frames_[0].bound = root_bound;
      expand(0);
      while (true) {
        Frame& frame = frames_[depth];
        if (frame.next == frame.children.size()) {
          if (depth == 0) {
            exhausted = true;
            break;
          }
          --depth;
          retract(depth);
          continue;
        }
        if (nodes >= config_.node_limit) break;
        const CloudletIndex i = frame.children[frame.next++];
        ++nodes;

        const double w = inst_.weight(order_[depth]);
        const double before = load_[i] - inst_.green(i);
        const double after = before + w;
        const double excess = excess_ - std::max(0.0, before) + std::max(0.0, after);
        const double slack = slack_ - std::max(0.0, -before) + std::max(0.0, -after);
        const double bound = gap_bound(excess, slack, remaining_[depth + 1]);
        if (has_incumbent_ && bound >= prune_threshold()) continue;

        choice_[depth] = i;
        load_[i] += w;
        ++count_[i];
        excess_ = excess;
        slack_ = slack;

        if (depth + 1 == n_) {
          if (!has_incumbent_ || excess_ < incumbent_) {
            Assignment found;
            found.placement.resize(n_);
            for (std::size_t p = 0; p < n_; ++p) {
              found.placement[order_[p]] = choice_[p];
            }
            adopt(std::move(found), excess_);
          }
          retract(depth);
          if (within_gap(root_bound)) {
            gap_closed = true;
            break;
          }
          continue;
        }
        ++depth;
        frames_[depth].bound = bound;
        expand(depth);
      }
    }

    if (!has_incumbent_) {
      if (exhausted) throw InfeasibleError("no assignment satisfies the delay and capacity constraints");
      throw InfeasibleError("node limit reached before any feasible assignment was found");
    }

    Solution sol;
    sol.assignment = std::move(best_);
    sol.objective = incumbent_;
    sol.nodes_explored = nodes;
    const double tol = config_.gap_tolerance;
    const double pruned_floor = incumbent_ - tol * incumbent_;
    if (gap_closed) {
      sol.lower_bound = root_bound;
    } else if (exhausted) {
      sol.lower_bound = std::max(root_bound, std::min(incumbent_, pruned_floor));
    } else {
      double open = std::min(incumbent_, pruned_floor);
      for (std::size_t d = 0; d <= depth; ++d) {
        if (frames_[d].next < frames_[d].children.size()) {
          open = std::min(open, frames_[d].bound);
        }
      }
      sol.lower_bound = std::max(root_bound, open);
    }
    sol.lower_bound = std::min(sol.lower_bound, sol.objective);
    sol.gap = (sol.objective - sol.lower_bound) / std::max(sol.objective, kTiny);
    sol.proven_optimal = exhausted || gap_closed || sol.gap <= tol;
    return sol;
  }

 private:
  struct Frame {
    std::vector<CloudletIndex> children;
    std::size_t next = 0;
    double bound = 0.0;
  };

  void adopt(Assignment a, double objective) {
    best_ = std::move(a);
    incumbent_ = objective;
    has_incumbent_ = true;
  }

  bool within_gap(double lower) const {
    return incumbent_ - lower <= config_.gap_tolerance * incumbent_;
  }

  double prune_threshold() const {
    return incumbent_ - config_.gap_tolerance * incumbent_;
  }

  // Children: feasible cloudlets with spare capacity, most residual green
  // first, ties by lowest index.
  void expand(std::size_t depth) {
    Frame& f = frames_[depth];
    f.children.clear();
    f.next = 0;
    const AvatarId k = order_[depth];
    const CloudletIndex floor =
        twin_of_previous_[depth] ? choice_[depth - 1] : CloudletIndex{0};
    for (CloudletIndex i : inst_.feasible_set(k)) {
      if (i >= floor && count_[i] < inst_.capacity(i)) f.children.push_back(i);
    }
    std::stable_sort(f.children.begin(), f.children.end(),
                     [&](CloudletIndex a, CloudletIndex b) {
                       return inst_.green(a) - load_[a] > inst_.green(b) - load_[b];
                     });
  }

  // Undoes the placement decided at `depth`.
  void retract(std::size_t depth) {
    const CloudletIndex i = choice_[depth];
    const double w = inst_.weight(order_[depth]);
    const double before = load_[i] - inst_.green(i);
    const double after = before - w;
    excess_ += std::max(0.0, after) - std::max(0.0, before);
    slack_ += std::max(0.0, -after) - std::max(0.0, -before);
    load_[i] -= w;
    --count_[i];
  }

  const MilpInstance& inst_;
  const SolverConfig& config_;
  std::size_t n_;
  std::size_t c_;
  std::vector<AvatarId> order_;
  std::vector<double> remaining_;  // weight of order_[p..]
  std::vector<bool> twin_of_previous_;
  std::vector<double> load_;
  std::vector<std::size_t> count_;
  std::vector<CloudletIndex> choice_;
  std::vector<Frame> frames_;
  double excess_ = 0.0;
  double slack_ = 0.0;
  bool has_incumbent_ = false;
  double incumbent_ = std::numeric_limits<double>::infinity();
  Assignment best_;
};

}  // namespace

Solution solve(const MilpInstance& inst, const SolverConfig& config) {
  if (config.node_limit < 1) throw ConfigError("node_limit must be >= 1");
  if (!(config.gap_tolerance >= 0.0)) throw ConfigError("gap_tolerance must be >= 0");
  return BranchAndBound(inst, config).run();
}

Solution brute_force(const MilpInstance& inst) {
  const std::size_t n = inst.avatar_count();
  const std::size_t c = inst.cloudlet_count();

  std::size_t combinations = 1;
  for (AvatarId k = 0; k < n; ++k) {
    combinations *= inst.feasible_set(k).size();
    if (combinations > kBruteForceLimit) {
      throw TooLarge("brute force would enumerate more than " +
                     std::to_string(kBruteForceLimit) + " assignments");
    }
  }

  std::vector<std::size_t> digit(n, 0);
  std::vector<double> load(c);
  std::vector<std::size_t> count(c);
  bool found = false;
  double best = 0.0;
  Assignment best_assignment;
  Assignment candidate;
  candidate.placement.resize(n);

  for (std::size_t step = 0; step < combinations; ++step) {
    std::fill(load.begin(), load.end(), 0.0);
    std::fill(count.begin(), count.end(), 0);
    bool fits = true;
    for (AvatarId k = 0; k < n; ++k) {
      const CloudletIndex i = inst.feasible_set(k)[digit[k]];
      candidate.placement[k] = i;
      load[i] += inst.weight(k);
      if (++count[i] > inst.capacity(i)) fits = false;
    }
    if (fits) {
      double objective = 0.0;
      for (CloudletIndex i = 0; i < c; ++i) {
        if (load[i] > inst.green(i)) objective += load[i] - inst.green(i);
      }
      if (!found || objective < best) {
        found = true;
        best = objective;
        best_assignment = candidate;
      }
    }
    // Odometer, last avatar fastest.
    for (std::size_t k = n; k-- > 0;) {
      if (++digit[k] < inst.feasible_set(k).size()) break;
      digit[k] = 0;
    }
  }

  if (!found) {
    throw InfeasibleError("no assignment satisfies the delay and capacity constraints");
  }
  Solution sol;
  sol.assignment = std::move(best_assignment);
  sol.objective = best;
  sol.lower_bound = best;
  sol.gap = 0.0;
  sol.nodes_explored = combinations;
  sol.proven_optimal = true;
  return sol;
}

}  // namespace gcn
