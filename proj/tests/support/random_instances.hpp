#pragma once

// Seeded generator of small placement instances for solver cross-checks.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "gcn/model.hpp"
#include "gcn/solver.hpp"

namespace gcn::testing {

struct InstanceShape {
  std::size_t avatars = 0;
  std::size_t cloudlets = 0;
  bool complete_sets = false;  // every avatar may use every cloudlet
  bool ample_capacity = false;
};

inline InstanceShape random_shape(std::mt19937_64& rng) {
  InstanceShape s;
  s.avatars = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  s.cloudlets = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  s.complete_sets = std::bernoulli_distribution(0.3)(rng);
  s.ample_capacity = std::bernoulli_distribution(0.4)(rng);
  return s;
}

/// Weights from avatar_weight over u in [10, 100]; green in [0, 1.2 * mean
/// share of demand]; random non-empty feasible sets; capacities that may
/// bind.
inline MilpInstance random_instance(std::mt19937_64& rng, const InstanceShape& shape) {
  const PowerParams power;
  std::uniform_real_distribution<double> cpu(10.0, 100.0);
  std::vector<double> weights;
  double total = 0.0;
  for (std::size_t k = 0; k < shape.avatars; ++k) {
    weights.push_back(avatar_weight(cpu(rng), power));
    total += weights.back();
  }

  std::uniform_real_distribution<double> green(0.0, 1.2 * total / shape.cloudlets);
  std::vector<double> g;
  for (std::size_t i = 0; i < shape.cloudlets; ++i) g.push_back(green(rng));

  std::vector<std::vector<CloudletIndex>> sets(shape.avatars);
  std::bernoulli_distribution include(0.6);
  std::uniform_int_distribution<CloudletIndex> any(0, shape.cloudlets - 1);
  for (auto& set : sets) {
    for (CloudletIndex i = 0; i < shape.cloudlets; ++i) {
      if (shape.complete_sets || include(rng)) set.push_back(i);
    }
    if (set.empty()) set.push_back(any(rng));
  }

  std::vector<std::size_t> capacity(shape.cloudlets, shape.avatars);
  if (!shape.ample_capacity) {
    std::uniform_int_distribution<std::size_t> cap(1, std::max<std::size_t>(1, shape.avatars / 2 + 1));
    std::size_t sum = 0;
    for (auto& c : capacity) sum += (c = cap(rng));
    // Top up so total capacity covers every avatar.
    for (std::size_t i = 0; sum < shape.avatars; i = (i + 1) % shape.cloudlets) {
      ++capacity[i];
      ++sum;
    }
  }
  return MilpInstance::create(std::move(weights), std::move(sets), std::move(g),
                              std::move(capacity));
}

}  // namespace gcn::testing
