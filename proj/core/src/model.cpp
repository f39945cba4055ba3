#include "gcn/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gcn/error.hpp"

namespace gcn {

double snap_power(double watts) {
  return std::nearbyint(watts / kPowerQuantum) * kPowerQuantum;
}

void PowerParams::validate() const {
  if (!(standby_power > 0.0) || !(cpu_coeff > 0.0) || !(avatar_coeff > 0.0)) {
    throw ConfigError("power coefficients must be positive");
  }
  if (server_capacity < 1) {
    throw ConfigError("server capacity must be a positive integer");
  }
  if (!(kernel_cpu > 0.0) || !(kernel_cpu < 100.0)) {
    throw ConfigError("kernel CPU usage must lie in (0, 100)");
  }
}

void DelayParams::validate() const {
  if (!(dist_coeff > 0.0)) throw ConfigError("distance coefficient must be positive");
  if (!(sla_max_delay >= 0.0)) throw ConfigError("SLA delay must be non-negative");
  if (!(slot_length > 0.0)) throw ConfigError("slot length must be positive");
}

void CloudletSpec::validate() const {
  if (server_count < 1) throw ConfigError("cloudlet needs at least one server");
  if (!(panel_area >= 0.0)) throw ConfigError("panel area must be non-negative");
  if (!(panel_efficiency > 0.0 && panel_efficiency <= 1.0)) {
    throw ConfigError("panel efficiency must lie in (0, 1]");
  }
}

double euclidean(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

SiteTopology SiteTopology::grid(int grid_dim, double area_side) {
  if (grid_dim < 1) throw ConfigError("grid_dim must be >= 1");
  if (!(area_side > 0.0)) throw ConfigError("area_side must be positive");
  const double cell = area_side / grid_dim;
  std::vector<Point> positions;
  positions.reserve(static_cast<std::size_t>(grid_dim) * grid_dim);
  for (int a = 0; a < grid_dim; ++a) {
    for (int b = 0; b < grid_dim; ++b) {
      positions.push_back({cell * (a + 0.5), cell * (b + 0.5)});
    }
  }
  return SiteTopology(std::move(positions), area_side, grid_dim);
}

SiteTopology::SiteTopology(std::vector<Point> positions, double area_side,
                           int grid_dim)
    : positions_(std::move(positions)),
      area_side_(area_side),
      grid_dim_(grid_dim) {
  const std::size_t n = positions_.size();
  distances_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(positions_[i], positions_[j]);
      distances_[i * n + j] = d;
      distances_[j * n + i] = d;
    }
  }
}

double SiteTopology::distance(SiteIndex i, SiteIndex e) const {
  const std::size_t n = positions_.size();
  if (i >= n || e >= n) throw std::out_of_range("site index out of range");
  return distances_[i * n + e];
}

double SiteTopology::cell_side() const noexcept {
  return grid_dim_ > 0 ? area_side_ / grid_dim_ : 0.0;
}

std::vector<std::size_t> hosted_counts(const Assignment& assignment,
                                       std::size_t cloudlet_count) {
  std::vector<std::size_t> counts(cloudlet_count, 0);
  for (CloudletIndex i : assignment.placement) ++counts.at(i);
  return counts;
}

std::size_t CloudletPacking::avatar_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : servers) n += s.size();
  return n;
}

std::size_t active_server_count(std::size_t avatar_count, int tau) {
  const auto cap = static_cast<std::size_t>(tau);
  return (avatar_count + cap - 1) / cap;
}

CloudletPacking pack_first_fit(std::span<const AvatarLoad> avatars, int tau) {
  CloudletPacking packing;
  const auto cap = static_cast<std::size_t>(tau);
  for (const AvatarLoad& a : avatars) {
    if (packing.servers.empty() || packing.servers.back().size() == cap) {
      packing.servers.emplace_back();
      packing.servers.back().reserve(cap);
    }
    packing.servers.back().push_back(a.avatar_id);
  }
  return packing;
}

ServerPacking pack_network(const Assignment& assignment,
                           std::size_t cloudlet_count, int tau) {
  std::vector<std::vector<AvatarLoad>> members(cloudlet_count);
  for (AvatarId k = 0; k < assignment.size(); ++k) {
    members.at(assignment.placement[k]).push_back({k, 0.0, 0});
  }
  ServerPacking packing;
  packing.reserve(cloudlet_count);
  for (const auto& m : members) packing.push_back(pack_first_fit(m, tau));
  return packing;
}

bool packing_consistent(const ServerPacking& packing,
                        const Assignment& assignment, int tau) {
  std::vector<int> seen(assignment.size(), 0);
  for (CloudletIndex i = 0; i < packing.size(); ++i) {
    for (const auto& server : packing[i].servers) {
      if (server.empty() || server.size() > static_cast<std::size_t>(tau)) {
        return false;
      }
      for (AvatarId k : server) {
        if (k >= assignment.size() || assignment.placement[k] != i) return false;
        ++seen[k];
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

double server_power(std::span<const AvatarLoad> avatars_on_server,
                    const PowerParams& params) {
  double cpu = 0.0;
  for (const AvatarLoad& a : avatars_on_server) cpu += a.total_cpu;
  return params.standby_power +
         params.avatar_coeff * static_cast<double>(avatars_on_server.size()) +
         params.cpu_coeff * cpu;
}

double cloudlet_power_exact(const CloudletPacking& packing,
                            std::span<const AvatarLoad> loads,
                            const PowerParams& params) {
  double total = 0.0;
  std::vector<AvatarLoad> on_server;
  for (const auto& server : packing.servers) {
    on_server.clear();
    for (AvatarId k : server) on_server.push_back(loads[k]);
    total += server_power(on_server, params);
  }
  return total;
}

double avatar_weight(double total_cpu, const PowerParams& params) {
  return snap_power(params.standby_power / params.server_capacity +
                    params.avatar_coeff + params.cpu_coeff * total_cpu);
}

double cloudlet_power_approx(std::span<const AvatarLoad> loads,
                             const PowerParams& params) {
  double total = 0.0;
  for (const AvatarLoad& a : loads) total += avatar_weight(a.total_cpu, params);
  return total;
}

double propagation_delay(CloudletIndex cloudlet, SiteIndex enb,
                         const SiteTopology& topo, const DelayParams& params) {
  return params.dist_coeff * topo.distance(cloudlet, enb);
}

std::vector<CloudletIndex> feasible_set(SiteIndex enb,
                                        const SiteTopology& topo,
                                        const DelayParams& params) {
  std::vector<CloudletIndex> out;
  for (CloudletIndex i = 0; i < topo.site_count(); ++i) {
    if (propagation_delay(i, enb, topo, params) <= params.sla_max_delay) {
      out.push_back(i);
    }
  }
  return out;
}

double ongrid_energy(double power_demand, double green_power,
                     double slot_length) {
  return std::max(0.0, slot_length * (power_demand - green_power));
}

}  // namespace gcn
