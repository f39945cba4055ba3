#pragma once

// Closed-form power, delay and energy model of a green cloudlet network.
//
// Units: power in watts, energy in watt-hours, CPU usage in percent (0-100),
// distances in km, delays in ms, slot lengths in hours.

#include <cstddef>
#include <span>
#include <vector>

namespace gcn {

using AvatarId = std::size_t;
using CloudletIndex = std::size_t;
using SiteIndex = std::size_t;

/// Granularity of every power value that enters an optimisation or an energy
/// total (2^-20 W). Values on this lattice add exactly as long as totals stay
/// below 2^32 W, so per-cloudlet and network sums do not depend on the order
/// in which Avatars are summed.
inline constexpr double kPowerQuantum = 1.0 / 1048576.0;

/// Rounds `watts` to the nearest multiple of kPowerQuantum.
double snap_power(double watts);

struct PowerParams {
  double standby_power = 80.0;  // W, idle server
  double cpu_coeff = 0.2;       // W per percent CPU
  double avatar_coeff = 0.3;    // W of hypervisor overhead per hosted Avatar
  int server_capacity = 16;     // Avatars per server
  double kernel_cpu = 10.0;     // percent CPU of an idle Avatar's OS

  void validate() const;
};

struct DelayParams {
  double dist_coeff = 3.33;     // ms per km
  double sla_max_delay = 10.0;  // ms
  double slot_length = 0.25;    // hours

  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double euclidean(const Point& a, const Point& b);

/// Co-located eNB/cloudlet sites and their pairwise distances.
///
/// Grid topologies index the site at cell (a, b) as a * grid_dim + b, where a
/// counts cells along x and b along y.
class SiteTopology {
 public:
  /// grid_dim x grid_dim sites at the centres of square cells tiling
  /// [0, area_side]^2.
  static SiteTopology grid(int grid_dim, double area_side);

  /// Arbitrary site layout with Euclidean distances. area_side and grid_dim
  /// are informational only for non-grid layouts.
  explicit SiteTopology(std::vector<Point> positions, double area_side = 0.0,
                        int grid_dim = 0);

  std::size_t site_count() const noexcept { return positions_.size(); }
  const Point& position(SiteIndex i) const { return positions_.at(i); }
  const std::vector<Point>& positions() const noexcept { return positions_; }
  double distance(SiteIndex i, SiteIndex e) const;
  double area_side() const noexcept { return area_side_; }
  int grid_dim() const noexcept { return grid_dim_; }
  double cell_side() const noexcept;

 private:
  std::vector<Point> positions_;
  std::vector<double> distances_;  // row-major site_count x site_count
  double area_side_;
  int grid_dim_;
};

enum class Zone { rural, urban };

struct CloudletSpec {
  int server_count = 1;
  double panel_area = 5.0;         // m^2
  double panel_efficiency = 0.46;  // fraction
  Zone zone = Zone::rural;

  void validate() const;
};

struct AvatarLoad {
  AvatarId avatar_id = 0;
  double total_cpu = 0.0;  // kernel + application, percent
  SiteIndex attached_enb = 0;
};

/// placement[k] is the cloudlet hosting Avatar k. Avatar ids are dense,
/// 0..size()-1.
struct Assignment {
  std::vector<CloudletIndex> placement;

  std::size_t size() const noexcept { return placement.size(); }
  CloudletIndex operator[](AvatarId k) const { return placement.at(k); }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Number of Avatars hosted per cloudlet.
std::vector<std::size_t> hosted_counts(const Assignment& assignment,
                                       std::size_t cloudlet_count);

/// Servers of one cloudlet, each holding the ids of its Avatars.
struct CloudletPacking {
  std::vector<std::vector<AvatarId>> servers;

  std::size_t avatar_count() const noexcept;
};

/// One CloudletPacking per cloudlet.
using ServerPacking = std::vector<CloudletPacking>;

/// ceil(avatar_count / tau).
std::size_t active_server_count(std::size_t avatar_count, int tau);

/// Fills servers in the given order, tau Avatars each.
CloudletPacking pack_first_fit(std::span<const AvatarLoad> avatars, int tau);

/// Packs every cloudlet first-fit in ascending avatar id order.
ServerPacking pack_network(const Assignment& assignment,
                           std::size_t cloudlet_count, int tau);

/// True when every server holds at most tau Avatars and Avatar k appears in
/// cloudlet i's packing exactly when the assignment maps k to i.
bool packing_consistent(const ServerPacking& packing,
                        const Assignment& assignment, int tau);

/// Power of one active server: P^s + beta * |avatars| + alpha * sum(u_k).
double server_power(std::span<const AvatarLoad> avatars_on_server,
                    const PowerParams& params);

/// Sum of server_power over the active servers of one cloudlet.
/// `loads` is indexed by avatar id.
double cloudlet_power_exact(const CloudletPacking& packing,
                            std::span<const AvatarLoad> loads,
                            const PowerParams& params);

/// Per-Avatar share of cloudlet power with the server count relaxed to
/// K / tau: P^s / tau + beta + alpha * u. Snapped to kPowerQuantum.
double avatar_weight(double total_cpu, const PowerParams& params);

/// Sum of avatar_weight over the Avatars hosted by a cloudlet.
double cloudlet_power_approx(std::span<const AvatarLoad> loads,
                             const PowerParams& params);

double propagation_delay(CloudletIndex cloudlet, SiteIndex enb,
                         const SiteTopology& topo, const DelayParams& params);

/// Cloudlets reachable from `enb` within the SLA delay bound, ascending.
std::vector<CloudletIndex> feasible_set(SiteIndex enb,
                                        const SiteTopology& topo,
                                        const DelayParams& params);

/// max(0, slot_length * (power_demand - green_power)), in Wh.
double ongrid_energy(double power_demand, double green_power,
                     double slot_length);

}  // namespace gcn
