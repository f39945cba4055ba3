#pragma once

// Experimental world: grid topology, cloudlet capacities, UE mobility,
// per-slot CPU loads and solar-driven green supply.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "gcn/model.hpp"
#include "gcn/strategy.hpp"

namespace gcn {

using Rng = std::mt19937_64;

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

struct IntRange {
  int lo = 0;
  int hi = 0;

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// Axis-aligned rectangle, bounds inclusive.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(const Point& p) const noexcept {
    return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct ScenarioConfig {
  int grid_dim = 4;
  double area_side = 8.0;                // km
  std::size_t ue_count = 200;
  std::size_t slot_count = 96;
  IntRange capacity_range{10, 30};       // servers per cloudlet
  Range speed_range{0.0, 10.0};          // m/s
  double dest_mean = 4.0;                // km, per coordinate
  double dest_stddev = 1.4;              // km
  Range cpu_range{10.0, 100.0};          // percent, total per Avatar
  double kernel_cpu = 10.0;              // percent
  double panel_area = 5.0;               // m^2
  double panel_efficiency = 0.46;
  double kappa = 0.0;                    // urban irradiance reduction
  Rect urban_region{2.0, 2.0, 6.0, 6.0};  // km
  std::uint64_t rng_seed = 1;

  void validate() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses `key = value` lines; '#' starts a comment. Keys are the field names
/// above; ranges are written `lo,hi` and the urban region `x0,y0,x1,y1`.
/// Throws ParseError for malformed lines and ConfigError for invalid values.
ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig load_scenario_config(const std::filesystem::path& path);
std::string format_scenario_config(const ScenarioConfig& config);

/// Independent generator per concern so that strategies, sweeps and world
/// size do not perturb each other's draws.
struct RngStreams {
  Rng topology;
  Rng mobility;
  Rng load;

  static RngStreams from_seed(std::uint64_t seed);
};

/// Default power constants with the scenario's kernel CPU share.
PowerParams power_params(const ScenarioConfig& config);

/// grid_dim^2 sites at cell centres, m_i ~ U{capacity_range}, zone from
/// urban_region.
Network init_topology(const ScenarioConfig& config, Rng& rng);

struct UEState {
  Point position;      // km
  Point destination;   // km
  double speed = 0.0;  // m/s
  AvatarId avatar_id = 0;
};

struct World {
  std::vector<UEState> ues;
  Assignment initial;
};

/// Uniform UE positions; each Avatar starts on the nearest cloudlet with
/// room. Throws InsufficientCapacity when the network cannot host ue_count
/// Avatars.
World init_ues(const ScenarioConfig& config, const Network& network, Rng& rng);

/// Destination with each coordinate ~ N(dest_mean, dest_stddev), redrawn
/// until it lies inside the area.
Point draw_destination(const ScenarioConfig& config, Rng& rng);

/// Moves `distance_km` toward the destination without overshooting; on
/// arrival a new destination is drawn.
UEState advance(UEState ue, double distance_km, const ScenarioConfig& config,
                Rng& rng);

inline constexpr double kSlotSeconds = 900.0;

/// One slot of the modified random waypoint model: a fresh speed, then a
/// straight-line advance of speed * slot_seconds.
UEState step_mobility(const UEState& ue, double slot_seconds,
                      const ScenarioConfig& config, Rng& rng);

/// Site whose cell contains `position`. Cells are half-open [x, x + side)
/// except the last one, which is closed at the area boundary.
SiteIndex enb_of(const Point& position, const SiteTopology& topo);

/// Total CPU usage of one Avatar for one slot, uniform on cpu_range.
double sample_utilization(const ScenarioConfig& config, Rng& rng);

/// CPU share of an Avatar above its kernel floor.
double application_load(double total_cpu, double kernel_cpu);

struct SolarTrace {
  std::array<double, 24> hourly_irradiance{};  // W/m^2

  friend bool operator==(const SolarTrace&, const SolarTrace&) = default;
};

inline constexpr const char* kTraceHeader = "hour,irradiance_w_per_m2";

SolarTrace parse_solar_trace(std::istream& in);
SolarTrace load_solar_trace(const std::filesystem::path& path);
std::string format_solar_trace(const SolarTrace& trace);

/// Hour of day (0-23) that contains the start of `slot`.
std::size_t hour_of_slot(std::size_t slot, double slot_length);

/// Panel output for the hour containing `slot`, reduced by kappa for urban
/// cloudlets. Snapped to kPowerQuantum.
double green_power(const SolarTrace& trace, std::size_t slot,
                   const CloudletSpec& spec, double kappa, double slot_length);

}  // namespace gcn
