#include "gcn/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "gcn/error.hpp"

namespace gcn {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if constexpr (std::is_floating_point_v<T>) {
    if (ec == std::errc() && !std::isfinite(out)) return false;
  }
  return ec == std::errc() && ptr == end;
}

template <typename T>
T number_or_throw(std::string_view text, std::size_t line) {
  T value{};
  if (!parse_number(text, value)) {
    throw ParseError("invalid number '" + std::string(text) + "'", line);
  }
  return value;
}

template <typename T>
std::vector<T> list_or_throw(std::string_view text, std::size_t count,
                             std::size_t line) {
  const auto parts = split(text, ',');
  if (parts.size() != count) {
    throw ParseError("expected " + std::to_string(count) +
                         " comma-separated values, got '" + std::string(text) + "'",
                     line);
  }
  std::vector<T> values;
  for (auto p : parts) values.push_back(number_or_throw<T>(p, line));
  return values;
}

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (grid_dim < 1) throw ConfigError("grid_dim must be >= 1");
  if (!(area_side > 0.0)) throw ConfigError("area_side must be positive");
  if (slot_count < 1) throw ConfigError("slot_count must be >= 1");
  if (capacity_range.lo < 1 || capacity_range.lo > capacity_range.hi) {
    throw ConfigError("capacity_range must satisfy 1 <= lo <= hi");
  }
  if (!(speed_range.lo >= 0.0 && speed_range.lo <= speed_range.hi)) {
    throw ConfigError("speed_range must satisfy 0 <= lo <= hi");
  }
  if (!(dest_stddev > 0.0)) throw ConfigError("dest_stddev must be positive");
  if (!(kernel_cpu > 0.0 && kernel_cpu < 100.0)) {
    throw ConfigError("kernel_cpu must lie in (0, 100)");
  }
  if (!(cpu_range.lo >= kernel_cpu && cpu_range.lo <= cpu_range.hi &&
        cpu_range.hi <= 100.0)) {
    throw ConfigError("cpu_range must satisfy kernel_cpu <= lo <= hi <= 100");
  }
  if (!(panel_area >= 0.0)) throw ConfigError("panel_area must be non-negative");
  if (!(panel_efficiency > 0.0 && panel_efficiency <= 1.0)) {
    throw ConfigError("panel_efficiency must lie in (0, 1]");
  }
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw ConfigError("kappa must lie in [0, 1]");
  if (!(urban_region.x0 <= urban_region.x1 && urban_region.y0 <= urban_region.y1)) {
    throw ConfigError("urban_region corners must be ordered");
  }
}

ScenarioConfig parse_scenario_config(std::istream& in) {
  ScenarioConfig cfg;
  using Setter = std::function<void(std::string_view, std::size_t)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"grid_dim", [&](auto v, auto l) { cfg.grid_dim = number_or_throw<int>(v, l); }},
      {"area_side", [&](auto v, auto l) { cfg.area_side = number_or_throw<double>(v, l); }},
      {"ue_count", [&](auto v, auto l) { cfg.ue_count = number_or_throw<std::size_t>(v, l); }},
      {"slot_count", [&](auto v, auto l) { cfg.slot_count = number_or_throw<std::size_t>(v, l); }},
      {"capacity_range",
       [&](auto v, auto l) {
         const auto r = list_or_throw<int>(v, 2, l);
         cfg.capacity_range = {r[0], r[1]};
       }},
      {"speed_range",
       [&](auto v, auto l) {
         const auto r = list_or_throw<double>(v, 2, l);
         cfg.speed_range = {r[0], r[1]};
       }},
      {"dest_mean", [&](auto v, auto l) { cfg.dest_mean = number_or_throw<double>(v, l); }},
      {"dest_stddev", [&](auto v, auto l) { cfg.dest_stddev = number_or_throw<double>(v, l); }},
      {"cpu_range",
       [&](auto v, auto l) {
         const auto r = list_or_throw<double>(v, 2, l);
         cfg.cpu_range = {r[0], r[1]};
       }},
      {"kernel_cpu", [&](auto v, auto l) { cfg.kernel_cpu = number_or_throw<double>(v, l); }},
      {"panel_area", [&](auto v, auto l) { cfg.panel_area = number_or_throw<double>(v, l); }},
      {"panel_efficiency",
       [&](auto v, auto l) { cfg.panel_efficiency = number_or_throw<double>(v, l); }},
      {"kappa", [&](auto v, auto l) { cfg.kappa = number_or_throw<double>(v, l); }},
      {"urban_region",
       [&](auto v, auto l) {
         const auto r = list_or_throw<double>(v, 4, l);
         cfg.urban_region = {r[0], r[1], r[2], r[3]};
       }},
      {"rng_seed",
       [&](auto v, auto l) { cfg.rng_seed = number_or_throw<std::uint64_t>(v, l); }},
  };

  std::map<std::string, std::size_t, std::less<>> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw ParseError("unknown key '" + std::string(key) + "'", line_no);
    }
    if (const auto prev = seen.find(key); prev != seen.end()) {
      throw ParseError("duplicate key '" + std::string(key) + "' (first on line " +
                           std::to_string(prev->second) + ")",
                       line_no);
    }
    seen.emplace(std::string(key), line_no);
    it->second(value, line_no);
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_scenario_config(in);
}

std::string format_scenario_config(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "grid_dim = " << c.grid_dim << '\n'
     << "area_side = " << format_double(c.area_side) << '\n'
     << "ue_count = " << c.ue_count << '\n'
     << "slot_count = " << c.slot_count << '\n'
     << "capacity_range = " << c.capacity_range.lo << ',' << c.capacity_range.hi << '\n'
     << "speed_range = " << format_double(c.speed_range.lo) << ','
     << format_double(c.speed_range.hi) << '\n'
     << "dest_mean = " << format_double(c.dest_mean) << '\n'
     << "dest_stddev = " << format_double(c.dest_stddev) << '\n'
     << "cpu_range = " << format_double(c.cpu_range.lo) << ','
     << format_double(c.cpu_range.hi) << '\n'
     << "kernel_cpu = " << format_double(c.kernel_cpu) << '\n'
     << "panel_area = " << format_double(c.panel_area) << '\n'
     << "panel_efficiency = " << format_double(c.panel_efficiency) << '\n'
     << "kappa = " << format_double(c.kappa) << '\n'
     << "urban_region = " << format_double(c.urban_region.x0) << ','
     << format_double(c.urban_region.y0) << ',' << format_double(c.urban_region.x1)
     << ',' << format_double(c.urban_region.y1) << '\n'
     << "rng_seed = " << c.rng_seed << '\n';
  return os.str();
}

RngStreams RngStreams::from_seed(std::uint64_t seed) {
  const auto lo = static_cast<std::uint32_t>(seed);
  const auto hi = static_cast<std::uint32_t>(seed >> 32);
  auto stream = [&](std::uint32_t id) {
    std::seed_seq seq{lo, hi, id};
    return Rng(seq);
  };
  return {stream(1), stream(2), stream(3)};
}

PowerParams power_params(const ScenarioConfig& config) {
  PowerParams p;
  p.kernel_cpu = config.kernel_cpu;
  return p;
}

Network init_topology(const ScenarioConfig& config, Rng& rng) {
  config.validate();
  Network net{SiteTopology::grid(config.grid_dim, config.area_side), {},
              power_params(config), DelayParams{}};
  std::uniform_int_distribution<int> servers(config.capacity_range.lo,
                                             config.capacity_range.hi);
  net.cloudlets.reserve(net.topology.site_count());
  for (SiteIndex i = 0; i < net.topology.site_count(); ++i) {
    CloudletSpec spec;
    spec.server_count = servers(rng);
    spec.panel_area = config.panel_area;
    spec.panel_efficiency = config.panel_efficiency;
    spec.zone = config.urban_region.contains(net.topology.position(i)) ? Zone::urban
                                                                       : Zone::rural;
    net.cloudlets.push_back(spec);
  }
  return net;
}

Point draw_destination(const ScenarioConfig& config, Rng& rng) {
  std::normal_distribution<double> coord(config.dest_mean, config.dest_stddev);
  auto draw = [&] {
    while (true) {
      const double v = coord(rng);
      if (v >= 0.0 && v <= config.area_side) return v;
    }
  };
  const double x = draw();
  const double y = draw();
  return {x, y};
}

World init_ues(const ScenarioConfig& config, const Network& network, Rng& rng) {
  config.validate();
  std::size_t total = 0;
  for (CloudletIndex i = 0; i < network.cloudlet_count(); ++i) {
    total += network.capacity(i);
  }
  if (total < config.ue_count) {
    throw InsufficientCapacity("network hosts at most " + std::to_string(total) +
                               " avatars, " + std::to_string(config.ue_count) +
                               " requested");
  }

  std::uniform_real_distribution<double> coord(0.0, config.area_side);
  std::uniform_real_distribution<double> speed(config.speed_range.lo,
                                               config.speed_range.hi);
  World world;
  world.ues.reserve(config.ue_count);
  SlotState initial{network, {}, {}, {}};
  initial.loads.reserve(config.ue_count);
  for (AvatarId k = 0; k < config.ue_count; ++k) {
    UEState ue;
    ue.avatar_id = k;
    ue.position.x = coord(rng);
    ue.position.y = coord(rng);
    ue.destination = draw_destination(config, rng);
    ue.speed = speed(rng);
    initial.loads.push_back({k, config.kernel_cpu, enb_of(ue.position, network.topology)});
    world.ues.push_back(ue);
  }
  world.initial = far_assign(initial).assignment;
  return world;
}

UEState advance(UEState ue, double distance_km, const ScenarioConfig& config,
                Rng& rng) {
  const double dx = ue.destination.x - ue.position.x;
  const double dy = ue.destination.y - ue.position.y;
  const double remaining = std::hypot(dx, dy);
  if (distance_km >= remaining) {
    ue.position = ue.destination;
    ue.destination = draw_destination(config, rng);
    return ue;
  }
  if (distance_km <= 0.0) return ue;
  const double f = distance_km / remaining;
  ue.position.x = std::clamp(ue.position.x + f * dx, 0.0, config.area_side);
  ue.position.y = std::clamp(ue.position.y + f * dy, 0.0, config.area_side);
  return ue;
}

UEState step_mobility(const UEState& ue, double slot_seconds,
                      const ScenarioConfig& config, Rng& rng) {
  std::uniform_real_distribution<double> speed(config.speed_range.lo,
                                               config.speed_range.hi);
  UEState next = ue;
  next.speed = speed(rng);
  return advance(next, next.speed * slot_seconds / 1000.0, config, rng);
}

SiteIndex enb_of(const Point& position, const SiteTopology& topo) {
  const int dim = topo.grid_dim();
  if (dim < 1) throw ConfigError("enb_of needs a grid topology");
  const double side = topo.cell_side();
  auto cell = [&](double v) {
    const auto c = static_cast<int>(std::floor(v / side));
    return std::clamp(c, 0, dim - 1);
  };
  return static_cast<SiteIndex>(cell(position.x)) * dim +
         static_cast<SiteIndex>(cell(position.y));
}

double sample_utilization(const ScenarioConfig& config, Rng& rng) {
  std::uniform_real_distribution<double> u(config.cpu_range.lo, config.cpu_range.hi);
  return u(rng);
}

double application_load(double total_cpu, double kernel_cpu) {
  return std::max(0.0, total_cpu - kernel_cpu);
}

SolarTrace parse_solar_trace(std::istream& in) {
  SolarTrace trace;
  std::string raw;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (!header) {
      if (line != kTraceHeader) {
        throw ParseError(std::string("expected header '") + kTraceHeader + "'", line_no);
      }
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw ParseError("expected 'hour,irradiance'", line_no);
    std::size_t hour = 0;
    double value = 0.0;
    if (!parse_number(fields[0], hour)) throw ParseError("invalid hour", line_no);
    if (!parse_number(fields[1], value) || value < 0.0) {
      throw ParseError("irradiance must be a non-negative decimal", line_no);
    }
    if (rows >= trace.hourly_irradiance.size()) {
      throw CountError("trace has more than 24 hourly rows");
    }
    if (hour != rows) {
      throw ParseError("expected hour " + std::to_string(rows), line_no);
    }
    trace.hourly_irradiance[rows++] = value;
  }
  if (!header) throw ParseError("empty trace", line_no + 1);
  if (rows != trace.hourly_irradiance.size()) {
    throw CountError("trace has " + std::to_string(rows) + " hourly rows, expected 24");
  }
  return trace;
}

SolarTrace load_solar_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open trace file " + path.string());
  return parse_solar_trace(in);
}

std::string format_solar_trace(const SolarTrace& trace) {
  std::string out = std::string(kTraceHeader) + '\n';
  for (std::size_t h = 0; h < trace.hourly_irradiance.size(); ++h) {
    out += std::to_string(h) + ',' + format_double(trace.hourly_irradiance[h]) + '\n';
  }
  return out;
}

std::size_t hour_of_slot(std::size_t slot, double slot_length) {
  const double hours = static_cast<double>(slot) * slot_length;
  return static_cast<std::size_t>(std::floor(hours + 1e-9)) % 24;
}

double green_power(const SolarTrace& trace, std::size_t slot,
                   const CloudletSpec& spec, double kappa, double slot_length) {
  double watts = trace.hourly_irradiance[hour_of_slot(slot, slot_length)] *
                 spec.panel_area * spec.panel_efficiency;
  if (spec.zone == Zone::urban) watts *= 1.0 - kappa;
  return snap_power(watts);
}

}  // namespace gcn
