#include "run_config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bsopt_cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Scale {
  const char* suffix;
  double factor;
};

constexpr Scale kPower[] = {{"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"nW", 1e-9}};
constexpr Scale kFrequency[] = {{"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
constexpr Scale kLength[] = {{"m", 1.0}, {"km", 1e3}};
constexpr Scale kResistance[] = {{"ohm", 1.0}, {"Ohm", 1.0}};

template <std::size_t N>
std::optional<double> lookup(const Scale (&table)[N], const std::string& suffix) {
  for (const Scale& s : table) {
    if (suffix == s.suffix) return s.factor;
  }
  return std::nullopt;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(key + ": expected a non-negative integer, got '" + text + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(text.c_str(), nullptr, 10);
  if (errno == ERANGE) throw UsageError(key + ": integer out of range");
  return v;
}

Unit axis_unit(const std::string& axis) {
  if (axis == "distance") return Unit::length;
  if (axis == "p_one" || axis == "m_th" || axis == "path_loss_exponent") return Unit::none;
  throw UsageError("sweep_axis must be one of p_one, m_th, distance, path_loss_exponent; got '" +
                   axis + "'");
}

}  // namespace

double parse_quantity(const std::string& raw, Unit unit) {
  const std::string text = trim(raw);
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double value = std::strtod(begin, &end);
  if (end == begin || errno == ERANGE || !std::isfinite(value)) {
    throw UsageError("malformed number '" + text + "'");
  }
  const std::string suffix = trim(std::string(end));
  if (suffix.empty()) return value;

  std::optional<double> factor;
  switch (unit) {
    case Unit::power:
      if (suffix == "dBm") return std::pow(10.0, (value - 30.0) / 10.0);
      factor = lookup(kPower, suffix);
      break;
    case Unit::frequency: factor = lookup(kFrequency, suffix); break;
    case Unit::length: factor = lookup(kLength, suffix); break;
    case Unit::resistance: factor = lookup(kResistance, suffix); break;
    case Unit::none: break;
  }
  if (!factor) throw UsageError("unit '" + suffix + "' not accepted in '" + text + "'");
  return value * *factor;
}

RunConfig parse_config(const std::string& text) {
  RunConfig rc;
  bsopt_link_params_default(&rc.link);
  bsopt_constraints_default(&rc.constraints);

  const std::map<std::string, std::pair<double*, Unit>> numeric = {
      {"transmit_power", {&rc.link.transmit_power, Unit::power}},
      {"frequency", {&rc.link.frequency, Unit::frequency}},
      {"speed_of_light", {&rc.link.speed_of_light, Unit::none}},
      {"tag_gain", {&rc.link.tag_gain, Unit::none}},
      {"reader_gain", {&rc.link.reader_gain, Unit::none}},
      {"reference_distance", {&rc.link.reference_distance, Unit::length}},
      {"distance", {&rc.link.distance, Unit::length}},
      {"path_loss_exponent", {&rc.link.path_loss_exponent, Unit::none}},
      {"harvest_efficiency", {&rc.link.harvest_efficiency, Unit::none}},
      {"backscatter_efficiency", {&rc.link.backscatter_efficiency, Unit::none}},
      {"noise_power", {&rc.link.noise_power, Unit::power}},
      {"reader_resistance", {&rc.link.reader_resistance, Unit::resistance}},
      {"m_th", {&rc.constraints.m_th, Unit::none}},
      {"p_l_min", {&rc.constraints.p_l_min, Unit::power}},
      {"p_one", {&rc.p_one, Unit::none}},
      {"antenna_resistance", {&rc.antenna_resistance, Unit::resistance}},
      {"antenna_reactance", {&rc.antenna_reactance, Unit::resistance}},
  };

  std::set<std::string> seen;
  std::string sweep_name, sweep_start, sweep_stop, sweep_count;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw UsageError(where + "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw UsageError(where + "duplicate key '" + key + "'");

    try {
      if (auto it = numeric.find(key); it != numeric.end()) {
        *it->second.first = parse_quantity(value, it->second.second);
      } else if (key == "p_b_min") {
        if (value == "none") {
          rc.constraints.has_p_b_min = 0;
        } else {
          rc.constraints.p_b_min = parse_quantity(value, Unit::power);
          rc.constraints.has_p_b_min = 1;
        }
      } else if (key == "order") {
        rc.order = parse_unsigned(key, value);
      } else if (key == "probabilities") {
        std::istringstream items(value);
        std::string item;
        while (std::getline(items, item, ',')) {
          rc.probabilities.push_back(parse_quantity(item, Unit::none));
        }
      } else if (key == "ser_trials") {
        rc.ser_trials = parse_unsigned(key, value);
      } else if (key == "seed") {
        rc.seed = parse_unsigned(key, value);
      } else if (key == "output") {
        rc.output = value;
      } else if (key == "sweep_axis") {
        sweep_name = value;
      } else if (key == "sweep_start") {
        sweep_start = value;
      } else if (key == "sweep_stop") {
        sweep_stop = value;
      } else if (key == "sweep_count") {
        sweep_count = value;
      } else {
        throw UsageError("unknown key '" + key + "'");
      }
    } catch (const UsageError& e) {
      throw UsageError(where + e.what());
    }
  }

  const bool any_sweep = !sweep_name.empty() || !sweep_start.empty() || !sweep_stop.empty() ||
                         !sweep_count.empty();
  if (any_sweep) {
    if (sweep_name.empty() || sweep_start.empty() || sweep_stop.empty() || sweep_count.empty()) {
      throw UsageError("sweep needs sweep_axis, sweep_start, sweep_stop and sweep_count");
    }
    SweepAxis axis;
    axis.name = sweep_name;
    const Unit u = axis_unit(sweep_name);
    axis.start = parse_quantity(sweep_start, u);
    axis.stop = parse_quantity(sweep_stop, u);
    const std::uint64_t n = parse_unsigned("sweep_count", sweep_count);
    if (n < 2 || n > 1000000) throw UsageError("sweep_count must lie in [2, 1000000]");
    axis.count = static_cast<int>(n);
    rc.sweep = axis;
  }
  if (!rc.probabilities.empty()) {
    if (seen.count("order") && rc.order != rc.probabilities.size()) {
      throw UsageError("order does not match the number of probabilities");
    }
    rc.order = rc.probabilities.size();
    if (rc.sweep && rc.sweep->name == "p_one") {
      throw UsageError("a p_one sweep cannot be combined with explicit probabilities");
    }
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace bsopt_cli
