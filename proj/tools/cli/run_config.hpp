#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsopt/bsopt.h"

namespace bsopt_cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SweepAxis {
  std::string name;  // p_one | m_th | distance | path_loss_exponent
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

struct RunConfig {
  bsopt_link_params link{};
  bsopt_constraints constraints{};
  std::size_t order = 4;
  double p_one = 0.7;
  std::vector<double> probabilities;  // overrides p_one when non-empty
  double antenna_resistance = 50.0;
  double antenna_reactance = 0.0;
  std::optional<SweepAxis> sweep;
  std::uint64_t ser_trials = 1000000;
  std::uint64_t seed = 1;
  std::string output;
};

// Flat key=value text, '#' starts a comment. Unknown keys, duplicate keys,
// malformed numbers and suffixes that do not fit the key raise UsageError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Number with an optional unit suffix, e.g. "-90 dBm", "915MHz", "7 m".
enum class Unit { none, power, frequency, length, resistance };
double parse_quantity(const std::string& text, Unit unit);

}  // namespace bsopt_cli
