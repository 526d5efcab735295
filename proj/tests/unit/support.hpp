#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "backscatter/link_budget.hpp"

namespace testing {

inline bool rel_close(double a, double b, double rel) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * scale;
}

inline bool abs_close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// E_h * P_a for a configuration.
inline double harvest_scale(const backscatter::LinkConfig& cfg) {
  return cfg.harvest_efficiency * backscatter::available_power(cfg);
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace testing
