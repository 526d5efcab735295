#include "backscatter/symbols.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <utility>

#include "backscatter/error.hpp"

namespace backscatter {

namespace {

constexpr double kSumTolerance = 1e-12;

std::size_t log2_exact(std::size_t order) {
  return static_cast<std::size_t>(std::countr_zero(order));
}

}  // namespace

bool is_power_of_two(std::size_t n) { return std::has_single_bit(n); }

std::string bit_pattern(std::size_t value, std::size_t bits) {
  std::string out(bits, '0');
  for (std::size_t b = 0; b < bits; ++b) {
    if (value & (std::size_t{1} << b)) out[bits - 1 - b] = '1';
  }
  return out;
}

SymbolSet::SymbolSet(std::vector<double> probabilities, std::vector<std::string> patterns)
    : probabilities_(std::move(probabilities)), patterns_(std::move(patterns)) {}

SymbolSet SymbolSet::sorted(std::vector<double> probabilities,
                            std::vector<std::string> patterns) {
  std::vector<std::size_t> idx(probabilities.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return probabilities[a] > probabilities[b];
  });
  std::vector<double> p;
  std::vector<std::string> s;
  for (auto i : idx) {
    p.push_back(probabilities[i]);
    s.push_back(std::move(patterns[i]));
  }
  return SymbolSet(std::move(p), std::move(s));
}

std::size_t SymbolSet::bits_per_symbol() const { return log2_exact(order()); }

SymbolSet SymbolSet::from_bit_probability(double p_one, std::size_t order) {
  if (order < 2 || !is_power_of_two(order)) {
    throw Error(ErrorCode::invalid_argument, "modulation order must be a power of two >= 2");
  }
  if (!(p_one >= 0.0 && p_one <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "bit probability must lie in [0, 1]");
  }
  const std::size_t bits = log2_exact(order);
  std::vector<double> probs;
  std::vector<std::string> patterns;
  for (std::size_t k = 0; k < order; ++k) {
    const std::size_t value = order - 1 - k;  // decimal-descending
    const int ones = std::popcount(value);
    const int zeros = static_cast<int>(bits) - ones;
    probs.push_back(std::pow(p_one, ones) * std::pow(1.0 - p_one, zeros));
    patterns.push_back(bit_pattern(value, bits));
  }
  return sorted(std::move(probs), std::move(patterns));
}

SymbolSet SymbolSet::from_probabilities(std::span<const double> probabilities) {
  const std::size_t order = probabilities.size();
  if (order < 2 || !is_power_of_two(order)) {
    throw Error(ErrorCode::invalid_argument, "modulation order must be a power of two >= 2");
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::invalid_argument, "symbol probabilities must lie in [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::invalid_argument, "symbol probabilities must sum to one");
  }
  const std::size_t bits = log2_exact(order);
  std::vector<std::string> patterns;
  for (std::size_t k = 0; k < order; ++k) patterns.push_back(bit_pattern(order - 1 - k, bits));
  return sorted({probabilities.begin(), probabilities.end()}, std::move(patterns));
}

}  // namespace backscatter
