#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace backscatter {

/// Symbol alphabet of an M-ASK modulator. Probabilities are kept in
/// non-increasing order; patterns[i] is the bit string carried by the
/// symbol with probability probabilities[i].
class SymbolSet {
 public:
  /// Independent-bit source: a pattern with k ones out of log2(M) bits has
  /// probability p_one^k (1 - p_one)^(log2 M - k). Patterns start in
  /// decimal-descending order and are stably sorted by probability.
  static SymbolSet from_bit_probability(double p_one, std::size_t order);

  /// Arbitrary distribution over M = 2^k symbols. Input index i carries the
  /// pattern of decimal value M - 1 - i; the result is stably sorted.
  static SymbolSet from_probabilities(std::span<const double> probabilities);

  std::size_t order() const { return probabilities_.size(); }
  std::size_t bits_per_symbol() const;
  const std::vector<double>& probabilities() const { return probabilities_; }
  const std::vector<std::string>& patterns() const { return patterns_; }

 private:
  SymbolSet(std::vector<double> probabilities, std::vector<std::string> patterns);

  /// Stable descending sort of the (probability, pattern) pairs.
  static SymbolSet sorted(std::vector<double> probabilities, std::vector<std::string> patterns);

  std::vector<double> probabilities_;
  std::vector<std::string> patterns_;
};

bool is_power_of_two(std::size_t n);

/// Bit string of `value` left-padded to `bits` characters.
std::string bit_pattern(std::size_t value, std::size_t bits);

}  // namespace backscatter
