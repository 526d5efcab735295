#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "backscatter/link_budget.hpp"

namespace backscatter {

/// Additive white Gaussian noise at the reader, RMS `sigma` volts.
struct NoiseModel {
  double sigma = 1e-6;
  std::uint64_t seed = 0;
};

/// Volt-domain noise RMS for the configured noise power under the 1 ohm
/// convention: sigma = sqrt(noise_power). -90 dBm gives 1e-6 V.
double noise_sigma(const LinkConfig& cfg);

/// Probability that one symbol is taken for a neighbour separated by
/// modulation index m: 0.5 erfc(V_0 m / (2 sqrt(2) sigma)).
double pairwise_ser(double m, const LinkConfig& cfg);
double pairwise_ser(double m, double v0, double sigma);

struct SerSimulation {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double symbol_error_rate = 0.0;
  /// confusion[i][k]: symbol i transmitted, symbol k detected.
  std::vector<std::vector<std::uint64_t>> confusion;

  std::uint64_t sent(std::size_t symbol) const;
  /// Error rate conditioned on `symbol` being sent; 0 if never sent.
  double symbol_error_rate_for(std::size_t symbol) const;
};

/// Trials are split into batches of this many draws, each with its own
/// generator, so results do not depend on the number of worker threads.
inline constexpr std::uint64_t kSerBatchSize = 65536;

/// Seed of batch `index`: splitmix64(seed ^ splitmix64(index + 1)).
std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t index);

/// Monte-Carlo symbol detection. Symbol i is drawn with probabilities[i] and
/// sent as the amplitude V_0 a_i / 2; the receiver adds N(0, sigma^2) and
/// picks the nearest constellation point. Priors are not used by the
/// detector. Deterministic for a fixed seed.
SerSimulation simulate_ser(std::span<const double> coefficients,
                           std::span<const double> probabilities, const LinkConfig& cfg,
                           const NoiseModel& noise, std::uint64_t trials,
                           unsigned threads = 0);

}  // namespace backscatter
