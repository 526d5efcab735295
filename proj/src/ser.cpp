#include "backscatter/ser.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "backscatter/error.hpp"

namespace backscatter {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Counts = std::vector<std::uint64_t>;  // row-major M x M

// Nearest-point slicer over the real amplitude line.
struct Slicer {
  std::vector<std::size_t> order;  // symbol indices by ascending amplitude
  std::vector<double> thresholds;  // midpoints between neighbours

  explicit Slicer(std::span<const double> amplitudes) : order(amplitudes.size()) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return amplitudes[a] < amplitudes[b];
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
      thresholds.push_back(0.5 * (amplitudes[order[i - 1]] + amplitudes[order[i]]));
    }
  }

  std::size_t detect(double y) const {
    const auto it = std::lower_bound(thresholds.begin(), thresholds.end(), y);
    return order[static_cast<std::size_t>(it - thresholds.begin())];
  }
};

}  // namespace

double noise_sigma(const LinkConfig& cfg) {
  cfg.validate();
  return std::sqrt(cfg.noise_power);
}

double pairwise_ser(double m, double v0, double sigma) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "modulation index must lie in [0, 1]");
  }
  if (!(sigma > 0.0) || !(v0 >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "pairwise_ser needs sigma > 0 and V_0 >= 0");
  }
  return 0.5 * std::erfc(std::abs(v0) * m / (2.0 * std::sqrt(2.0) * sigma));
}

double pairwise_ser(double m, const LinkConfig& cfg) {
  return pairwise_ser(m, induced_voltage(cfg), noise_sigma(cfg));
}

std::uint64_t SerSimulation::sent(std::size_t symbol) const {
  const auto& row = confusion.at(symbol);
  return std::accumulate(row.begin(), row.end(), std::uint64_t{0});
}

double SerSimulation::symbol_error_rate_for(std::size_t symbol) const {
  const std::uint64_t n = sent(symbol);
  if (n == 0) return 0.0;
  return static_cast<double>(n - confusion[symbol][symbol]) / static_cast<double>(n);
}

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 1));
}

SerSimulation simulate_ser(std::span<const double> coefficients,
                           std::span<const double> probabilities, const LinkConfig& cfg,
                           const NoiseModel& noise, std::uint64_t trials, unsigned threads) {
  const std::size_t n = coefficients.size();
  if (trials == 0) throw Error(ErrorCode::invalid_argument, "simulate_ser needs trials >= 1");
  if (n == 0 || probabilities.size() != n) {
    throw Error(ErrorCode::invalid_argument, "coefficient and probability counts differ");
  }
  if (!(noise.sigma > 0.0)) throw Error(ErrorCode::invalid_argument, "noise sigma must be > 0");
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw Error(ErrorCode::invalid_argument, "negative symbol probability");
  }

  const double v0 = induced_voltage(cfg);
  std::vector<double> amplitudes(n);
  for (std::size_t i = 0; i < n; ++i) amplitudes[i] = v0 * coefficients[i] / 2.0;
  const Slicer slicer(amplitudes);

  const std::uint64_t batches = (trials + kSerBatchSize - 1) / kSerBatchSize;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, batches));

  std::atomic<std::uint64_t> next{0};
  std::vector<Counts> partial(threads, Counts(n * n, 0));
  auto worker = [&](unsigned id) {
    Counts& counts = partial[id];
    for (std::uint64_t b = next++; b < batches; b = next++) {
      std::mt19937_64 gen(batch_seed(noise.seed, b));
      std::discrete_distribution<std::size_t> pick(probabilities.begin(), probabilities.end());
      std::normal_distribution<double> awgn(0.0, noise.sigma);
      const std::uint64_t draws = std::min(kSerBatchSize, trials - b * kSerBatchSize);
      for (std::uint64_t t = 0; t < draws; ++t) {
        const std::size_t sent = pick(gen);
        const std::size_t got = slicer.detect(amplitudes[sent] + awgn(gen));
        ++counts[sent * n + got];
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned id = 1; id < threads; ++id) pool.emplace_back(worker, id);
  worker(0);
  for (auto& t : pool) t.join();

  SerSimulation sim;
  sim.trials = trials;
  sim.confusion.assign(n, std::vector<std::uint64_t>(n, 0));
  for (const Counts& c : partial) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) sim.confusion[i][k] += c[i * n + k];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (i != k) sim.errors += sim.confusion[i][k];
    }
  }
  sim.symbol_error_rate = static_cast<double>(sim.errors) / static_cast<double>(trials);
  return sim;
}

}  // namespace backscatter
