#include <doctest.h>

#include <set>

#include "backscatter/error.hpp"
#include "backscatter/ser.hpp"
#include "support.hpp"

using namespace backscatter;
using testing::rel_close;

namespace {

// |empirical - expected| within three binomial standard deviations.
bool within_3_sigma(std::uint64_t hits, std::uint64_t n, double p) {
  const double sd = std::sqrt(p * (1 - p) / static_cast<double>(n));
  return std::abs(static_cast<double>(hits) / static_cast<double>(n) - p) <= 3 * sd;
}

}  // namespace

TEST_CASE("analytic pairwise error") {
  const LinkConfig cfg;
  CHECK(pairwise_ser(0.0, cfg) == 0.5);
  CHECK(pairwise_ser(1.0, 1e3, 1e-6) == 0.0);
  const double v0 = 2.0 * std::sqrt(2.0);
  CHECK(rel_close(pairwise_ser(0.1, v0, 1.0), 0.44376854199, 1e-10));
  CHECK(rel_close(pairwise_ser(1.0, v0, 1.0), 0.078649603525, 1e-10));
  CHECK(rel_close(pairwise_ser(0.5, 4 * v0, 1.0), 0.0023388674905, 1e-10));
  // Reference voltage with sigma = 2e-5 V.
  CHECK(rel_close(pairwise_ser(0.2, induced_voltage(cfg), 2e-5), 0.14341959401, 1e-9));
  CHECK_THROWS_AS(pairwise_ser(1.5, cfg), Error);
  CHECK_THROWS_AS(pairwise_ser(0.2, 1.0, 0.0), Error);
}

TEST_CASE("pairwise error falls with separation") {
  const LinkConfig cfg;
  double last = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = pairwise_ser(i / 100.0, 1.0, 0.2);
    if (i > 0) CHECK(p < last);
    last = p;
  }
}

TEST_CASE("noise convention") {
  CHECK(rel_close(noise_sigma(LinkConfig{}), 1e-6, 1e-12));
}

TEST_CASE("noiseless detection never errs") {
  const double g[] = {0.12, -0.28};
  const double p[] = {0.7, 0.3};
  const auto r = simulate_ser(g, p, LinkConfig{}, {1e-15, 3}, 100000);
  CHECK(r.errors == 0);
  CHECK(r.trials == 100000);
  CHECK(r.sent(0) + r.sent(1) == 100000);
}

TEST_CASE("binary detection agrees with the analytic error") {
  const LinkConfig cfg;
  const double v0 = induced_voltage(cfg);
  const double m = 0.2;
  const double sigma = 2e-5;
  const double g[] = {m, -m};
  const double p[] = {0.5, 0.5};
  const std::uint64_t n = 2000000;
  const auto r = simulate_ser(g, p, cfg, {sigma, 11}, n);
  CHECK(within_3_sigma(r.errors, n, pairwise_ser(m, v0, sigma)));
}

TEST_CASE("ladder symbols see one or two neighbours") {
  const LinkConfig cfg;
  const double v0 = induced_voltage(cfg);
  const double m = 0.1;
  const double sigma = 1.5e-5;
  const double pe = pairwise_ser(m, v0, sigma);
  const double g[] = {0.1, -0.1, 0.3, -0.3};
  const double p[] = {0.25, 0.25, 0.25, 0.25};
  const auto r = simulate_ser(g, p, cfg, {sigma, 5}, 2000000);
  // Symbols 0 and 1 are interior, 2 and 3 are the outer levels.
  for (std::size_t i = 0; i < 4; ++i) {
    const double expect = (i < 2) ? 2 * pe : pe;
    CHECK(within_3_sigma(r.sent(i) - r.confusion[i][i], r.sent(i), expect));
  }
}

TEST_CASE("deterministic for a seed, independent of threads") {
  const double g[] = {0.054, -0.246, 0.354, -0.546};
  const double p[] = {0.49, 0.21, 0.21, 0.09};
  const NoiseModel noise{2e-5, 42};
  const std::uint64_t n = 5 * kSerBatchSize + 123;
  const auto a = simulate_ser(g, p, LinkConfig{}, noise, n, 1);
  const auto b = simulate_ser(g, p, LinkConfig{}, noise, n, 4);
  const auto c = simulate_ser(g, p, LinkConfig{}, noise, n, 0);
  CHECK(a.confusion == b.confusion);
  CHECK(a.confusion == c.confusion);
  CHECK(a.trials == n);
  const auto d = simulate_ser(g, p, LinkConfig{}, {2e-5, 43}, n, 1);
  CHECK(a.confusion != d.confusion);
}

TEST_CASE("batch seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t b = 0; b < 10000; ++b) seen.insert(batch_seed(7, b));
  CHECK(seen.size() == 10000);
}

TEST_CASE("simulation preconditions") {
  const double g[] = {0.1, -0.1};
  const double p[] = {0.5, 0.5};
  const double p3[] = {0.5, 0.25, 0.25};
  CHECK_THROWS_AS(simulate_ser(g, p, LinkConfig{}, {1e-6, 1}, 0), Error);
  CHECK_THROWS_AS(simulate_ser(g, p3, LinkConfig{}, {1e-6, 1}, 10), Error);
  CHECK_THROWS_AS(simulate_ser(g, p, LinkConfig{}, {0.0, 1}, 10), Error);
}
