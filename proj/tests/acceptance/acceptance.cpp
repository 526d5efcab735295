// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "backscatter/baselines.hpp"
#include "backscatter/bask.hpp"
#include "backscatter/error.hpp"
#include "backscatter/feasibility.hpp"
#include "backscatter/link_budget.hpp"
#include "backscatter/mask.hpp"
#include "backscatter/oracle.hpp"
#include "backscatter/ser.hpp"
#include "backscatter/symbols.hpp"

using namespace backscatter;
using namespace backscatter::oracle;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Bounds for a link, or nullopt when the tag cannot meet the floors at all.
std::optional<CoefficientBounds> try_bounds(const LinkConfig& cfg, const DesignConstraints& c) {
  try {
    return coefficient_bounds(cfg, c);
  } catch (const Error&) {
    return std::nullopt;
  }
}

Outcome bask_vs_grid() {
  auto g = rng(101);
  Outcome o;
  int done = 0;
  double worst_power = 0.0, worst_coef = 0.0;
  while (done < 100) {
    LinkConfig cfg;
    cfg.distance = uniform(g, 3.0, 9.0);
    DesignConstraints c;
    const auto b = try_bounds(cfg, c);
    if (!b || !(b->width() > 0.0)) continue;
    c.m_th = uniform(g, 0.0, 1.0) * max_modulation_threshold(2, *b);
    if (c.m_th <= 0.0) continue;
    const double p1 = uniform(g, 0.5, 1.0);
    const auto d = solve_bask(p1, c, cfg);
    const auto grid = grid_search_bask(p1, c, cfg, 1e-3);
    if (!grid) {
      o.pass = false;
      continue;
    }
    const double pe = std::abs(d.average_power - grid->average_power) / d.average_power;
    const double ce = std::max(std::abs(d.gamma_high - grid->gamma_high),
                               std::abs(d.gamma_low - grid->gamma_low));
    worst_power = std::max(worst_power, pe);
    worst_coef = std::max(worst_coef, ce);
    ++done;
  }
  o.pass = o.pass && worst_power <= 1e-6 && worst_coef <= 1e-3;
  o.detail = fmt("100 instances, worst relative power gap %.3g, worst coefficient gap %.3g",
                 worst_power, worst_coef);
  return o;
}

Outcome mask_vs_permutation() {
  auto g = rng(202);
  Outcome o;
  double worst = 0.0;
  int total = 0;
  for (std::size_t order : {2u, 4u, 8u}) {
    int done = 0;
    while (done < 50) {
      LinkConfig cfg;
      cfg.distance = uniform(g, 3.0, 9.0);
      DesignConstraints c;
      const auto b = try_bounds(cfg, c);
      if (!b || !(b->width() > 0.0)) continue;
      c.m_th = uniform(g, 0.01, 1.0) * max_modulation_threshold(order, *b);
      const auto set = SymbolSet::from_bit_probability(uniform(g, 0.5, 1.0), order);
      const auto d = solve_mask(set, c, cfg);
      const auto p = permutation_search(set, c, cfg);
      if (!p) {
        o.pass = false;
        continue;
      }
      worst = std::max(worst, std::abs(d.average_power - p->average_power));
      ++done;
      ++total;
    }
  }
  o.pass = o.pass && worst <= 1e-9;
  o.detail = fmt("%.0f instances over M in {2,4,8}, worst power gap %.3g W", total, worst);
  return o;
}

Outcome matrix_exactness() {
  const std::vector<std::vector<std::size_t>> printed = {{0, 1, 2, 3}, {2, 0, 1, 3},
                                                         {1, 0, 2, 3}, {3, 2, 0, 1},
                                                         {3, 1, 0, 2}, {3, 2, 1, 0}};
  Outcome o;
  o.pass = sequence_matrix(4).rows == printed;
  std::string counts;
  for (std::size_t order : {2u, 4u, 8u, 16u}) {
    const std::size_t rows = sequence_matrix(order).rows.size();
    o.pass = o.pass && rows == 2 * (order - 1);
    counts += " M=" + std::to_string(order) + ":" + std::to_string(rows);
  }
  o.detail = "4-ASK matrix " + std::string(sequence_matrix(4).rows == printed ? "exact" : "differs") +
             ", rows" + counts;
  return o;
}

Outcome bounds_reproduction() {
  const auto b = coefficient_bounds(LinkConfig{}, DesignConstraints{});
  Outcome o;
  o.pass = std::abs(b.lower + 0.6893) <= 5e-4 && std::abs(b.upper - 0.5418) <= 5e-4;
  o.detail = fmt("bounds (%.6f, %.6f)", b.lower, b.upper);
  return o;
}

Outcome worked_instance() {
  const auto set = SymbolSet::from_bit_probability(0.7, 4);
  const auto d = solve_mask(set, DesignConstraints{}, LinkConfig{});
  const auto p = permutation_search(set, DesignConstraints{}, LinkConfig{});
  const double expect[] = {0.054, -0.246, 0.354, -0.546};
  Outcome o;
  o.pass = rel_close(d.average_power, 8.885e-6, 1e-3) && p &&
           std::abs(p->average_power - d.average_power) <= 1e-15;
  for (std::size_t i = 0; i < 4; ++i) {
    o.pass = o.pass && std::abs(d.coefficients_by_symbol[i] - expect[i]) <= 1e-3;
  }
  o.detail = fmt("power %.10g W, coefficients (%.4f, %.4f, ", d.average_power,
                 d.coefficients_by_symbol[0], d.coefficients_by_symbol[1]) +
             fmt("%.4f, %.4f)", d.coefficients_by_symbol[2], d.coefficients_by_symbol[3]);
  return o;
}

Outcome ser_agreement() {
  auto g = rng(606);
  const LinkConfig cfg;
  const double v0 = induced_voltage(cfg);
  Outcome o;
  double worst_sigmas = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double m = uniform(g, 0.05, 0.5);
    const double x = uniform(g, 0.4, 2.15);
    const double sigma = v0 * m / (2.0 * std::sqrt(2.0) * x);
    const double analytic = pairwise_ser(m, v0, sigma);
    if (analytic < 1e-3 || analytic > 0.3) {
      o.pass = false;
      continue;
    }
    const double top = uniform(g, -0.4, 0.4);
    const double coefficients[] = {top + m, top - m};
    const double probabilities[] = {0.5, 0.5};
    NoiseModel noise;
    noise.sigma = sigma;
    noise.seed = 1000 + static_cast<std::uint64_t>(i);
    const std::uint64_t trials = 1000000;
    const auto sim = simulate_ser(coefficients, probabilities, cfg, noise, trials);
    const double sd = std::sqrt(analytic * (1 - analytic) / static_cast<double>(trials));
    const double z = std::abs(sim.symbol_error_rate - analytic) / sd;
    worst_sigmas = std::max(worst_sigmas, z);
    o.pass = o.pass && z <= 3.0;
  }
  o.detail = fmt("20 pairs, 1e6 trials each, worst deviation %.3g binomial sd", worst_sigmas);
  return o;
}

Outcome real_axis_witness() {
  const LinkConfig cfg;
  const double step = 0.04;
  Outcome o;
  double worst_imag = 0.0;
  int runs = 0;
  for (double p1 : {0.5, 0.7, 0.9}) {
    for (double m : {0.1, 0.2, 0.3}) {
      DesignConstraints c;
      c.m_th = m;
      const auto r = grid_search_complex_bask(p1, c, cfg, step);
      if (!r) {
        o.pass = false;
        continue;
      }
      worst_imag = std::max({worst_imag, std::abs(r->first.imag), std::abs(r->second.imag)});
      ++runs;
    }
  }
  o.pass = o.pass && worst_imag <= step;

  const double scale = cfg.harvest_efficiency * available_power(cfg);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto e = equal_harvest_backscatter(scale * i / 999.0, cfg);
    if (e.real_axis < e.imaginary_axis) ++violations;
  }
  o.pass = o.pass && violations == 0;
  o.detail = fmt("%.0f grid searches at step %.2f, worst |imag| %.3g", runs, step, worst_imag) +
             fmt("; 1000-point harvest grid, %.0f violations", violations);
  return o;
}

Outcome benchmark_gain() {
  const LinkConfig cfg;
  const DesignConstraints base;
  const auto b = coefficient_bounds(cfg, base);
  const double hi = max_modulation_threshold(2, b);
  const double probs[] = {0.7, 0.3};
  Outcome o;
  double gain_sum = 0.0;
  const int points = 100;
  for (int i = 0; i < points; ++i) {
    DesignConstraints c = base;
    c.m_th = 0.05 + (hi - 0.05) * i / (points - 1);
    const double opt = solve_bask(0.7, c, cfg).average_power;
    const double bench = average_power(bask_benchmark(c.m_th), probs, cfg);
    o.pass = o.pass && opt >= bench;
    gain_sum += (opt - bench) / bench;
  }
  const double gain = gain_sum / points;
  o.pass = o.pass && gain >= 0.05 && gain <= 0.20;
  o.detail = fmt("m_th in [0.05, %.4f], 100 points, average gain %.2f%%", hi, 100.0 * gain);
  return o;
}

// Solves 4-ASK over a one-parameter sweep, skipping points where no design exists.
struct TrendPoint {
  double x;
  MaskDesign design;
};

std::vector<TrendPoint> sweep(double lo, double hi, int n,
                              const std::function<void(double, LinkConfig&, DesignConstraints&,
                                                       double&)>& apply) {
  std::vector<TrendPoint> out;
  for (int i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * i / (n - 1);
    LinkConfig cfg;
    DesignConstraints c;
    c.m_th = 0.1;
    double p1 = 0.7;
    apply(x, cfg, c, p1);
    try {
      out.push_back({x, solve_mask(SymbolSet::from_bit_probability(p1, 4), c, cfg)});
    } catch (const Error&) {
    }
  }
  return out;
}

bool monotone(const std::vector<TrendPoint>& pts, int direction) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double prev = pts[i - 1].design.average_power;
    const double cur = pts[i].design.average_power;
    const double slack = 1e-14 * prev;
    if (direction > 0 ? cur < prev - slack : cur > prev + slack) return false;
  }
  return pts.size() >= 2;
}

Outcome trends() {
  Outcome o;
  const auto by_p = sweep(0.5, 1.0, 51, [](double x, LinkConfig&, DesignConstraints&, double& p) {
    p = x;
  });
  const auto by_m = sweep(0.01, 0.205, 40, [](double x, LinkConfig&, DesignConstraints& c,
                                             double&) { c.m_th = x; });
  const auto by_d = sweep(3.0, 9.0, 61, [](double x, LinkConfig& cfg, DesignConstraints& c,
                                          double&) {
    cfg.distance = x;
    c.m_th = 0.15;
  });
  const auto by_n = sweep(2.0, 3.3, 27, [](double x, LinkConfig& cfg, DesignConstraints&,
                                          double&) { cfg.path_loss_exponent = x; });
  const bool p_ok = monotone(by_p, +1);
  const bool m_ok = monotone(by_m, -1);
  const bool d_ok = monotone(by_d, -1);
  const bool n_ok = monotone(by_n, -1);

  // Coefficients stay put over d while no bound is active, then move once pinned.
  const std::vector<double>* reference = nullptr;
  double breakpoint = NAN;
  bool invariant = true;
  bool moved_after = false;
  for (const auto& pt : by_d) {
    const auto& coeffs = pt.design.coefficients_by_symbol;
    if (pt.design.active_case == ActiveCase::interior) {
      if (!reference) reference = &coeffs;
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        invariant = invariant && std::abs(coeffs[k] - (*reference)[k]) <= 1e-9;
      }
    } else {
      if (std::isnan(breakpoint)) breakpoint = pt.x;
      if (reference) {
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
          moved_after = moved_after || std::abs(coeffs[k] - (*reference)[k]) > 1e-9;
        }
      }
    }
  }
  const bool d_shape = invariant && reference && moved_after;
  o.pass = p_ok && m_ok && d_ok && n_ok && d_shape;
  o.detail = std::string("p_one ") + (p_ok ? "up" : "NOT up") + ", m_th " +
             (m_ok ? "down" : "NOT down") + ", d " + (d_ok ? "down" : "NOT down") + ", n " +
             (n_ok ? "down" : "NOT down") + ", coefficients " +
             (d_shape ? "fixed until d = " + fmt("%.1f m", breakpoint) : std::string("NOT fixed")) +
             fmt(" (%.0f distance points solved)", static_cast<double>(by_d.size()));
  return o;
}

Outcome feasibility_law() {
  auto g = rng(1010);
  Outcome o;
  int agree = 0, feasible = 0, boundary = 0;
  int done = 0;
  while (done < 100) {
    LinkConfig cfg;
    cfg.distance = uniform(g, 3.0, 9.0);
    cfg.path_loss_exponent = uniform(g, 2.0, 3.5);
    DesignConstraints c;
    const auto b = try_bounds(cfg, c);
    if (!b || !(b->width() > 0.0)) continue;
    const std::size_t order = std::size_t{1} << (1 + done % 4);
    c.m_th = done % 5 == 0 ? max_modulation_threshold(order, *b) : uniform(g, 0.005, 0.6);
    if (done % 5 == 0) ++boundary;
    const bool law = is_feasible(order, *b, c.m_th);
    bool solved = true;
    try {
      solve_mask(SymbolSet::from_bit_probability(uniform(g, 0.5, 1.0), order), c, cfg);
    } catch (const Error&) {
      solved = false;
    }
    if (solved == law) ++agree;
    if (law) ++feasible;
    ++done;
  }
  o.pass = agree == 100;
  o.detail = fmt("%.0f/100 agree (%.0f feasible, ", agree, feasible) +
             fmt("%.0f at the boundary)", boundary);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"binary closed form matches grid oracle", bask_vs_grid},
      {"multi-level design matches permutation oracle", mask_vs_permutation},
      {"sequence matrix exact", matrix_exactness},
      {"coefficient bounds", bounds_reproduction},
      {"worked 4-ASK instance", worked_instance},
      {"symbol error rate agrees with simulation", ser_agreement},
      {"real-axis optimum and harvest inequality", real_axis_witness},
      {"benchmark dominance and gain", benchmark_gain},
      {"trend suite", trends},
      {"feasibility law", feasibility_law},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s: %s (%s; %.1f s)\n", index, o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
