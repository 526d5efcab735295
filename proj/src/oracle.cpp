#include "backscatter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "backscatter/error.hpp"
#include "backscatter/mask.hpp"

namespace backscatter::oracle {

namespace {

constexpr double kSeparationSlack = 1e-12;
constexpr double kMagnitudeSlack = 1e-12;

// Largest |Gamma|^2 that still harvests p_l_min; negative when starved.
double harvest_radius_sq(const DesignConstraints& c, const LinkConfig& cfg) {
  const double scale = cfg.harvest_efficiency * available_power(cfg);
  if (c.p_l_min == 0.0) return 1.0;
  if (scale <= 0.0) return -1.0;
  return 1.0 - c.p_l_min / scale;
}

// Symmetric lattice k * step, |k| <= floor(1 / step); contains zero exactly.
std::vector<double> axis(double step) {
  const int k_max = static_cast<int>(std::floor(1.0 / step + 1e-9));
  std::vector<double> v;
  v.reserve(2 * static_cast<std::size_t>(k_max) + 1);
  for (int k = -k_max; k <= k_max; ++k) v.push_back(k * step);
  return v;
}

struct Cell {
  double a1 = 0.0;
  double a2 = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

}  // namespace

std::optional<GridBaskResult> grid_search_bask(double p1, const DesignConstraints& constraints,
                                               const LinkConfig& cfg, double step,
                                               int refinement_passes) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw Error(ErrorCode::invalid_argument, "p1 outside [0, 1]");
  if (!(step > 0.0 && step <= 0.01)) {
    throw Error(ErrorCode::invalid_argument, "grid step must lie in (0, 0.01]");
  }
  if (!(constraints.m_th >= 0.0)) throw Error(ErrorCode::invalid_argument, "m_th must be >= 0");
  if (refinement_passes < 0) throw Error(ErrorCode::invalid_argument, "negative refinement count");

  const double r2 = harvest_radius_sq(constraints, cfg);
  if (r2 < 0.0) return std::nullopt;
  const double gap = 2.0 * constraints.m_th - kSeparationSlack;
  const double q = 1.0 - p1;
  auto admissible = [&](double a) { return std::abs(a) <= 1.0 && a * a <= r2 + kMagnitudeSlack; };
  auto consider = [&](Cell& best, double a1, double a2) {
    if (a1 - a2 < gap) return;
    const double v = p1 * (1.0 - a1 * a1) + q * (1.0 - a2 * a2);
    if (v > best.value) best = {a1, a2, v};
  };

  Cell best;
  const std::vector<double> grid = axis(step);
  std::vector<double> ok;
  for (double a : grid) {
    if (admissible(a)) ok.push_back(a);
  }
  for (double a1 : ok) {
    for (double a2 : ok) consider(best, a1, a2);
  }
  if (!std::isfinite(best.value)) return std::nullopt;

  // Each pass scans +-kWindow cells of the previous pitch at 1/100 of it. A
  // window wider than one cell lets a corner optimum escape lattice rounding.
  constexpr int kWindow = 4;
  constexpr int kSpan = 100 * kWindow;
  double pitch = step;
  for (int pass = 0; pass < refinement_passes; ++pass) {
    const double fine = pitch / 100.0;
    const Cell center = best;
    for (int i = -kSpan; i <= kSpan; ++i) {
      const double a1 = center.a1 + i * fine;
      if (!admissible(a1)) continue;
      for (int j = -kSpan; j <= kSpan; ++j) {
        const double a2 = center.a2 + j * fine;
        if (admissible(a2)) consider(best, a1, a2);
      }
    }
    pitch = fine;
  }

  const double scale = cfg.harvest_efficiency * available_power(cfg);
  return GridBaskResult{best.a1, best.a2, scale * best.value, pitch};
}

std::optional<ComplexGridResult> grid_search_complex_bask(double p1,
                                                          const DesignConstraints& constraints,
                                                          const LinkConfig& cfg, double step) {
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw Error(ErrorCode::invalid_argument, "p1 outside [0, 1]");
  if (!(step >= 0.02 && step <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "complex grid step must lie in [0.02, 1]");
  }
  if (!(constraints.m_th >= 0.0)) throw Error(ErrorCode::invalid_argument, "m_th must be >= 0");

  const double r2 = std::min(1.0, harvest_radius_sq(constraints, cfg));
  if (r2 < 0.0) return std::nullopt;

  struct Point {
    double a, b, mag2;
  };
  std::vector<Point> pts;
  const std::vector<double> grid = axis(step);
  for (double a : grid) {
    for (double b : grid) {
      const double m2 = a * a + b * b;
      if (m2 <= r2 + kMagnitudeSlack) pts.push_back({a, b, m2});
    }
  }

  const double q = 1.0 - p1;
  const double gap2 = 4.0 * constraints.m_th * constraints.m_th - kSeparationSlack;
  auto separated = [&](const Point& x, const Point& y) {
    const double da = x.a - y.a;
    const double db = x.b - y.b;
    return da * da + db * db >= gap2;
  };

  double best = -std::numeric_limits<double>::infinity();
  double best_real = -std::numeric_limits<double>::infinity();
  double best_mag_x = 0.0, best_mag_y = 0.0;
  for (const Point& x : pts) {
    for (const Point& y : pts) {
      if (!separated(x, y)) continue;
      const double v = p1 * (1.0 - x.mag2) + q * (1.0 - y.mag2);
      if (v > best) {
        best = v;
        best_mag_x = std::sqrt(x.mag2);
        best_mag_y = std::sqrt(y.mag2);
      }
      if (x.b == 0.0 && y.b == 0.0) best_real = std::max(best_real, v);
    }
  }
  if (!std::isfinite(best)) return std::nullopt;

  // Every point of the disk lies within half a cell diagonal h of a lattice
  // point, so cells closer to the best than the objective's change over h are
  // indistinguishable at this step. Among those, report the one closest to the
  // real axis, then the higher value.
  const double h = step / std::sqrt(2.0);
  const double tie = p1 * (2.0 * best_mag_x * h + h * h) + q * (2.0 * best_mag_y * h + h * h);
  const Point* pick_x = nullptr;
  const Point* pick_y = nullptr;
  double pick_imag = std::numeric_limits<double>::infinity();
  double pick_value = -std::numeric_limits<double>::infinity();
  for (const Point& x : pts) {
    for (const Point& y : pts) {
      if (!separated(x, y)) continue;
      const double v = p1 * (1.0 - x.mag2) + q * (1.0 - y.mag2);
      if (v < best - tie) continue;
      const double imag = std::abs(x.b) + std::abs(y.b);
      if (imag < pick_imag || (imag == pick_imag && v > pick_value)) {
        pick_imag = imag;
        pick_value = v;
        pick_x = &x;
        pick_y = &y;
      }
    }
  }

  const double scale = cfg.harvest_efficiency * available_power(cfg);
  ComplexGridResult r;
  r.first = {pick_x->a, pick_x->b};
  r.second = {pick_y->a, pick_y->b};
  r.average_power = scale * best;
  r.reported_power = scale * pick_value;
  r.real_axis_power = std::isfinite(best_real) ? scale * best_real : 0.0;
  return r;
}

EqualHarvestBackscatter equal_harvest_backscatter(double p_l, const LinkConfig& cfg) {
  const double pa = available_power(cfg);
  const double scale = cfg.harvest_efficiency * pa;
  if (!(scale > 0.0) || !(p_l >= 0.0 && p_l <= scale)) {
    throw Error(ErrorCode::invalid_argument, "harvested power must lie in [0, E_h P_a]");
  }
  const double x = p_l / scale;
  const double k = cfg.backscatter_efficiency * pa * cfg.reader_gain;
  return {k * (2.0 - x + 2.0 * std::sqrt(1.0 - x)), k * (2.0 - x)};
}

std::optional<PermutationResult> permutation_search(const SymbolSet& symbols,
                                                    const DesignConstraints& constraints,
                                                    const LinkConfig& cfg) {
  const std::size_t order = symbols.order();
  if (order > kMaxPermutationOrder) {
    throw Error(ErrorCode::invalid_argument, "permutation oracle is limited to M <= 8");
  }
  constraints.validate();
  CoefficientBounds bounds;
  try {
    bounds = coefficient_bounds(cfg, constraints);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::infeasible || e.code() == ErrorCode::tag_starved) {
      return std::nullopt;
    }
    throw;
  }
  if (!is_feasible(order, bounds, constraints.m_th)) return std::nullopt;

  const auto& probs = symbols.probabilities();
  std::vector<std::size_t> perm(order);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> row(order);

  PermutationResult best;
  best.average_power = -std::numeric_limits<double>::infinity();
  std::vector<double> best_ladder;
  do {
    for (std::size_t k = 0; k < order; ++k) row[k] = probs[perm[k]];
    PlacedSolution s = solve_placed(row, constraints, bounds, cfg);
    ++best.evaluated;
    if (s.average_power > best.average_power) {
      best.average_power = s.average_power;
      best.placement = perm;
      best_ladder = std::move(s.coefficients);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  best.coefficients_by_symbol = coefficients_by_rank(best.placement, best_ladder);
  return best;
}

}  // namespace backscatter::oracle
