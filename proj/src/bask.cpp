#include "backscatter/bask.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "backscatter/error.hpp"

namespace backscatter {

const char* to_string(ActiveCase c) noexcept {
  switch (c) {
    case ActiveCase::interior: return "interior";
    case ActiveCase::upper_bound: return "upper_bound";
    case ActiveCase::lower_bound: return "lower_bound";
  }
  return "unknown";
}

double BaskDesign::coefficient_for_symbol(int index) const {
  const bool first = (index == 0) != swapped;
  return first ? gamma_high : gamma_low;
}

BaskDesign solve_bask(double p_one_symbol, const DesignConstraints& constraints,
                      const LinkConfig& cfg) {
  if (!(p_one_symbol >= 0.0 && p_one_symbol <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "symbol probability must lie in [0, 1]");
  }
  constraints.validate();

  DesignConstraints relaxed = constraints;
  relaxed.p_b_min.reset();
  const CoefficientBounds bounds = coefficient_bounds(cfg, relaxed);
  const double m = constraints.m_th;
  if (!is_feasible(2, bounds, m)) {
    std::ostringstream msg;
    msg << "BASK infeasible: 2 m_th = " << 2.0 * m << " exceeds the admissible width "
        << bounds.width();
    throw Error(ErrorCode::infeasible, msg.str());
  }

  BaskDesign d;
  d.swapped = p_one_symbol < 0.5;
  const double p1 = d.swapped ? 1.0 - p_one_symbol : p_one_symbol;

  const double interior = 2.0 * (1.0 - p1) * m;
  const double upper = bounds.upper;
  const double lower = bounds.lower + 2.0 * m;

  double high = std::min(interior, upper);
  d.active_case = interior > upper ? ActiveCase::upper_bound : ActiveCase::interior;
  if (lower > high) {
    high = lower;
    d.active_case = ActiveCase::lower_bound;
  }
  d.gamma_high = high;
  d.gamma_low = high - 2.0 * m;

  const double scale = cfg.harvest_efficiency * available_power(cfg);
  d.average_power = scale * (p1 * (1.0 - d.gamma_high * d.gamma_high) +
                             (1.0 - p1) * (1.0 - d.gamma_low * d.gamma_low));
  return d;
}

}  // namespace backscatter
