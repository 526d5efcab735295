#include "backscatter/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "backscatter/error.hpp"
#include "backscatter/reflection.hpp"

namespace backscatter {

void DesignConstraints::validate() const {
  if (!(std::isfinite(m_th) && m_th > 0.0 && m_th <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "m_th must lie in (0, 1]");
  }
  if (!(std::isfinite(p_l_min) && p_l_min >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "p_l_min must be >= 0");
  }
  if (p_b_min && !(std::isfinite(*p_b_min) && *p_b_min >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "p_b_min must be >= 0");
  }
}

namespace {

// p / scale, with 0 / 0 read as 0 (a zero floor is met by any load).
double floor_ratio(double p, double scale) {
  if (p == 0.0) return 0.0;
  if (scale <= 0.0) return std::numeric_limits<double>::infinity();
  return p / scale;
}

}  // namespace

CoefficientBounds coefficient_bounds(const LinkConfig& cfg, const DesignConstraints& constraints) {
  const double pa = available_power(cfg);
  const double harvest_ratio = floor_ratio(constraints.p_l_min, cfg.harvest_efficiency * pa);
  if (harvest_ratio > 1.0) {
    std::ostringstream msg;
    msg << "tag starved: p_l_min = " << constraints.p_l_min
        << " W exceeds the harvestable maximum E_h P_a = " << cfg.harvest_efficiency * pa << " W";
    throw Error(ErrorCode::tag_starved, msg.str());
  }
  const double radius = std::sqrt(1.0 - harvest_ratio);
  CoefficientBounds b{-radius, radius};
  if (constraints.p_b_min) {
    // Only the a <= 1 - sqrt(.) branch is compatible with |Gamma| <= 1.
    const double reader_ratio =
        floor_ratio(*constraints.p_b_min, cfg.backscatter_efficiency * pa * cfg.reader_gain);
    b.upper = std::min(radius, 1.0 - std::sqrt(reader_ratio));
  }
  if (b.upper < b.lower) {
    std::ostringstream msg;
    msg << "infeasible bounds: upper " << b.upper << " < lower " << b.lower;
    throw Error(ErrorCode::infeasible, msg.str());
  }
  return b;
}

bool is_feasible(std::size_t order, const CoefficientBounds& bounds, double m_th) {
  if (order < 1 || !(m_th >= 0.0) || bounds.upper < bounds.lower) return false;
  const double span_needed = 2.0 * m_th * static_cast<double>(order - 1);
  return span_needed <= bounds.width() * (1.0 + kFeasibilityRelativeSlack);
}

double max_modulation_threshold(std::size_t order, const CoefficientBounds& bounds) {
  if (order < 2) {
    throw Error(ErrorCode::invalid_argument, "max_modulation_threshold needs order >= 2");
  }
  return bounds.width() / (2.0 * static_cast<double>(order - 1));
}

double reader_constraint_power(double real, double imag, const LinkConfig& cfg) {
  const double dr = 1.0 - real;
  return cfg.backscatter_efficiency * available_power(cfg) * cfg.reader_gain *
         (dr * dr + imag * imag);
}

ConstraintReport check_constraints(std::span<const double> coefficients,
                                   const DesignConstraints& constraints, const LinkConfig& cfg) {
  ConstraintReport r;
  const double scale = cfg.harvest_efficiency * available_power(cfg);
  r.min_half_separation = std::numeric_limits<double>::infinity();
  r.min_harvested = std::numeric_limits<double>::infinity();
  r.min_reader_power = std::numeric_limits<double>::infinity();
  r.domain_ok = true;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    const double a = coefficients[i];
    r.domain_ok = r.domain_ok && std::abs(a) <= 1.0 + ReflectionCoefficient::kMagnitudeTolerance;
    r.min_harvested = std::min(r.min_harvested, scale * (1.0 - a * a));
    r.min_reader_power = std::min(r.min_reader_power, reader_constraint_power(a, 0.0, cfg));
    for (std::size_t k = i + 1; k < coefficients.size(); ++k) {
      r.min_half_separation = std::min(r.min_half_separation, std::abs(a - coefficients[k]) / 2.0);
    }
  }
  r.separation_ok = 2.0 * r.min_half_separation >= 2.0 * constraints.m_th - kSeparationSlack;
  r.harvest_ok = r.min_harvested >= constraints.p_l_min - kPowerSlack;
  r.reader_ok = !constraints.p_b_min || r.min_reader_power >= *constraints.p_b_min - kPowerSlack;
  return r;
}

}  // namespace backscatter
