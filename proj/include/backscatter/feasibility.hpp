#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "backscatter/link_budget.hpp"

namespace backscatter {

/// Operational requirements of the tag. An absent p_b_min relaxes the
/// reader-sensitivity constraint.
struct DesignConstraints {
  double m_th = 0.15;
  double p_l_min = 5e-6;
  std::optional<double> p_b_min = 3e-6;

  void validate() const;
};

/// Admissible interval for every real reflection coefficient.
struct CoefficientBounds {
  double lower = -1.0;
  double upper = 1.0;

  double width() const { return upper - lower; }
};

/// Bounds implied by the tag-sensitivity floor and, when present, the
/// reader-sensitivity floor. Throws Error(tag_starved) when the tag cannot
/// harvest p_l_min even at perfect match and Error(infeasible) when the two
/// floors leave an empty interval.
CoefficientBounds coefficient_bounds(const LinkConfig& cfg, const DesignConstraints& constraints);

/// Relative slack on the feasibility inequality so that a threshold computed
/// by max_modulation_threshold() is admitted despite rounding.
inline constexpr double kFeasibilityRelativeSlack = 1e-12;

/// True iff an equally spaced ladder of `order` levels at pitch 2 m_th fits
/// inside the bounds, i.e. order <= 1 + width / (2 m_th). Equality counts.
bool is_feasible(std::size_t order, const CoefficientBounds& bounds, double m_th);

/// Largest m_th for which is_feasible(order, bounds, m_th) holds.
double max_modulation_threshold(std::size_t order, const CoefficientBounds& bounds);

/// Backscatter power in the form used by the reader-sensitivity constraint,
/// E_b P_a G_r [(1 - a)^2 + b^2].
double reader_constraint_power(double real, double imag, const LinkConfig& cfg);

/// Constraint audit of a real coefficient vector.
struct ConstraintReport {
  double min_half_separation = 0.0;   // min |a_i - a_k| / 2
  double min_harvested = 0.0;         // min E_h P_a (1 - a_i^2)
  double min_reader_power = 0.0;      // min reader_constraint_power
  bool separation_ok = false;
  bool harvest_ok = false;
  bool reader_ok = false;  // true when p_b_min is absent
  bool domain_ok = false;  // every |a_i| <= 1

  bool all_ok() const { return separation_ok && harvest_ok && reader_ok && domain_ok; }
};

/// Slack used by check_constraints: separation compared to 2 m_th - 1e-12,
/// power floors compared with 1e-15 W slack.
inline constexpr double kSeparationSlack = 1e-12;
inline constexpr double kPowerSlack = 1e-15;

ConstraintReport check_constraints(std::span<const double> coefficients,
                                   const DesignConstraints& constraints,
                                   const LinkConfig& cfg);

}  // namespace backscatter
