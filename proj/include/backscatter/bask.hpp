#pragma once

#include "backscatter/feasibility.hpp"
#include "backscatter/link_budget.hpp"

namespace backscatter {

/// Which KKT branch produced the leading coefficient.
enum class ActiveCase { interior, upper_bound, lower_bound };

const char* to_string(ActiveCase c) noexcept;

/// Optimal binary-ASK load pair. gamma_high belongs to the more probable
/// symbol. When the caller passed p_one_symbol < 0.5 the roles were swapped
/// and `swapped` is set, so symbol 1 uses gamma_low.
struct BaskDesign {
  double gamma_high = 0.0;
  double gamma_low = 0.0;
  double average_power = 0.0;
  ActiveCase active_case = ActiveCase::interior;
  bool swapped = false;

  /// Coefficient of symbol 1 (index 0) or symbol 2 (index 1) as passed in.
  double coefficient_for_symbol(int index) const;
};

/// Closed-form optimum of the two-level design with the reader constraint
/// relaxed (p_b_min is ignored). Throws Error(infeasible) when 2 m_th does
/// not fit between the tag-sensitivity bounds and Error(tag_starved) when
/// no load can sustain the tag.
BaskDesign solve_bask(double p_one_symbol, const DesignConstraints& constraints,
                      const LinkConfig& cfg);

}  // namespace backscatter
