#pragma once

// Brute-force verifiers for the closed-form solvers. None of these are used
// on the production solve path.

#include <cstddef>
#include <optional>
#include <vector>

#include "backscatter/feasibility.hpp"
#include "backscatter/link_budget.hpp"
#include "backscatter/reflection.hpp"
#include "backscatter/symbols.hpp"

namespace backscatter::oracle {

struct GridBaskResult {
  double gamma_high = 0.0;
  double gamma_low = 0.0;
  double average_power = 0.0;
  double final_step = 0.0;
};

/// Exhaustive scan of (a1, a2) in [-1, 1]^2 at `step`, keeping cells with
/// a1 - a2 >= 2 m_th and both harvested powers >= p_l_min, followed by
/// `refinement_passes` local passes, each at 1/100 of the previous pitch over
/// +-one previous pitch around the incumbent. p_b_min is ignored.
/// Returns nullopt when no cell is feasible.
std::optional<GridBaskResult> grid_search_bask(double p1, const DesignConstraints& constraints,
                                               const LinkConfig& cfg, double step,
                                               int refinement_passes = 3);

struct ComplexGridResult {
  ReflectionCoefficient first;
  ReflectionCoefficient second;
  double average_power = 0.0;
  /// Power of the reported cell, within the lattice resolution of average_power.
  double reported_power = 0.0;
  /// Best power among cells with both imaginary parts equal to zero.
  double real_axis_power = 0.0;
};

/// Scan of (a1, b1, a2, b2) over the unit disk at a coarse pitch (>= 0.02)
/// under |Gamma_i| <= 1, |Gamma_1 - Gamma_2| / 2 >= m_th and the harvesting
/// floor. The objective only sees |Gamma_i|, so any common rotation of an
/// optimum is also optimal; among cells within 1e-12 relative of the best
/// power the one with the smallest |b1| + |b2| is reported.
std::optional<ComplexGridResult> grid_search_complex_bask(double p1,
                                                          const DesignConstraints& constraints,
                                                          const LinkConfig& cfg, double step);

/// Reader-side power of the two loads that harvest exactly p_l: the real
/// negative coefficient -sqrt(1 - x) and the imaginary one j sqrt(1 - x),
/// x = p_l / (E_h P_a), in closed form.
struct EqualHarvestBackscatter {
  double real_axis = 0.0;       // E_b P_a G_r (2 - x + 2 sqrt(1 - x))
  double imaginary_axis = 0.0;  // E_b P_a G_r (2 - x)
};

EqualHarvestBackscatter equal_harvest_backscatter(double p_l, const LinkConfig& cfg);

struct PermutationResult {
  std::vector<std::size_t> placement;  // ranks in ladder order
  std::vector<double> coefficients_by_symbol;
  double average_power = 0.0;
  std::size_t evaluated = 0;
};

inline constexpr std::size_t kMaxPermutationOrder = 8;

/// Solves the fixed-order ladder for all M! placements and keeps the first
/// strictly best. Throws Error(invalid_argument) for M > 8; returns nullopt
/// when the instance is infeasible.
std::optional<PermutationResult> permutation_search(const SymbolSet& symbols,
                                                    const DesignConstraints& constraints,
                                                    const LinkConfig& cfg);

}  // namespace backscatter::oracle
