#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "backscatter/bask.hpp"
#include "backscatter/feasibility.hpp"
#include "backscatter/link_budget.hpp"
#include "backscatter/symbols.hpp"

namespace backscatter {

/// Candidate placements of the symbols along a descending coefficient
/// ladder. rows[r][k] is the rank (0 = most probable) of the symbol placed
/// at ladder position k, position 0 being the largest coefficient.
struct SequenceMatrix {
  std::size_t order = 0;
  std::vector<std::vector<std::size_t>> rows;

  /// Probabilities of row r in ladder order.
  std::vector<double> row_probabilities(std::size_t r, std::span<const double> probabilities) const;
};

/// Anchor-and-alternate construction: the most probable symbol is anchored at
/// each ladder position, the next ones alternate around it (right-first and
/// left-first), and once one side is exhausted the rest spill onto the other
/// side. End anchors yield one row and interior anchors two, 2(M - 1) total.
SequenceMatrix sequence_matrix(std::size_t order);

/// Same construction, after checking that `probabilities` is non-increasing.
SequenceMatrix sequence_matrix(std::span<const double> probabilities);

/// Optimum of the ladder with a fixed symbol order.
struct PlacedSolution {
  double leading = 0.0;
  std::vector<double> coefficients;  // descending, pitch 2 m_th
  double average_power = 0.0;
  ActiveCase active_case = ActiveCase::interior;
};

/// `row` holds the probabilities in ladder order and must sum to one.
/// Throws Error(infeasible) when the ladder cannot fit inside `bounds`.
PlacedSolution solve_placed(std::span<const double> row, const DesignConstraints& constraints,
                            const CoefficientBounds& bounds, const LinkConfig& cfg);

struct StatePower {
  double harvested = 0.0;
  double backscattered = 0.0;    // E_b P_a G_t |1 - Gamma|^2
  double reader_constraint = 0.0;  // E_b P_a G_r (1 - Gamma)^2
};

struct MaskDesign {
  std::vector<double> coefficients_by_symbol;  // aligned to SymbolSet order
  double average_power = 0.0;
  std::size_t winning_row = 0;  // zero-based row of sequence_matrix()
  std::vector<std::size_t> placement;  // ranks in ladder order of the winner
  ActiveCase active_case = ActiveCase::interior;
  CoefficientBounds bounds;
  std::vector<StatePower> per_state;
};

/// Globally optimal M-ASK design: solves every row of the sequence matrix
/// and keeps the first strictly best one. Throws Error(infeasible) when the
/// order violates the feasibility law for the given constraints.
MaskDesign solve_mask(const SymbolSet& symbols, const DesignConstraints& constraints,
                      const LinkConfig& cfg);

/// Coefficients of a placement re-associated to symbols in rank order.
std::vector<double> coefficients_by_rank(std::span<const std::size_t> placement,
                                         std::span<const double> ladder);

std::vector<StatePower> state_powers(std::span<const double> coefficients, const LinkConfig& cfg);

}  // namespace backscatter
