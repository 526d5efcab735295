#include "backscatter/mask.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "backscatter/error.hpp"
#include "backscatter/reflection.hpp"

namespace backscatter {

namespace {

constexpr double kRowSumTolerance = 1e-9;
// Rows closer than this in power are ties; the earlier row wins.
constexpr double kRowTie = 1e-12;

std::vector<std::size_t> alternate_from(std::size_t order, std::size_t anchor, bool right_first) {
  std::vector<std::size_t> row(order);
  row[anchor] = 0;
  std::size_t left = anchor;       // next free slot on the left is left - 1
  std::size_t right = anchor + 1;  // next free slot on the right
  bool go_right = right_first;
  for (std::size_t rank = 1; rank < order; ++rank) {
    const bool right_open = right < order;
    const bool left_open = left > 0;
    if ((go_right && right_open) || !left_open) {
      row[right++] = rank;
    } else {
      row[--left] = rank;
    }
    go_right = !go_right;
  }
  return row;
}

}  // namespace

std::vector<double> SequenceMatrix::row_probabilities(std::size_t r,
                                                      std::span<const double> probabilities) const {
  std::vector<double> out;
  out.reserve(order);
  for (std::size_t rank : rows.at(r)) out.push_back(probabilities[rank]);
  return out;
}

SequenceMatrix sequence_matrix(std::size_t order) {
  if (order < 2) {
    throw Error(ErrorCode::invalid_argument, "sequence matrix needs at least two symbols");
  }
  SequenceMatrix m;
  m.order = order;
  m.rows.reserve(2 * (order - 1));
  for (std::size_t anchor = 0; anchor < order; ++anchor) {
    if (anchor + 1 < order) m.rows.push_back(alternate_from(order, anchor, true));
    if (anchor > 0) m.rows.push_back(alternate_from(order, anchor, false));
  }
  return m;
}

SequenceMatrix sequence_matrix(std::span<const double> probabilities) {
  for (std::size_t i = 1; i < probabilities.size(); ++i) {
    if (probabilities[i] > probabilities[i - 1]) {
      throw Error(ErrorCode::invalid_argument, "probabilities must be non-increasing");
    }
  }
  return sequence_matrix(probabilities.size());
}

PlacedSolution solve_placed(std::span<const double> row, const DesignConstraints& constraints,
                            const CoefficientBounds& bounds, const LinkConfig& cfg) {
  constraints.validate();
  const std::size_t order = row.size();
  if (order < 1) throw Error(ErrorCode::invalid_argument, "empty probability row");
  double sum = 0.0;
  for (double p : row) sum += p;
  if (std::abs(sum - 1.0) > kRowSumTolerance) {
    throw Error(ErrorCode::invalid_argument, "row probabilities must sum to one");
  }
  const double m = constraints.m_th;
  if (!is_feasible(order, bounds, m)) {
    throw Error(ErrorCode::infeasible, "ladder does not fit inside the coefficient bounds");
  }

  double weighted_rank = 0.0;
  for (std::size_t k = 0; k < order; ++k) weighted_rank += row[k] * static_cast<double>(k);
  const double interior = 2.0 * m * weighted_rank;
  const double upper = bounds.upper;
  const double lower = bounds.lower + 2.0 * m * static_cast<double>(order - 1);

  PlacedSolution s;
  s.leading = std::min(interior, upper);
  s.active_case = interior > upper ? ActiveCase::upper_bound : ActiveCase::interior;
  if (lower > s.leading) {
    s.leading = lower;
    s.active_case = ActiveCase::lower_bound;
  }

  const double scale = cfg.harvest_efficiency * available_power(cfg);
  s.coefficients.resize(order);
  double absorbed = 0.0;
  for (std::size_t k = 0; k < order; ++k) {
    const double g = s.leading - 2.0 * m * static_cast<double>(k);
    s.coefficients[k] = g;
    absorbed += row[k] * (1.0 - g * g);
  }
  s.average_power = scale * absorbed;
  return s;
}

std::vector<double> coefficients_by_rank(std::span<const std::size_t> placement,
                                         std::span<const double> ladder) {
  std::vector<double> out(placement.size());
  for (std::size_t k = 0; k < placement.size(); ++k) out.at(placement[k]) = ladder[k];
  return out;
}

std::vector<StatePower> state_powers(std::span<const double> coefficients, const LinkConfig& cfg) {
  std::vector<StatePower> out;
  out.reserve(coefficients.size());
  for (double a : coefficients) {
    const ReflectionCoefficient g{a, 0.0};
    out.push_back({harvested_power(g, cfg), backscattered_power(g, cfg),
                   reader_constraint_power(a, 0.0, cfg)});
  }
  return out;
}

MaskDesign solve_mask(const SymbolSet& symbols, const DesignConstraints& constraints,
                      const LinkConfig& cfg) {
  constraints.validate();
  const std::size_t order = symbols.order();
  const CoefficientBounds bounds = coefficient_bounds(cfg, constraints);
  if (!is_feasible(order, bounds, constraints.m_th)) {
    std::ostringstream msg;
    msg << "infeasible: the formulated problems are feasible if and only if M <= 1 + "
           "(Gamma_ub - Gamma_lb) / (2 m_th); here M = "
        << order << " but 1 + (" << bounds.upper << " - " << bounds.lower << ") / (2 * "
        << constraints.m_th << ") = " << 1.0 + bounds.width() / (2.0 * constraints.m_th);
    throw Error(ErrorCode::infeasible, msg.str());
  }

  const auto& probs = symbols.probabilities();
  const SequenceMatrix matrix = sequence_matrix(probs);

  MaskDesign best;
  best.bounds = bounds;
  double best_power = -std::numeric_limits<double>::infinity();
  PlacedSolution best_solution;
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    const std::vector<double> row = matrix.row_probabilities(r, probs);
    PlacedSolution s = solve_placed(row, constraints, bounds, cfg);
    if (std::isinf(best_power) || s.average_power > best_power + kRowTie * std::abs(best_power)) {
      best_power = s.average_power;
      best.winning_row = r;
      best_solution = std::move(s);
    }
  }
  best.placement = matrix.rows[best.winning_row];
  best.average_power = best_solution.average_power;
  best.active_case = best_solution.active_case;
  best.coefficients_by_symbol = coefficients_by_rank(best.placement, best_solution.coefficients);
  best.per_state = state_powers(best.coefficients_by_symbol, cfg);
  return best;
}

}  // namespace backscatter
