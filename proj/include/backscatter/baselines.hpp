#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "backscatter/feasibility.hpp"
#include "backscatter/link_budget.hpp"
#include "backscatter/symbols.hpp"

namespace backscatter {

/// Equal-mismatch reference: levels alternate around zero in rank order,
/// (m, -m, 3m, -3m, ...).
std::vector<double> symmetric_benchmark(std::size_t order, double m_th);

/// Matched/mismatched binary reference (0, -2 m_th).
std::array<double, 2> bask_benchmark(double m_th);

/// Probability-weighted harvested power of a real coefficient vector.
double average_power(std::span<const double> coefficients, std::span<const double> probabilities,
                     const LinkConfig& cfg);
double average_power(std::span<const double> coefficients, const SymbolSet& symbols,
                     const LinkConfig& cfg);

/// A benchmark is always scored; constraint violations are reported, not thrown.
struct BenchmarkEvaluation {
  std::vector<double> coefficients;
  double average_power = 0.0;
  ConstraintReport constraints;
};

BenchmarkEvaluation evaluate_benchmark(std::span<const double> coefficients,
                                       std::span<const double> probabilities,
                                       const DesignConstraints& constraints,
                                       const LinkConfig& cfg);

}  // namespace backscatter
