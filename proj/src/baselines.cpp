#include "backscatter/baselines.hpp"

#include "backscatter/error.hpp"

namespace backscatter {

std::vector<double> symmetric_benchmark(std::size_t order, double m_th) {
  if (order < 2) throw Error(ErrorCode::invalid_argument, "benchmark needs order >= 2");
  std::vector<double> out;
  out.reserve(order);
  for (std::size_t i = 1; i <= order; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;  // (-1)^i
    const double level = static_cast<double>(i) + 0.5 * (sign - 1.0);
    out.push_back(m_th * (1.0 - sign * level));
  }
  return out;
}

std::array<double, 2> bask_benchmark(double m_th) { return {0.0, -2.0 * m_th}; }

double average_power(std::span<const double> coefficients, std::span<const double> probabilities,
                     const LinkConfig& cfg) {
  if (coefficients.size() != probabilities.size()) {
    throw Error(ErrorCode::invalid_argument, "coefficient and probability counts differ");
  }
  const double scale = cfg.harvest_efficiency * available_power(cfg);
  double sum = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    sum += probabilities[i] * (1.0 - coefficients[i] * coefficients[i]);
  }
  return scale * sum;
}

double average_power(std::span<const double> coefficients, const SymbolSet& symbols,
                     const LinkConfig& cfg) {
  return average_power(coefficients, symbols.probabilities(), cfg);
}

BenchmarkEvaluation evaluate_benchmark(std::span<const double> coefficients,
                                       std::span<const double> probabilities,
                                       const DesignConstraints& constraints,
                                       const LinkConfig& cfg) {
  BenchmarkEvaluation e;
  e.coefficients.assign(coefficients.begin(), coefficients.end());
  e.average_power = average_power(coefficients, probabilities, cfg);
  e.constraints = check_constraints(coefficients, constraints, cfg);
  return e;
}

}  // namespace backscatter
