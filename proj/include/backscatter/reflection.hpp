#pragma once

#include <complex>

#include "backscatter/link_budget.hpp"

namespace backscatter {

struct ComplexImpedance {
  double resistance = 0.0;
  double reactance = 0.0;

  std::complex<double> value() const { return {resistance, reactance}; }
};

/// Reflection coefficient Gamma = a + jb of one load state. A passive load
/// keeps |Gamma| <= 1.
struct ReflectionCoefficient {
  double real = 0.0;
  double imag = 0.0;

  double magnitude_squared() const { return real * real + imag * imag; }
  double magnitude() const;
  std::complex<double> value() const { return {real, imag}; }

  /// Rounding slack allowed on the unit-disk invariant.
  static constexpr double kMagnitudeTolerance = 1e-12;

  /// Throws Error(invariant_violation) when |Gamma|^2 > 1 + tolerance.
  void validate() const;
};

/// Power-wave reflection coefficient (Z_L - conj(Z_A)) / (Z_L + Z_A).
ReflectionCoefficient from_impedance(const ComplexImpedance& load,
                                     const ComplexImpedance& antenna);

/// Load that realises gamma against the given antenna. Gamma == 1 is an open
/// circuit and has no finite load.
ComplexImpedance to_impedance(const ReflectionCoefficient& gamma,
                              const ComplexImpedance& antenna);

/// Power delivered to the tag circuitry, E_h P_a (1 - |Gamma|^2).
double harvested_power(const ReflectionCoefficient& gamma, const LinkConfig& cfg);

/// Power re-radiated by the tag, E_b P_a G_t |1 - Gamma|^2.
double backscattered_power(const ReflectionCoefficient& gamma, const LinkConfig& cfg);

/// Backscattered power after the return trip to the reader.
double received_power(const ReflectionCoefficient& gamma, const LinkConfig& cfg);

/// Half the distance between two coefficients in the complex plane.
double modulation_index(const ReflectionCoefficient& g1, const ReflectionCoefficient& g2);

}  // namespace backscatter
