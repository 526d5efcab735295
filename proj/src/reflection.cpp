#include "backscatter/reflection.hpp"

#include <algorithm>
#include <cmath>

#include "backscatter/error.hpp"

namespace backscatter {

double ReflectionCoefficient::magnitude() const { return std::hypot(real, imag); }

void ReflectionCoefficient::validate() const {
  if (!std::isfinite(real) || !std::isfinite(imag) ||
      magnitude_squared() > 1.0 + kMagnitudeTolerance) {
    throw Error(ErrorCode::invariant_violation, "reflection coefficient outside the unit disk");
  }
}

ReflectionCoefficient from_impedance(const ComplexImpedance& load,
                                     const ComplexImpedance& antenna) {
  const double r_sum = load.resistance + antenna.resistance;
  const double x_sum = load.reactance + antenna.reactance;
  const double denom = r_sum * r_sum + x_sum * x_sum;
  if (!(denom > 0.0)) {
    throw Error(ErrorCode::degenerate_circuit, "load + antenna impedance is zero");
  }
  return {
      (load.resistance * load.resistance - antenna.resistance * antenna.resistance +
       x_sum * x_sum) / denom,
      2.0 * antenna.resistance * x_sum / denom,
  };
}

ComplexImpedance to_impedance(const ReflectionCoefficient& gamma,
                              const ComplexImpedance& antenna) {
  if (gamma.real == 1.0 && gamma.imag == 0.0) {
    throw Error(ErrorCode::open_circuit, "gamma = 1 is an open circuit");
  }
  const std::complex<double> za = antenna.value();
  const std::complex<double> g = gamma.value();
  const std::complex<double> zl = (std::conj(za) + g * za) / (1.0 - g);
  return {zl.real(), zl.imag()};
}

double harvested_power(const ReflectionCoefficient& gamma, const LinkConfig& cfg) {
  gamma.validate();
  const double absorbed = std::max(0.0, 1.0 - gamma.magnitude_squared());
  return cfg.harvest_efficiency * available_power(cfg) * absorbed;
}

double backscattered_power(const ReflectionCoefficient& gamma, const LinkConfig& cfg) {
  gamma.validate();
  const double dr = 1.0 - gamma.real;
  return cfg.backscatter_efficiency * available_power(cfg) * cfg.tag_gain *
         (dr * dr + gamma.imag * gamma.imag);
}

double received_power(const ReflectionCoefficient& gamma, const LinkConfig& cfg) {
  return backscattered_power(gamma, cfg) * cfg.reader_gain * propagation_gain(cfg);
}

double modulation_index(const ReflectionCoefficient& g1, const ReflectionCoefficient& g2) {
  return std::hypot(g1.real - g2.real, g1.imag - g2.imag) / 2.0;
}

}  // namespace backscatter
