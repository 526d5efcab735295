#include "backscatter/link_budget.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "backscatter/error.hpp"

namespace backscatter {

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) {
    throw Error(ErrorCode::invalid_config, std::string(field) + " must be " + rule);
  }
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool fraction(double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

}  // namespace

void LinkConfig::validate() const {
  require(positive(transmit_power), "transmit_power", "> 0");
  require(positive(frequency), "frequency", "> 0");
  require(positive(speed_of_light), "speed_of_light", "> 0");
  require(positive(tag_gain), "tag_gain", "> 0");
  require(positive(reader_gain), "reader_gain", "> 0");
  require(positive(reference_distance), "reference_distance", "> 0");
  require(positive(distance), "distance", "> 0");
  require(std::isfinite(path_loss_exponent) && path_loss_exponent >= 1.0,
          "path_loss_exponent", ">= 1");
  require(fraction(harvest_efficiency), "harvest_efficiency", "within [0, 1]");
  require(fraction(backscatter_efficiency), "backscatter_efficiency", "within [0, 1]");
  require(positive(noise_power), "noise_power", "> 0");
  require(positive(reader_resistance), "reader_resistance", "> 0");
}

double propagation_gain(const LinkConfig& cfg) {
  cfg.validate();
  const double near = cfg.wavelength() / (4.0 * std::numbers::pi * cfg.reference_distance);
  return near * near * std::pow(cfg.reference_distance / cfg.distance, cfg.path_loss_exponent);
}

double available_power(const LinkConfig& cfg) {
  return cfg.transmit_power * cfg.tag_gain * cfg.reader_gain * propagation_gain(cfg);
}

double matched_received_power(const LinkConfig& cfg) {
  return cfg.backscatter_efficiency * available_power(cfg) * cfg.tag_gain * cfg.reader_gain *
         propagation_gain(cfg);
}

double induced_voltage(double matched_power, double reader_resistance) {
  if (!(matched_power >= 0.0) || !(reader_resistance > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "induced_voltage needs power >= 0 and resistance > 0");
  }
  return std::sqrt(8.0 * reader_resistance * matched_power);
}

double induced_voltage(const LinkConfig& cfg) {
  return induced_voltage(matched_received_power(cfg), cfg.reader_resistance);
}

double stored_energy(double p_avg, double p_l_min, double period) {
  if (!(period >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "interrogation period must be >= 0");
  }
  if (p_avg < p_l_min) {
    throw Error(ErrorCode::unsustainable,
                "average harvested power is below the tag sensitivity floor");
  }
  return (p_avg - p_l_min) * period;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace backscatter
