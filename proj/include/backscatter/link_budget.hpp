#pragma once

namespace backscatter {

/// Radio and link constants of a monostatic reader/tag pair. All quantities
/// are SI base units (watts, hertz, metres, ohms). Defaults reproduce the
/// reference scenario: 1 W at 915 MHz, tag 7 m away in a shadowed urban
/// channel (n = 3), 0.8 harvesting and backscattering efficiency, -90 dBm
/// noise and a 50 ohm reader antenna.
struct LinkConfig {
  double transmit_power = 1.0;
  double frequency = 915e6;
  double speed_of_light = 3e8;
  double tag_gain = 4.0;
  double reader_gain = 1.5;
  double reference_distance = 1.0;
  double distance = 7.0;
  double path_loss_exponent = 3.0;
  double harvest_efficiency = 0.8;
  double backscatter_efficiency = 0.8;
  double noise_power = 1e-12;
  double reader_resistance = 50.0;

  double wavelength() const { return speed_of_light / frequency; }

  /// Throws Error(invalid_config) naming the first offending field.
  void validate() const;
};

/// One-way propagation factor (lambda / (4 pi d_o))^2 (d_o / d)^n of the
/// close-in reference distance model. Reduces to Friis for n = 2.
double propagation_gain(const LinkConfig& cfg);

/// Maximum power available at the tag, P_t G_t G_r times the propagation gain.
double available_power(const LinkConfig& cfg);

/// Power received at the reader when the tag scatters at perfect match.
double matched_received_power(const LinkConfig& cfg);

/// Open-circuit voltage at the reader antenna for the matched-scatter state.
double induced_voltage(const LinkConfig& cfg);
double induced_voltage(double matched_power, double reader_resistance);

/// Energy banked over one interrogation period when the tag harvests p_avg
/// on average but only needs p_l_min. Throws Error(unsustainable) when
/// p_avg < p_l_min.
double stored_energy(double p_avg, double p_l_min, double period);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace backscatter
