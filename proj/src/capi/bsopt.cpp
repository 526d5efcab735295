#include "bsopt/bsopt.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "backscatter/baselines.hpp"
#include "backscatter/bask.hpp"
#include "backscatter/error.hpp"
#include "backscatter/feasibility.hpp"
#include "backscatter/link_budget.hpp"
#include "backscatter/mask.hpp"
#include "backscatter/oracle.hpp"
#include "backscatter/reflection.hpp"
#include "backscatter/ser.hpp"
#include "backscatter/symbols.hpp"

namespace bs = backscatter;

struct bsopt_link {
  bs::LinkConfig cfg;
};

struct bsopt_symbols {
  bs::SymbolSet set;
};

struct bsopt_mask_design {
  bs::MaskDesign design;
};

namespace {

thread_local std::string g_last_error;

bsopt_status status_of(bs::ErrorCode c) {
  switch (c) {
    case bs::ErrorCode::invalid_argument: return BSOPT_E_INVALID_ARGUMENT;
    case bs::ErrorCode::invalid_config: return BSOPT_E_INVALID_CONFIG;
    case bs::ErrorCode::tag_starved: return BSOPT_E_TAG_STARVED;
    case bs::ErrorCode::infeasible: return BSOPT_E_INFEASIBLE;
    case bs::ErrorCode::unsustainable: return BSOPT_E_UNSUSTAINABLE;
    case bs::ErrorCode::degenerate_circuit: return BSOPT_E_DEGENERATE_CIRCUIT;
    case bs::ErrorCode::open_circuit: return BSOPT_E_OPEN_CIRCUIT;
    case bs::ErrorCode::invariant_violation: return BSOPT_E_INVARIANT_VIOLATION;
  }
  return BSOPT_E_INTERNAL;
}

bsopt_status fail(bsopt_status s, const char* msg) {
  g_last_error = msg;
  return s;
}

template <class F>
bsopt_status guard(F&& body) {
  try {
    body();
    return BSOPT_OK;
  } catch (const bs::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BSOPT_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BSOPT_E_INTERNAL, e.what());
  } catch (...) {
    return fail(BSOPT_E_INTERNAL, "unknown failure");
  }
}

#define BSOPT_REQUIRE(p)                                              \
  do {                                                                \
    if (!(p)) return fail(BSOPT_E_NULL_POINTER, "null argument: " #p); \
  } while (0)

bs::DesignConstraints to_core(const bsopt_constraints& c) {
  bs::DesignConstraints d;
  d.m_th = c.m_th;
  d.p_l_min = c.p_l_min;
  if (c.has_p_b_min) {
    d.p_b_min = c.p_b_min;
  } else {
    d.p_b_min.reset();
  }
  return d;
}

bsopt_active_case to_c(bs::ActiveCase c) {
  switch (c) {
    case bs::ActiveCase::interior: return BSOPT_CASE_INTERIOR;
    case bs::ActiveCase::upper_bound: return BSOPT_CASE_UPPER_BOUND;
    case bs::ActiveCase::lower_bound: return BSOPT_CASE_LOWER_BOUND;
  }
  return BSOPT_CASE_INTERIOR;
}

bsopt_status copy_out(const std::vector<double>& v, double* out, size_t capacity) {
  if (capacity < v.size()) return fail(BSOPT_E_BUFFER_TOO_SMALL, "output buffer too small");
  std::copy(v.begin(), v.end(), out);
  return BSOPT_OK;
}

bs::LinkConfig from_params(const bsopt_link_params& p) {
  bs::LinkConfig c;
  c.transmit_power = p.transmit_power;
  c.frequency = p.frequency;
  c.speed_of_light = p.speed_of_light;
  c.tag_gain = p.tag_gain;
  c.reader_gain = p.reader_gain;
  c.reference_distance = p.reference_distance;
  c.distance = p.distance;
  c.path_loss_exponent = p.path_loss_exponent;
  c.harvest_efficiency = p.harvest_efficiency;
  c.backscatter_efficiency = p.backscatter_efficiency;
  c.noise_power = p.noise_power;
  c.reader_resistance = p.reader_resistance;
  return c;
}

void to_params(const bs::LinkConfig& c, bsopt_link_params* p) {
  p->transmit_power = c.transmit_power;
  p->frequency = c.frequency;
  p->speed_of_light = c.speed_of_light;
  p->tag_gain = c.tag_gain;
  p->reader_gain = c.reader_gain;
  p->reference_distance = c.reference_distance;
  p->distance = c.distance;
  p->path_loss_exponent = c.path_loss_exponent;
  p->harvest_efficiency = c.harvest_efficiency;
  p->backscatter_efficiency = c.backscatter_efficiency;
  p->noise_power = c.noise_power;
  p->reader_resistance = c.reader_resistance;
}

}  // namespace

extern "C" {

const char* bsopt_version(void) { return "0.1.0"; }

const char* bsopt_last_error(void) { return g_last_error.c_str(); }

const char* bsopt_status_string(bsopt_status status) {
  switch (status) {
    case BSOPT_OK: return "ok";
    case BSOPT_E_INVALID_ARGUMENT: return "invalid_argument";
    case BSOPT_E_INVALID_CONFIG: return "invalid_config";
    case BSOPT_E_TAG_STARVED: return "tag_starved";
    case BSOPT_E_INFEASIBLE: return "infeasible";
    case BSOPT_E_UNSUSTAINABLE: return "unsustainable";
    case BSOPT_E_DEGENERATE_CIRCUIT: return "degenerate_circuit";
    case BSOPT_E_OPEN_CIRCUIT: return "open_circuit";
    case BSOPT_E_INVARIANT_VIOLATION: return "invariant_violation";
    case BSOPT_E_NULL_POINTER: return "null_pointer";
    case BSOPT_E_BUFFER_TOO_SMALL: return "buffer_too_small";
    case BSOPT_E_INTERNAL: return "internal";
  }
  return "unknown";
}

// ---- link budget ----

void bsopt_link_params_default(bsopt_link_params* out) {
  if (out) to_params(bs::LinkConfig{}, out);
}

bsopt_status bsopt_link_create(const bsopt_link_params* params, bsopt_link** out) {
  BSOPT_REQUIRE(params);
  BSOPT_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    bs::LinkConfig cfg = from_params(*params);
    cfg.validate();
    *out = new bsopt_link{cfg};
  });
}

void bsopt_link_destroy(bsopt_link* link) { delete link; }

bsopt_status bsopt_link_get_params(const bsopt_link* link, bsopt_link_params* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  to_params(link->cfg, out);
  return BSOPT_OK;
}

bsopt_status bsopt_propagation_gain(const bsopt_link* link, double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::propagation_gain(link->cfg); });
}

bsopt_status bsopt_available_power(const bsopt_link* link, double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::available_power(link->cfg); });
}

bsopt_status bsopt_matched_received_power(const bsopt_link* link, double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::matched_received_power(link->cfg); });
}

bsopt_status bsopt_induced_voltage(const bsopt_link* link, double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::induced_voltage(link->cfg); });
}

bsopt_status bsopt_noise_sigma(const bsopt_link* link, double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::noise_sigma(link->cfg); });
}

bsopt_status bsopt_stored_energy(double p_avg, double p_l_min, double period, double* out) {
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::stored_energy(p_avg, p_l_min, period); });
}

double bsopt_dbm_to_watts(double dbm) { return bs::dbm_to_watts(dbm); }

double bsopt_watts_to_dbm(double watts) { return bs::watts_to_dbm(watts); }

// ---- reflection ----

bsopt_status bsopt_from_impedance(double load_r, double load_x, double antenna_r,
                                  double antenna_x, double* gamma_re, double* gamma_im) {
  BSOPT_REQUIRE(gamma_re);
  BSOPT_REQUIRE(gamma_im);
  return guard([&] {
    const auto g = bs::from_impedance({load_r, load_x}, {antenna_r, antenna_x});
    *gamma_re = g.real;
    *gamma_im = g.imag;
  });
}

bsopt_status bsopt_to_impedance(double gamma_re, double gamma_im, double antenna_r,
                                double antenna_x, double* load_r, double* load_x) {
  BSOPT_REQUIRE(load_r);
  BSOPT_REQUIRE(load_x);
  return guard([&] {
    const auto z = bs::to_impedance({gamma_re, gamma_im}, {antenna_r, antenna_x});
    *load_r = z.resistance;
    *load_x = z.reactance;
  });
}

bsopt_status bsopt_harvested_power(const bsopt_link* link, double gamma_re, double gamma_im,
                                   double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::harvested_power({gamma_re, gamma_im}, link->cfg); });
}

bsopt_status bsopt_backscattered_power(const bsopt_link* link, double gamma_re, double gamma_im,
                                       double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::backscattered_power({gamma_re, gamma_im}, link->cfg); });
}

bsopt_status bsopt_received_power(const bsopt_link* link, double gamma_re, double gamma_im,
                                  double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::received_power({gamma_re, gamma_im}, link->cfg); });
}

double bsopt_modulation_index(double re1, double im1, double re2, double im2) {
  return bs::modulation_index({re1, im1}, {re2, im2});
}

// ---- symbols ----

bsopt_status bsopt_symbols_from_bit_probability(double p_one, size_t order, bsopt_symbols** out) {
  BSOPT_REQUIRE(out);
  *out = nullptr;
  return guard([&] { *out = new bsopt_symbols{bs::SymbolSet::from_bit_probability(p_one, order)}; });
}

bsopt_status bsopt_symbols_from_probabilities(const double* probabilities, size_t count,
                                              bsopt_symbols** out) {
  BSOPT_REQUIRE(probabilities);
  BSOPT_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    *out = new bsopt_symbols{
        bs::SymbolSet::from_probabilities(std::span<const double>(probabilities, count))};
  });
}

void bsopt_symbols_destroy(bsopt_symbols* symbols) { delete symbols; }

size_t bsopt_symbols_order(const bsopt_symbols* symbols) {
  return symbols ? symbols->set.order() : 0;
}

bsopt_status bsopt_symbols_probabilities(const bsopt_symbols* symbols, double* out,
                                         size_t capacity) {
  BSOPT_REQUIRE(symbols);
  BSOPT_REQUIRE(out);
  return copy_out(symbols->set.probabilities(), out, capacity);
}

bsopt_status bsopt_symbols_pattern(const bsopt_symbols* symbols, size_t index, char* out,
                                   size_t capacity) {
  BSOPT_REQUIRE(symbols);
  BSOPT_REQUIRE(out);
  if (index >= symbols->set.order()) {
    return fail(BSOPT_E_INVALID_ARGUMENT, "symbol index out of range");
  }
  const std::string& p = symbols->set.patterns()[index];
  if (capacity < p.size() + 1) return fail(BSOPT_E_BUFFER_TOO_SMALL, "output buffer too small");
  std::memcpy(out, p.c_str(), p.size() + 1);
  return BSOPT_OK;
}

// ---- feasibility ----

void bsopt_constraints_default(bsopt_constraints* out) {
  if (!out) return;
  const bs::DesignConstraints d;
  out->m_th = d.m_th;
  out->p_l_min = d.p_l_min;
  out->p_b_min = d.p_b_min.value_or(0.0);
  out->has_p_b_min = d.p_b_min.has_value() ? 1 : 0;
}

bsopt_status bsopt_coefficient_bounds(const bsopt_link* link, const bsopt_constraints* constraints,
                                      double* lower, double* upper) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(constraints);
  BSOPT_REQUIRE(lower);
  BSOPT_REQUIRE(upper);
  return guard([&] {
    const auto b = bs::coefficient_bounds(link->cfg, to_core(*constraints));
    *lower = b.lower;
    *upper = b.upper;
  });
}

bsopt_status bsopt_is_feasible(size_t order, double lower, double upper, double m_th, int* out) {
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::is_feasible(order, {lower, upper}, m_th) ? 1 : 0; });
}

bsopt_status bsopt_max_modulation_threshold(size_t order, double lower, double upper,
                                            double* out) {
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::max_modulation_threshold(order, {lower, upper}); });
}

bsopt_status bsopt_reader_constraint_power(const bsopt_link* link, double gamma_re,
                                           double gamma_im, double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::reader_constraint_power(gamma_re, gamma_im, link->cfg); });
}

bsopt_status bsopt_check_constraints(const bsopt_link* link, const bsopt_constraints* constraints,
                                     const double* coefficients, size_t count,
                                     bsopt_constraint_report* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(constraints);
  BSOPT_REQUIRE(coefficients);
  BSOPT_REQUIRE(out);
  return guard([&] {
    const auto r = bs::check_constraints(std::span<const double>(coefficients, count),
                                         to_core(*constraints), link->cfg);
    out->min_half_separation = r.min_half_separation;
    out->min_harvested = r.min_harvested;
    out->min_reader_power = r.min_reader_power;
    out->separation_ok = r.separation_ok;
    out->harvest_ok = r.harvest_ok;
    out->reader_ok = r.reader_ok;
    out->domain_ok = r.domain_ok;
  });
}

// ---- optimizers ----

bsopt_status bsopt_solve_bask(const bsopt_link* link, const bsopt_constraints* constraints,
                              double p_one, bsopt_bask_result* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(constraints);
  BSOPT_REQUIRE(out);
  return guard([&] {
    const auto d = bs::solve_bask(p_one, to_core(*constraints), link->cfg);
    out->gamma_high = d.gamma_high;
    out->gamma_low = d.gamma_low;
    out->average_power = d.average_power;
    out->active_case = to_c(d.active_case);
    out->swapped = d.swapped ? 1 : 0;
  });
}

bsopt_status bsopt_sequence_matrix(size_t order, size_t* out, size_t capacity, size_t* rows) {
  BSOPT_REQUIRE(rows);
  bs::SequenceMatrix m;
  const bsopt_status s = guard([&] { m = bs::sequence_matrix(order); });
  if (s != BSOPT_OK) return s;
  *rows = m.rows.size();
  if (!out) return BSOPT_OK;
  if (capacity < m.rows.size() * order) {
    return fail(BSOPT_E_BUFFER_TOO_SMALL, "output buffer too small");
  }
  for (const auto& r : m.rows) out = std::copy(r.begin(), r.end(), out);
  return BSOPT_OK;
}

bsopt_status bsopt_solve_placed(const bsopt_link* link, const bsopt_constraints* constraints,
                                double lower, double upper, const double* row, size_t count,
                                double* coefficients, double* average_power,
                                bsopt_active_case* active_case) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(constraints);
  BSOPT_REQUIRE(row);
  return guard([&] {
    const auto s = bs::solve_placed(std::span<const double>(row, count), to_core(*constraints),
                                    {lower, upper}, link->cfg);
    if (coefficients) std::copy(s.coefficients.begin(), s.coefficients.end(), coefficients);
    if (average_power) *average_power = s.average_power;
    if (active_case) *active_case = to_c(s.active_case);
  });
}

bsopt_status bsopt_solve_mask(const bsopt_link* link, const bsopt_symbols* symbols,
                              const bsopt_constraints* constraints, bsopt_mask_design** out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(symbols);
  BSOPT_REQUIRE(constraints);
  BSOPT_REQUIRE(out);
  *out = nullptr;
  return guard([&] {
    *out = new bsopt_mask_design{bs::solve_mask(symbols->set, to_core(*constraints), link->cfg)};
  });
}

void bsopt_mask_design_destroy(bsopt_mask_design* design) { delete design; }

size_t bsopt_mask_design_order(const bsopt_mask_design* design) {
  return design ? design->design.coefficients_by_symbol.size() : 0;
}

double bsopt_mask_design_average_power(const bsopt_mask_design* design) {
  return design ? design->design.average_power : 0.0;
}

size_t bsopt_mask_design_winning_row(const bsopt_mask_design* design) {
  return design ? design->design.winning_row : 0;
}

bsopt_active_case bsopt_mask_design_active_case(const bsopt_mask_design* design) {
  return design ? to_c(design->design.active_case) : BSOPT_CASE_INTERIOR;
}

bsopt_status bsopt_mask_design_bounds(const bsopt_mask_design* design, double* lower,
                                      double* upper) {
  BSOPT_REQUIRE(design);
  BSOPT_REQUIRE(lower);
  BSOPT_REQUIRE(upper);
  *lower = design->design.bounds.lower;
  *upper = design->design.bounds.upper;
  return BSOPT_OK;
}

bsopt_status bsopt_mask_design_coefficients(const bsopt_mask_design* design, double* out,
                                            size_t capacity) {
  BSOPT_REQUIRE(design);
  BSOPT_REQUIRE(out);
  return copy_out(design->design.coefficients_by_symbol, out, capacity);
}

bsopt_status bsopt_mask_design_placement(const bsopt_mask_design* design, size_t* out,
                                         size_t capacity) {
  BSOPT_REQUIRE(design);
  BSOPT_REQUIRE(out);
  const auto& p = design->design.placement;
  if (capacity < p.size()) return fail(BSOPT_E_BUFFER_TOO_SMALL, "output buffer too small");
  std::copy(p.begin(), p.end(), out);
  return BSOPT_OK;
}

bsopt_status bsopt_mask_design_state_power(const bsopt_mask_design* design, size_t index,
                                           double* harvested, double* backscattered,
                                           double* reader_constraint) {
  BSOPT_REQUIRE(design);
  if (index >= design->design.per_state.size()) {
    return fail(BSOPT_E_INVALID_ARGUMENT, "state index out of range");
  }
  const auto& s = design->design.per_state[index];
  if (harvested) *harvested = s.harvested;
  if (backscattered) *backscattered = s.backscattered;
  if (reader_constraint) *reader_constraint = s.reader_constraint;
  return BSOPT_OK;
}

// ---- baselines ----

bsopt_status bsopt_symmetric_benchmark(size_t order, double m_th, double* out, size_t capacity) {
  BSOPT_REQUIRE(out);
  std::vector<double> v;
  const bsopt_status s = guard([&] { v = bs::symmetric_benchmark(order, m_th); });
  return s == BSOPT_OK ? copy_out(v, out, capacity) : s;
}

bsopt_status bsopt_bask_benchmark(double m_th, double out[2]) {
  BSOPT_REQUIRE(out);
  const auto b = bs::bask_benchmark(m_th);
  out[0] = b[0];
  out[1] = b[1];
  return BSOPT_OK;
}

bsopt_status bsopt_average_power(const bsopt_link* link, const double* coefficients,
                                 const double* probabilities, size_t count, double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(coefficients);
  BSOPT_REQUIRE(probabilities);
  BSOPT_REQUIRE(out);
  return guard([&] {
    *out = bs::average_power(std::span<const double>(coefficients, count),
                             std::span<const double>(probabilities, count), link->cfg);
  });
}

// ---- symbol error rate ----

bsopt_status bsopt_pairwise_ser(const bsopt_link* link, double m, double* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::pairwise_ser(m, link->cfg); });
}

bsopt_status bsopt_pairwise_ser_explicit(double m, double v0, double sigma, double* out) {
  BSOPT_REQUIRE(out);
  return guard([&] { *out = bs::pairwise_ser(m, v0, sigma); });
}

bsopt_status bsopt_simulate_ser(const bsopt_link* link, const double* coefficients,
                                const double* probabilities, size_t count, double sigma,
                                uint64_t seed, uint64_t trials, unsigned threads,
                                bsopt_ser_result* out, uint64_t* confusion) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(coefficients);
  BSOPT_REQUIRE(probabilities);
  BSOPT_REQUIRE(out);
  return guard([&] {
    const auto r = bs::simulate_ser(std::span<const double>(coefficients, count),
                                    std::span<const double>(probabilities, count), link->cfg,
                                    {sigma, seed}, trials, threads);
    out->trials = r.trials;
    out->errors = r.errors;
    out->symbol_error_rate = r.symbol_error_rate;
    if (confusion) {
      for (const auto& row : r.confusion) confusion = std::copy(row.begin(), row.end(), confusion);
    }
  });
}

// ---- oracles ----

bsopt_status bsopt_oracle_grid_bask(const bsopt_link* link, const bsopt_constraints* constraints,
                                    double p1, double step, int refinement_passes,
                                    bsopt_grid_result* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(constraints);
  BSOPT_REQUIRE(out);
  return guard([&] {
    const auto r = bs::oracle::grid_search_bask(p1, to_core(*constraints), link->cfg, step,
                                                refinement_passes);
    if (!r) throw bs::Error(bs::ErrorCode::infeasible, "no feasible grid cell");
    *out = {r->gamma_high, r->gamma_low, r->average_power, r->final_step};
  });
}

bsopt_status bsopt_oracle_complex_bask(const bsopt_link* link, const bsopt_constraints* constraints,
                                       double p1, double step, bsopt_complex_grid_result* out) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(constraints);
  BSOPT_REQUIRE(out);
  return guard([&] {
    const auto r =
        bs::oracle::grid_search_complex_bask(p1, to_core(*constraints), link->cfg, step);
    if (!r) throw bs::Error(bs::ErrorCode::infeasible, "no feasible grid cell");
    *out = {r->first.real,  r->first.imag,        r->second.real,
            r->second.imag, r->average_power, r->reported_power,
            r->real_axis_power};
  });
}

bsopt_status bsopt_oracle_equal_harvest(const bsopt_link* link, double p_l, double* real_axis,
                                        double* imaginary_axis) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(real_axis);
  BSOPT_REQUIRE(imaginary_axis);
  return guard([&] {
    const auto r = bs::oracle::equal_harvest_backscatter(p_l, link->cfg);
    *real_axis = r.real_axis;
    *imaginary_axis = r.imaginary_axis;
  });
}

bsopt_status bsopt_oracle_permutation(const bsopt_link* link, const bsopt_symbols* symbols,
                                      const bsopt_constraints* constraints, double* average_power,
                                      double* coefficients, size_t* placement) {
  BSOPT_REQUIRE(link);
  BSOPT_REQUIRE(symbols);
  BSOPT_REQUIRE(constraints);
  BSOPT_REQUIRE(average_power);
  return guard([&] {
    const auto r = bs::oracle::permutation_search(symbols->set, to_core(*constraints), link->cfg);
    if (!r) throw bs::Error(bs::ErrorCode::infeasible, "no feasible placement");
    *average_power = r->average_power;
    if (coefficients) {
      std::copy(r->coefficients_by_symbol.begin(), r->coefficients_by_symbol.end(), coefficients);
    }
    if (placement) std::copy(r->placement.begin(), r->placement.end(), placement);
  });
}

}  // extern "C"
