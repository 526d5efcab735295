#ifndef BSOPT_BSOPT_H
#define BSOPT_BSOPT_H

/* C interface to the backscatter modulation optimizer.
 *
 * Every call returns a bsopt_status. On failure a thread-local message is
 * available from bsopt_last_error() until the next failing call on the same
 * thread. Handles are opaque, owned by the caller and released with their
 * matching *_destroy function. All quantities are SI (W, Hz, m, ohm, V). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BSOPT_BUILDING)
#    define BSOPT_API __declspec(dllexport)
#  else
#    define BSOPT_API __declspec(dllimport)
#  endif
#else
#  define BSOPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bsopt_status {
  BSOPT_OK = 0,
  BSOPT_E_INVALID_ARGUMENT = 1,
  BSOPT_E_INVALID_CONFIG = 2,
  BSOPT_E_TAG_STARVED = 3,
  BSOPT_E_INFEASIBLE = 4,
  BSOPT_E_UNSUSTAINABLE = 5,
  BSOPT_E_DEGENERATE_CIRCUIT = 6,
  BSOPT_E_OPEN_CIRCUIT = 7,
  BSOPT_E_INVARIANT_VIOLATION = 8,
  BSOPT_E_NULL_POINTER = 9,
  BSOPT_E_BUFFER_TOO_SMALL = 10,
  BSOPT_E_INTERNAL = 11
} bsopt_status;

typedef enum bsopt_active_case {
  BSOPT_CASE_INTERIOR = 0,
  BSOPT_CASE_UPPER_BOUND = 1,
  BSOPT_CASE_LOWER_BOUND = 2
} bsopt_active_case;

typedef struct bsopt_link bsopt_link;
typedef struct bsopt_symbols bsopt_symbols;
typedef struct bsopt_mask_design bsopt_mask_design;

typedef struct bsopt_link_params {
  double transmit_power;
  double frequency;
  double speed_of_light;
  double tag_gain;
  double reader_gain;
  double reference_distance;
  double distance;
  double path_loss_exponent;
  double harvest_efficiency;
  double backscatter_efficiency;
  double noise_power;
  double reader_resistance;
} bsopt_link_params;

/* has_p_b_min = 0 relaxes the reader-sensitivity floor. */
typedef struct bsopt_constraints {
  double m_th;
  double p_l_min;
  double p_b_min;
  int has_p_b_min;
} bsopt_constraints;

typedef struct bsopt_bask_result {
  double gamma_high;
  double gamma_low;
  double average_power;
  bsopt_active_case active_case;
  int swapped;
} bsopt_bask_result;

typedef struct bsopt_constraint_report {
  double min_half_separation;
  double min_harvested;
  double min_reader_power;
  int separation_ok;
  int harvest_ok;
  int reader_ok;
  int domain_ok;
} bsopt_constraint_report;

typedef struct bsopt_ser_result {
  uint64_t trials;
  uint64_t errors;
  double symbol_error_rate;
} bsopt_ser_result;

typedef struct bsopt_grid_result {
  double gamma_high;
  double gamma_low;
  double average_power;
  double final_step;
} bsopt_grid_result;

typedef struct bsopt_complex_grid_result {
  double first_real;
  double first_imag;
  double second_real;
  double second_imag;
  double average_power;
  double reported_power;
  double real_axis_power;
} bsopt_complex_grid_result;

BSOPT_API const char* bsopt_version(void);
BSOPT_API const char* bsopt_last_error(void);
BSOPT_API const char* bsopt_status_string(bsopt_status status);

/* link budget */
BSOPT_API void bsopt_link_params_default(bsopt_link_params* out);
BSOPT_API bsopt_status bsopt_link_create(const bsopt_link_params* params, bsopt_link** out);
BSOPT_API void bsopt_link_destroy(bsopt_link* link);
BSOPT_API bsopt_status bsopt_link_get_params(const bsopt_link* link, bsopt_link_params* out);
BSOPT_API bsopt_status bsopt_propagation_gain(const bsopt_link* link, double* out);
BSOPT_API bsopt_status bsopt_available_power(const bsopt_link* link, double* out);
BSOPT_API bsopt_status bsopt_matched_received_power(const bsopt_link* link, double* out);
BSOPT_API bsopt_status bsopt_induced_voltage(const bsopt_link* link, double* out);
BSOPT_API bsopt_status bsopt_noise_sigma(const bsopt_link* link, double* out);
BSOPT_API bsopt_status bsopt_stored_energy(double p_avg, double p_l_min, double period,
                                           double* out);
BSOPT_API double bsopt_dbm_to_watts(double dbm);
BSOPT_API double bsopt_watts_to_dbm(double watts);

/* reflection */
BSOPT_API bsopt_status bsopt_from_impedance(double load_r, double load_x, double antenna_r,
                                            double antenna_x, double* gamma_re,
                                            double* gamma_im);
BSOPT_API bsopt_status bsopt_to_impedance(double gamma_re, double gamma_im, double antenna_r,
                                          double antenna_x, double* load_r, double* load_x);
BSOPT_API bsopt_status bsopt_harvested_power(const bsopt_link* link, double gamma_re,
                                             double gamma_im, double* out);
BSOPT_API bsopt_status bsopt_backscattered_power(const bsopt_link* link, double gamma_re,
                                                 double gamma_im, double* out);
BSOPT_API bsopt_status bsopt_received_power(const bsopt_link* link, double gamma_re,
                                            double gamma_im, double* out);
BSOPT_API double bsopt_modulation_index(double re1, double im1, double re2, double im2);

/* symbols */
BSOPT_API bsopt_status bsopt_symbols_from_bit_probability(double p_one, size_t order,
                                                          bsopt_symbols** out);
BSOPT_API bsopt_status bsopt_symbols_from_probabilities(const double* probabilities,
                                                        size_t count, bsopt_symbols** out);
BSOPT_API void bsopt_symbols_destroy(bsopt_symbols* symbols);
BSOPT_API size_t bsopt_symbols_order(const bsopt_symbols* symbols);
/* Copies order() probabilities, non-increasing. */
BSOPT_API bsopt_status bsopt_symbols_probabilities(const bsopt_symbols* symbols, double* out,
                                                   size_t capacity);
/* NUL-terminated bit pattern of symbol `index`. */
BSOPT_API bsopt_status bsopt_symbols_pattern(const bsopt_symbols* symbols, size_t index,
                                             char* out, size_t capacity);

/* feasibility */
BSOPT_API void bsopt_constraints_default(bsopt_constraints* out);
BSOPT_API bsopt_status bsopt_coefficient_bounds(const bsopt_link* link,
                                                const bsopt_constraints* constraints,
                                                double* lower, double* upper);
BSOPT_API bsopt_status bsopt_is_feasible(size_t order, double lower, double upper, double m_th,
                                         int* out);
BSOPT_API bsopt_status bsopt_max_modulation_threshold(size_t order, double lower, double upper,
                                                      double* out);
/* E_b P_a G_r |1 - Gamma|^2, the form used by the reader-sensitivity floor. */
BSOPT_API bsopt_status bsopt_reader_constraint_power(const bsopt_link* link, double gamma_re,
                                                     double gamma_im, double* out);
BSOPT_API bsopt_status bsopt_check_constraints(const bsopt_link* link,
                                               const bsopt_constraints* constraints,
                                               const double* coefficients, size_t count,
                                               bsopt_constraint_report* out);

/* optimizers */
BSOPT_API bsopt_status bsopt_solve_bask(const bsopt_link* link,
                                        const bsopt_constraints* constraints, double p_one,
                                        bsopt_bask_result* out);
/* Row-major (2(M-1)) x M matrix of symbol ranks in ladder order. */
BSOPT_API bsopt_status bsopt_sequence_matrix(size_t order, size_t* out, size_t capacity,
                                             size_t* rows);
/* `row` holds probabilities in ladder order; writes `count` coefficients. */
BSOPT_API bsopt_status bsopt_solve_placed(const bsopt_link* link,
                                          const bsopt_constraints* constraints, double lower,
                                          double upper, const double* row, size_t count,
                                          double* coefficients, double* average_power,
                                          bsopt_active_case* active_case);
BSOPT_API bsopt_status bsopt_solve_mask(const bsopt_link* link, const bsopt_symbols* symbols,
                                        const bsopt_constraints* constraints,
                                        bsopt_mask_design** out);
BSOPT_API void bsopt_mask_design_destroy(bsopt_mask_design* design);
BSOPT_API size_t bsopt_mask_design_order(const bsopt_mask_design* design);
BSOPT_API double bsopt_mask_design_average_power(const bsopt_mask_design* design);
BSOPT_API size_t bsopt_mask_design_winning_row(const bsopt_mask_design* design);
BSOPT_API bsopt_active_case bsopt_mask_design_active_case(const bsopt_mask_design* design);
BSOPT_API bsopt_status bsopt_mask_design_bounds(const bsopt_mask_design* design, double* lower,
                                                double* upper);
/* Coefficients aligned to the symbol order of the input bsopt_symbols. */
BSOPT_API bsopt_status bsopt_mask_design_coefficients(const bsopt_mask_design* design,
                                                      double* out, size_t capacity);
BSOPT_API bsopt_status bsopt_mask_design_placement(const bsopt_mask_design* design, size_t* out,
                                                   size_t capacity);
BSOPT_API bsopt_status bsopt_mask_design_state_power(const bsopt_mask_design* design,
                                                     size_t index, double* harvested,
                                                     double* backscattered,
                                                     double* reader_constraint);

/* baselines */
BSOPT_API bsopt_status bsopt_symmetric_benchmark(size_t order, double m_th, double* out,
                                                 size_t capacity);
BSOPT_API bsopt_status bsopt_bask_benchmark(double m_th, double out[2]);
BSOPT_API bsopt_status bsopt_average_power(const bsopt_link* link, const double* coefficients,
                                           const double* probabilities, size_t count,
                                           double* out);

/* symbol error rate */
BSOPT_API bsopt_status bsopt_pairwise_ser(const bsopt_link* link, double m, double* out);
BSOPT_API bsopt_status bsopt_pairwise_ser_explicit(double m, double v0, double sigma,
                                                   double* out);
/* `confusion` may be NULL; otherwise it receives count x count counts,
 * row = sent, column = detected. threads = 0 picks the hardware count. */
BSOPT_API bsopt_status bsopt_simulate_ser(const bsopt_link* link, const double* coefficients,
                                          const double* probabilities, size_t count,
                                          double sigma, uint64_t seed, uint64_t trials,
                                          unsigned threads, bsopt_ser_result* out,
                                          uint64_t* confusion);

/* brute-force verifiers; BSOPT_E_INFEASIBLE when nothing is admissible */
BSOPT_API bsopt_status bsopt_oracle_grid_bask(const bsopt_link* link,
                                              const bsopt_constraints* constraints, double p1,
                                              double step, int refinement_passes,
                                              bsopt_grid_result* out);
BSOPT_API bsopt_status bsopt_oracle_complex_bask(const bsopt_link* link,
                                                 const bsopt_constraints* constraints,
                                                 double p1, double step,
                                                 bsopt_complex_grid_result* out);
BSOPT_API bsopt_status bsopt_oracle_equal_harvest(const bsopt_link* link, double p_l,
                                                  double* real_axis, double* imaginary_axis);
/* `coefficients` and `placement` receive order() entries each; either may be NULL. */
BSOPT_API bsopt_status bsopt_oracle_permutation(const bsopt_link* link,
                                                const bsopt_symbols* symbols,
                                                const bsopt_constraints* constraints,
                                                double* average_power, double* coefficients,
                                                size_t* placement);

#ifdef __cplusplus
}
#endif

#endif
