// bsopt: solve, sweep, verify and simulate backscatter modulator designs.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bsopt/bsopt.h"
#include "run_config.hpp"

namespace {

using bsopt_cli::RunConfig;
using bsopt_cli::UsageError;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitVerify = 3;
constexpr int kExitUsage = 64;

constexpr std::size_t kMaxVerifyOrder = 8;
constexpr double kPermutationTolerance = 1e-9;  // relative
constexpr double kGridTolerance = 1e-6;         // relative
constexpr double kGridStep = 1e-3;

struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Internal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Maps a failing status onto the CLI's exception taxonomy.
void check(bsopt_status s) {
  if (s == BSOPT_OK) return;
  const std::string msg = std::string(bsopt_status_string(s)) + ": " + bsopt_last_error();
  switch (s) {
    case BSOPT_E_INFEASIBLE:
    case BSOPT_E_TAG_STARVED: throw Infeasible(bsopt_last_error());
    case BSOPT_E_INVALID_ARGUMENT:
    case BSOPT_E_INVALID_CONFIG: throw UsageError(msg);
    default: throw Internal(msg);
  }
}

struct LinkDeleter {
  void operator()(bsopt_link* p) const { bsopt_link_destroy(p); }
};
struct SymbolsDeleter {
  void operator()(bsopt_symbols* p) const { bsopt_symbols_destroy(p); }
};
struct DesignDeleter {
  void operator()(bsopt_mask_design* p) const { bsopt_mask_design_destroy(p); }
};
using Link = std::unique_ptr<bsopt_link, LinkDeleter>;
using Symbols = std::unique_ptr<bsopt_symbols, SymbolsDeleter>;
using MaskHandle = std::unique_ptr<bsopt_mask_design, DesignDeleter>;

Link make_link(const bsopt_link_params& p) {
  bsopt_link* raw = nullptr;
  check(bsopt_link_create(&p, &raw));
  return Link(raw);
}

Symbols make_symbols(const RunConfig& rc) {
  bsopt_symbols* raw = nullptr;
  if (rc.probabilities.empty()) {
    check(bsopt_symbols_from_bit_probability(rc.p_one, rc.order, &raw));
  } else {
    check(bsopt_symbols_from_probabilities(rc.probabilities.data(), rc.probabilities.size(), &raw));
  }
  return Symbols(raw);
}

// Everything a report needs, in symbol-rank order (most probable first).
struct Design {
  std::string solver;
  std::size_t order = 0;
  std::vector<double> probabilities;
  std::vector<std::string> patterns;
  std::vector<double> coefficients;
  double average_power = 0.0;
  double lower = -1.0;
  double upper = 1.0;
  bsopt_active_case active_case = BSOPT_CASE_INTERIOR;
  long winning_row = -1;
};

const char* case_name(bsopt_active_case c) {
  switch (c) {
    case BSOPT_CASE_INTERIOR: return "interior";
    case BSOPT_CASE_UPPER_BOUND: return "upper_bound";
    case BSOPT_CASE_LOWER_BOUND: return "lower_bound";
  }
  return "unknown";
}

bsopt_constraints effective_constraints(const RunConfig& rc, bool relax_reader) {
  bsopt_constraints c = rc.constraints;
  if (relax_reader) c.has_p_b_min = 0;
  return c;
}

Design solve_design(const RunConfig& rc, const bsopt_link* link, bool relax_reader) {
  const Symbols symbols = make_symbols(rc);
  Design d;
  d.order = bsopt_symbols_order(symbols.get());
  d.probabilities.resize(d.order);
  check(bsopt_symbols_probabilities(symbols.get(), d.probabilities.data(), d.order));
  for (std::size_t i = 0; i < d.order; ++i) {
    char buf[64];
    check(bsopt_symbols_pattern(symbols.get(), i, buf, sizeof buf));
    d.patterns.emplace_back(buf);
  }
  const bsopt_constraints cons = effective_constraints(rc, relax_reader);

  if (relax_reader && d.order == 2) {
    bsopt_bask_result r{};
    check(bsopt_solve_bask(link, &cons, d.probabilities[0], &r));
    check(bsopt_coefficient_bounds(link, &cons, &d.lower, &d.upper));
    d.solver = "bask";
    d.coefficients = {r.gamma_high, r.gamma_low};
    d.average_power = r.average_power;
    d.active_case = r.active_case;
    return d;
  }

  bsopt_mask_design* raw = nullptr;
  check(bsopt_solve_mask(link, symbols.get(), &cons, &raw));
  const MaskHandle mask(raw);
  d.solver = "mask";
  d.coefficients.resize(d.order);
  check(bsopt_mask_design_coefficients(mask.get(), d.coefficients.data(), d.order));
  d.average_power = bsopt_mask_design_average_power(mask.get());
  d.active_case = bsopt_mask_design_active_case(mask.get());
  d.winning_row = static_cast<long>(bsopt_mask_design_winning_row(mask.get()));
  check(bsopt_mask_design_bounds(mask.get(), &d.lower, &d.upper));
  return d;
}

std::vector<double> benchmark_for(std::size_t order, double m_th) {
  std::vector<double> b(order);
  if (order == 2) {
    check(bsopt_bask_benchmark(m_th, b.data()));
  } else {
    check(bsopt_symmetric_benchmark(order, m_th, b.data(), b.size()));
  }
  return b;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

std::string feasibility_diagnostic(const RunConfig& rc, const bsopt_link* link, bool relax) {
  std::string out =
      "the formulated problems are feasible if and only if M <= 1 + (Gamma_ub - Gamma_lb) / (2 "
      "m_th)";
  const bsopt_constraints cons = effective_constraints(rc, relax);
  double lo = 0.0, hi = 0.0;
  if (bsopt_coefficient_bounds(link, &cons, &lo, &hi) == BSOPT_OK) {
    out += "; M = " + std::to_string(rc.order) + ", bounds = [" + fmt(lo) + ", " + fmt(hi) +
           "], limit = " + fmt(1.0 + (hi - lo) / (2.0 * cons.m_th));
  } else {
    out += "; no admissible coefficient interval exists";
  }
  return out;
}

struct Options {
  std::string config;
  std::string out;
  bool relax_reader = false;
  bool seed_given = false;
  std::uint64_t seed = 0;
};

// ---- solve ----

std::string cmd_solve(const RunConfig& rc, const Options& opt) {
  const Link link = make_link(rc.link);
  const Design d = solve_design(rc, link.get(), opt.relax_reader);
  const bsopt_constraints cons = effective_constraints(rc, opt.relax_reader);

  bsopt_constraint_report rep{};
  check(bsopt_check_constraints(link.get(), &cons, d.coefficients.data(), d.order, &rep));
  const std::vector<double> bench = benchmark_for(d.order, cons.m_th);
  double bench_power = 0.0;
  check(bsopt_average_power(link.get(), bench.data(), d.probabilities.data(), d.order,
                            &bench_power));
  bsopt_constraint_report bench_rep{};
  check(bsopt_check_constraints(link.get(), &cons, bench.data(), d.order, &bench_rep));

  const double limit = 1.0 + (d.upper - d.lower) / (2.0 * cons.m_th);
  std::string s;
  s += "solver=" + d.solver + "\n";
  s += "order=" + std::to_string(d.order) + "\n";
  s += "m_th=" + fmt(cons.m_th) + "\n";
  s += "reader_constraint=" + std::string(cons.has_p_b_min ? "on" : "off") + "\n";
  s += "bound_lower=" + fmt(d.lower) + "\n";
  s += "bound_upper=" + fmt(d.upper) + "\n";
  s += "feasibility_limit=" + fmt(limit) + "\n";
  s += "feasibility_margin=" + fmt(limit - static_cast<double>(d.order)) + "\n";
  s += "active_case=" + std::string(case_name(d.active_case)) + "\n";
  if (d.winning_row >= 0) s += "winning_row=" + std::to_string(d.winning_row) + "\n";
  s += "average_power=" + fmt(d.average_power) + "\n";
  s += "benchmark_power=" + fmt(bench_power) + "\n";
  s += "benchmark_constraints_ok=" +
       std::string(bench_rep.separation_ok && bench_rep.harvest_ok && bench_rep.reader_ok &&
                           bench_rep.domain_ok
                       ? "1"
                       : "0") +
       "\n";
  s += "constraints_ok=" +
       std::string(rep.separation_ok && rep.harvest_ok && rep.reader_ok && rep.domain_ok ? "1"
                                                                                         : "0") +
       "\n";
  s += "antenna_impedance=" + fmt(rc.antenna_resistance) + "," + fmt(rc.antenna_reactance) + "\n";
  for (std::size_t i = 0; i < d.order; ++i) {
    const double g = d.coefficients[i];
    double hv = 0.0, bk = 0.0, rd = 0.0;
    check(bsopt_harvested_power(link.get(), g, 0.0, &hv));
    check(bsopt_backscattered_power(link.get(), g, 0.0, &bk));
    check(bsopt_reader_constraint_power(link.get(), g, 0.0, &rd));
    double zr = 0.0, zx = 0.0;
    std::string load;
    if (bsopt_to_impedance(g, 0.0, rc.antenna_resistance, rc.antenna_reactance, &zr, &zx) ==
        BSOPT_OK) {
      load = fmt(zr) + "," + fmt(zx);
    } else {
      load = "open";
    }
    const std::string key = "symbol." + d.patterns[i] + ".";
    s += key + "probability=" + fmt(d.probabilities[i]) + "\n";
    s += key + "gamma=" + fmt(g) + "\n";
    s += key + "load_impedance=" + load + "\n";
    s += key + "harvested_power=" + fmt(hv) + "\n";
    s += key + "backscattered_power=" + fmt(bk) + "\n";
    s += key + "reader_power=" + fmt(rd) + "\n";
  }
  return s;
}

// ---- sweep ----

void apply_axis(RunConfig& rc, const std::string& axis, double v) {
  if (axis == "p_one") {
    rc.p_one = v;
  } else if (axis == "m_th") {
    rc.constraints.m_th = v;
  } else if (axis == "distance") {
    rc.link.distance = v;
  } else {
    rc.link.path_loss_exponent = v;
  }
}

std::size_t pattern_value(const std::string& p) { return std::stoul(p, nullptr, 2); }

std::string cmd_sweep(const RunConfig& rc, const Options& opt) {
  if (!rc.sweep) throw UsageError("sweep needs sweep_axis, sweep_start, sweep_stop, sweep_count");
  const auto& ax = *rc.sweep;
  const std::size_t m = rc.probabilities.empty() ? rc.order : rc.probabilities.size();

  // Coefficient columns are labelled by bit pattern in decimal-descending order.
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < m) ++bits;
  std::vector<std::string> labels(m);
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t value = m - 1 - c;
    for (std::size_t b = bits; b-- > 0;) labels[c] += ((value >> b) & 1U) ? '1' : '0';
  }

  std::string s = ax.name + ",optimal_power,benchmark_power,benchmark_constraints_ok";
  for (const auto& l : labels) s += ",gamma_" + l;
  s += ",infeasible\r\n";

  for (int i = 0; i < ax.count; ++i) {
    const double v = (i == ax.count - 1)
                         ? ax.stop
                         : ax.start + (ax.stop - ax.start) * static_cast<double>(i) /
                                          static_cast<double>(ax.count - 1);
    RunConfig point = rc;
    apply_axis(point, ax.name, v);
    s += fmt(v);
    try {
      const Link link = make_link(point.link);
      const Design d = solve_design(point, link.get(), opt.relax_reader);
      const bsopt_constraints cons = effective_constraints(point, opt.relax_reader);
      const std::vector<double> bench = benchmark_for(d.order, cons.m_th);
      double bench_power = 0.0;
      check(bsopt_average_power(link.get(), bench.data(), d.probabilities.data(), d.order,
                                &bench_power));
      bsopt_constraint_report br{};
      check(bsopt_check_constraints(link.get(), &cons, bench.data(), d.order, &br));
      const bool bench_ok = br.separation_ok && br.harvest_ok && br.reader_ok && br.domain_ok;

      std::vector<double> by_label(m);
      for (std::size_t k = 0; k < m; ++k) {
        by_label[m - 1 - pattern_value(d.patterns[k])] = d.coefficients[k];
      }
      s += "," + fmt(d.average_power) + "," + fmt(bench_power) + "," + (bench_ok ? "1" : "0");
      for (double g : by_label) s += "," + fmt(g);
      s += ",0\r\n";
    } catch (const Infeasible&) {
      s += ",,,";
      for (std::size_t k = 0; k < m; ++k) s += ",";
      s += ",1\r\n";
    }
  }
  return s;
}

// ---- verify ----

struct Check {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return deviation <= tolerance; }
};

double relative(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

std::string cmd_verify(const RunConfig& rc, const Options& opt, bool& ok) {
  if (rc.order > kMaxVerifyOrder) {
    throw UsageError("verify supports M <= " + std::to_string(kMaxVerifyOrder) + ", got M = " +
                     std::to_string(rc.order));
  }
  const Link link = make_link(rc.link);
  const Symbols symbols = make_symbols(rc);
  const bsopt_constraints cons = effective_constraints(rc, opt.relax_reader);
  const std::size_t m = bsopt_symbols_order(symbols.get());

  bsopt_mask_design* raw = nullptr;
  check(bsopt_solve_mask(link.get(), symbols.get(), &cons, &raw));
  const MaskHandle mask(raw);
  double mask_power = bsopt_mask_design_average_power(mask.get());
  std::vector<double> coeffs(m);
  check(bsopt_mask_design_coefficients(mask.get(), coeffs.data(), m));
#ifdef BSOPT_CLI_PERTURB_SOLVER
  mask_power *= 1.0 + 1e-3;
  for (double& g : coeffs) g += 1e-3;
#endif

  std::vector<Check> checks;
  double perm_power = 0.0;
  check(bsopt_oracle_permutation(link.get(), symbols.get(), &cons, &perm_power, nullptr, nullptr));
  checks.push_back({"mask_vs_permutation", relative(mask_power, perm_power), kPermutationTolerance});

  std::vector<double> probs(m);
  check(bsopt_symbols_probabilities(symbols.get(), probs.data(), m));
  double recomputed = 0.0;
  check(bsopt_average_power(link.get(), coeffs.data(), probs.data(), m, &recomputed));
  checks.push_back({"mask_power_consistency", relative(mask_power, recomputed),
                    kPermutationTolerance});

  bsopt_constraint_report rep{};
  check(bsopt_check_constraints(link.get(), &cons, coeffs.data(), m, &rep));
  const bool feasible = rep.separation_ok && rep.harvest_ok && rep.reader_ok && rep.domain_ok;
  checks.push_back({"mask_constraints", feasible ? 0.0 : 1.0, 0.0});

  if (m == 2) {
    bsopt_constraints relaxed = cons;
    relaxed.has_p_b_min = 0;
    bsopt_bask_result b{};
    check(bsopt_solve_bask(link.get(), &relaxed, probs[0], &b));
    double bask_power = b.average_power;
#ifdef BSOPT_CLI_PERTURB_SOLVER
    bask_power *= 1.0 + 1e-3;
#endif
    bsopt_grid_result g{};
    check(bsopt_oracle_grid_bask(link.get(), &relaxed, probs[0], kGridStep, 3, &g));
    checks.push_back({"bask_vs_grid", relative(bask_power, g.average_power), kGridTolerance});
  }

  ok = true;
  double worst = 0.0;
  std::string s;
  for (const Check& c : checks) {
    s += c.name + ": deviation=" + fmt(c.deviation) + " tolerance=" + fmt(c.tolerance) + " " +
         (c.passed() ? "PASS" : "FAIL") + "\n";
    ok = ok && c.passed();
    if (c.name != "mask_constraints") worst = std::max(worst, c.deviation);
  }
  s += "max_relative_deviation=" + fmt(worst) + "\n";
  s += std::string("result=") + (ok ? "PASS" : "FAIL") + "\n";
  return s;
}

// ---- ser ----

std::string cmd_ser(const RunConfig& rc, const Options& opt) {
  if (rc.ser_trials == 0) throw UsageError("ser_trials must be >= 1");
  const Link link = make_link(rc.link);
  const Design d = solve_design(rc, link.get(), opt.relax_reader);
  const std::uint64_t seed = opt.seed_given ? opt.seed : rc.seed;

  double v0 = 0.0, sigma = 0.0;
  check(bsopt_induced_voltage(link.get(), &v0));
  check(bsopt_noise_sigma(link.get(), &sigma));
  const bsopt_constraints cons = effective_constraints(rc, opt.relax_reader);
  bsopt_constraint_report rep{};
  check(bsopt_check_constraints(link.get(), &cons, d.coefficients.data(), d.order, &rep));
  double pair = 0.0;
  check(bsopt_pairwise_ser_explicit(std::min(1.0, rep.min_half_separation), v0, sigma, &pair));

  bsopt_ser_result r{};
  std::vector<std::uint64_t> confusion(d.order * d.order);
  check(bsopt_simulate_ser(link.get(), d.coefficients.data(), d.probabilities.data(), d.order,
                           sigma, seed, rc.ser_trials, 0, &r, confusion.data()));

  std::string s;
  s += "solver=" + d.solver + "\n";
  s += "order=" + std::to_string(d.order) + "\n";
  s += "induced_voltage=" + fmt(v0) + "\n";
  s += "noise_sigma=" + fmt(sigma) + "\n";
  s += "min_modulation_index=" + fmt(rep.min_half_separation) + "\n";
  s += "pairwise_ser=" + fmt(pair) + "\n";
  s += "seed=" + std::to_string(seed) + "\n";
  s += "trials=" + std::to_string(r.trials) + "\n";
  s += "errors=" + std::to_string(r.errors) + "\n";
  s += "symbol_error_rate=" + fmt(r.symbol_error_rate) + "\n";
  for (std::size_t i = 0; i < d.order; ++i) {
    std::uint64_t sent = 0;
    for (std::size_t k = 0; k < d.order; ++k) sent += confusion[i * d.order + k];
    const std::uint64_t wrong = sent - confusion[i * d.order + i];
    const double rate = sent ? static_cast<double>(wrong) / static_cast<double>(sent) : 0.0;
    s += "symbol." + d.patterns[i] + ".gamma=" + fmt(d.coefficients[i]) + "\n";
    s += "symbol." + d.patterns[i] + ".sent=" + std::to_string(sent) + "\n";
    s += "symbol." + d.patterns[i] + ".error_rate=" + fmt(rate) + "\n";
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backscatter modulator design optimizer"};
  app.require_subcommand(1);
  Options opt;
  std::string seed_text;
  const char* names[] = {"solve", "sweep", "verify", "ser"};
  const char* blurbs[] = {"Optimal design report", "CSV sweep over one parameter",
                          "Compare the closed-form solvers with brute-force oracles",
                          "Monte-Carlo symbol error rate of the optimal design"};
  for (int i = 0; i < 4; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--config", opt.config, "key=value config file")->required();
    sub->add_flag("--relax-reader", opt.relax_reader, "drop the reader-sensitivity floor");
    sub->add_option("--out", opt.out, "output file (default: stdout)");
    sub->add_option("--seed", seed_text, "random seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();

  Link diag_link;
  RunConfig rc;
  try {
    if (!seed_text.empty()) {
      if (seed_text.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("--seed expects an unsigned integer");
      }
      opt.seed = std::stoull(seed_text);
      opt.seed_given = true;
    }
    rc = bsopt_cli::load_config(opt.config);
    const std::string out = opt.out.empty() ? rc.output : opt.out;
    std::string text;
    if (cmd == "solve") {
      text = cmd_solve(rc, opt);
    } else if (cmd == "sweep") {
      text = cmd_sweep(rc, opt);
    } else if (cmd == "verify") {
      bool ok = false;
      text = cmd_verify(rc, opt, ok);
      write_output(text, out);
      return ok ? kExitOk : kExitVerify;
    } else {
      text = cmd_ser(rc, opt);
    }
    write_output(text, out);
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Infeasible& e) {
    std::cerr << e.what() << "\n";
    bsopt_link* raw = nullptr;
    const bool explained = std::string(e.what()).find("feasible if") != std::string::npos;
    if (!explained && bsopt_link_create(&rc.link, &raw) == BSOPT_OK) {
      diag_link.reset(raw);
      std::cerr << feasibility_diagnostic(rc, diag_link.get(), opt.relax_reader) << "\n";
    }
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
}
