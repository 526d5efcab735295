#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef BSOPT_CLI
#error "BSOPT_CLI must name the CLI executable"
#endif

namespace {

const std::string kCli = BSOPT_CLI;
const std::string kPerturbed = BSOPT_CLI_PERTURBED;
const std::string kWork = BSOPT_CLI_WORKDIR;

std::string write_config(const std::string& name, const std::string& body) {
  const std::string path = kWork + "/" + name;
  std::ofstream(path) << body;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::string& exe, const std::string& args) {
  const std::string out = kWork + "/stdout.txt";
  const std::string err = kWork + "/stderr.txt";
  const int status = std::system((exe + " " + args + " >" + out + " 2>" + err).c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

const char* kWorked =
    "order = 4\n"
    "p_one = 0.7\n"
    "m_th = 0.15\n"
    "p_l_min = 5 uW\n"
    "p_b_min = 3 uW\n";

}  // namespace

TEST_CASE("solve reports the worked design") {
  const auto cfg = write_config("worked.conf", kWorked);
  const Run r = run(kCli, "solve --config " + cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("average_power=8.88540315e-06") != std::string::npos);
  CHECK(r.out.find("symbol.11.gamma=0.054") != std::string::npos);
  CHECK(r.out.find("symbol.00.gamma=-0.546") != std::string::npos);
  CHECK(r.out.find("constraints_ok=1") != std::string::npos);
  CHECK(r.out.find("symbol.11.load_impedance=") != std::string::npos);
}

TEST_CASE("solve writes to --out") {
  const auto cfg = write_config("worked_out.conf", kWorked);
  const std::string out = kWork + "/solve_report.txt";
  std::remove(out.c_str());
  const Run r = run(kCli, "solve --config " + cfg + " --out " + out);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out).find("average_power=") != std::string::npos);
}

TEST_CASE("infeasible order exits 2 with the feasibility law") {
  const auto cfg = write_config("m16.conf", "order = 16\nm_th = 0.15\n");
  const Run r = run(kCli, "solve --config " + cfg);
  CHECK(r.code == 2);
  CHECK(r.err.find("feasible if") != std::string::npos);
}

TEST_CASE("binary design with the reader floor relaxed uses the closed form") {
  const auto cfg = write_config("bask.conf", "order = 2\np_one = 0.7\nm_th = 0.2\n");
  const Run r = run(kCli, "solve --relax-reader --config " + cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("solver=bask") != std::string::npos);
  CHECK(r.out.find("average_power=9.20628959e-06") != std::string::npos);
  const Run m = run(kCli, "solve --config " + cfg);
  CHECK(m.out.find("solver=mask") != std::string::npos);
}

TEST_CASE("verify agrees with the oracles") {
  const auto cfg = write_config("verify.conf", kWorked);
  const Run r = run(kCli, "verify --config " + cfg);
  CHECK(r.code == 0);
  CHECK(r.out.find("result=PASS") != std::string::npos);
  const auto bin = write_config("verify2.conf", "order = 2\np_one = 0.8\nm_th = 0.2\n");
  CHECK(run(kCli, "verify --config " + bin).code == 0);
}

TEST_CASE("perturbed solver fails verification") {
  const auto cfg = write_config("verify_neg.conf", kWorked);
  const Run r = run(kPerturbed, "verify --config " + cfg);
  CHECK(r.code == 3);
  CHECK(r.out.find("result=FAIL") != std::string::npos);
}

TEST_CASE("usage errors exit 64") {
  const auto m16 = write_config("verify16.conf", "order = 16\n");
  CHECK(run(kCli, "verify --config " + m16).code == 64);
  const auto bad = write_config("bad.conf", "colour = blue\n");
  CHECK(run(kCli, "solve --config " + bad).code == 64);
  CHECK(run(kCli, "solve").code == 64);
  CHECK(run(kCli, "frobnicate --config " + bad).code == 64);
  CHECK(run(kCli, "solve --config " + kWork + "/missing.conf").code == 64);
  CHECK(run(kCli, "").code == 64);
  const auto worked = write_config("seed.conf", kWorked);
  CHECK(run(kCli, "ser --config " + worked + " --seed abc").code == 64);
}

TEST_CASE("sweeps are byte-identical across runs") {
  const auto cfg = write_config("sweep_p.conf",
                                "order = 4\nm_th = 0.1\nsweep_axis = p_one\nsweep_start = 0.5\n"
                                "sweep_stop = 0.95\nsweep_count = 10\n");
  const std::string a = kWork + "/sweep_a.csv";
  const std::string b = kWork + "/sweep_b.csv";
  CHECK(run(kCli, "sweep --config " + cfg + " --out " + a).code == 0);
  CHECK(run(kCli, "sweep --config " + cfg + " --out " + b).code == 0);
  const std::string ta = slurp(a);
  CHECK(!ta.empty());
  CHECK(ta == slurp(b));

  const auto rows = parse_csv(ta);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == std::vector<std::string>{"p_one", "optimal_power", "benchmark_power",
                                            "benchmark_constraints_ok", "gamma_11", "gamma_10",
                                            "gamma_01", "gamma_00", "infeasible"});
  CHECK(ta.find("\r\n") != std::string::npos);
  double last = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 9);
    CHECK(rows[i][8] == "0");
    const double p = std::stod(rows[i][1]);
    CHECK(p >= last);
    CHECK(p >= std::stod(rows[i][2]));
    last = p;
  }
  CHECK(std::stod(rows[10][0]) == 0.95);
}

TEST_CASE("infeasible sweep points are flagged and the run continues") {
  const auto cfg = write_config("sweep_m.conf",
                                "order = 4\np_one = 0.7\nsweep_axis = m_th\nsweep_start = 0.05\n"
                                "sweep_stop = 0.3\nsweep_count = 6\n");
  const Run r = run(kCli, "sweep --config " + cfg);
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 7);
  int flagged = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 9);
    const double m = std::stod(rows[i][0]);
    if (rows[i][8] == "1") {
      ++flagged;
      CHECK(m > 0.2051);
      for (std::size_t k = 1; k < 8; ++k) CHECK(rows[i][k].empty());
    } else {
      // Emitted designs respect the separation floor (9 significant digits).
      std::vector<double> g;
      for (std::size_t k = 4; k < 8; ++k) g.push_back(std::stod(rows[i][k]));
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) CHECK(std::abs(g[a] - g[b]) >= 2 * m - 1e-8);
        CHECK(std::abs(g[a]) <= 0.6894);
      }
    }
  }
  CHECK(flagged == 2);
}

TEST_CASE("error-rate command is reproducible for a seed") {
  const auto cfg = write_config("ser.conf", std::string(kWorked) +
                                                "noise_power = -47 dBm\nser_trials = 200000\n");
  const Run a = run(kCli, "ser --config " + cfg + " --seed 17");
  const Run b = run(kCli, "ser --config " + cfg + " --seed 17");
  const Run c = run(kCli, "ser --config " + cfg + " --seed 18");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.find("trials=200000") != std::string::npos);
}
