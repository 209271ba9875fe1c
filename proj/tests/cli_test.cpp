#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <sys/wait.h>

#include "dustsqp/config.hpp"
#include "dustsqp/hs_registry.hpp"
#include "dustsqp/suite.hpp"

namespace dustsqp {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dustsqp_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(ConfigFile, EmptyGivesDefaults) {
  std::istringstream in("");
  const SolverConfig c = parse_config(in);
  EXPECT_EQ(c.beta_phi, 0.7);
  EXPECT_EQ(c.beta_v, 0.1);
  EXPECT_EQ(c.rho_init, 1.0);
}

TEST(ConfigFile, SingleOverride) {
  std::istringstream in("beta_phi=0.99\n");
  const SolverConfig c = parse_config(in);
  EXPECT_EQ(c.beta_phi, 0.99);
  EXPECT_EQ(c.beta_v, 0.1);
  EXPECT_EQ(c.theta_rho, 0.9);
}

TEST(ConfigFile, OrderViolation) {
  std::istringstream in("beta_v=0.9\nbeta_phi=0.5");
  try {
    parse_config(in);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("beta_v"), std::string::npos);
  }
}

TEST(ConfigFile, CommentsAndBlankLines) {
  std::istringstream in(
      "# tuned\n\n  tol_opt = 1e-6  # tighter\nhessian_backend=lbfgs\n");
  const SolverConfig c = parse_config(in);
  EXPECT_EQ(c.tol_opt, 1e-6);
  EXPECT_EQ(c.hessian, HessianMode::Lbfgs);
}

TEST(ConfigFile, UnknownKeyReportsLine) {
  std::istringstream in("beta_phi=0.8\nbogus=1\n");
  try {
    parse_config(in);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bogus"), std::string::npos) << msg;
  }
}

TEST(ConfigFile, MalformedLinesAndValues) {
  std::istringstream a("beta_phi\n");
  EXPECT_THROW(parse_config(a), ConfigError);
  std::istringstream b("beta_phi=abc\n");
  EXPECT_THROW(parse_config(b), ConfigError);
  std::istringstream c("max_outer=2.5\n");
  EXPECT_THROW(parse_config(c), ConfigError);
}

TEST(ConfigFile, LoadFromDisk) {
  const fs::path p = scratch("c.cfg");
  std::ofstream(p) << "theta_rho=0.5\n";
  EXPECT_EQ(load_config(p.string()).theta_rho, 0.5);
  EXPECT_THROW(load_config((p.string() + ".missing")), ConfigError);
}

TEST(Assignment, AppliesAndRejects) {
  SolverConfig c;
  apply_assignment(c, "rho_init=0.25");
  EXPECT_EQ(c.rho_init, 0.25);
  EXPECT_THROW(apply_assignment(c, "rho_init"), ConfigError);
  EXPECT_THROW(apply_setting(c, "nope", "1"), ConfigError);
}

TEST(Csv, RoundTripIsExact) {
  SuiteReport rep;
  rep.rows.push_back({"hs11", "optimal", 8, 9, -8.498465215154027,
                      3.2531956950521135e-07, 1.49e-05, 0.1 + 0.2});
  rep.rows.push_back({"hs11_inf", "infeasible_stationary", 41, 42,
                      -7.9999999999199609, 1.0, 0.0, 3.5977180050243216e-59});
  rep.rows.push_back({"hs21", "line_search_failure", 0, 61, 1e300, 0.0, 0.0,
                      1.0});
  std::stringstream io;
  write_csv(io, rep);
  const std::string text = io.str();
  EXPECT_EQ(text.rfind("problem,status,iters,nf,f,v,kkt,final_rho\n", 0), 0u);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  const SuiteReport back = read_csv(io);
  ASSERT_EQ(back.rows.size(), rep.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i], rep.rows[i]);
  }
}

TEST(Csv, SuccessClassification) {
  SuiteReport rep;
  rep.rows.push_back({"hs28", "optimal", 2, 3, 0, 0, 0, 1});
  rep.rows.push_back({"hs28_inf", "optimal", 2, 3, 0, 0, 0, 1});
  rep.rows.push_back({"hs28_inf", "infeasible_stationary", 2, 3, 0, 1, 0, 1});
  rep.rows.push_back({"hs35", "infeasible_stationary", 2, 3, 0, 1, 0, 1});
  EXPECT_EQ(rep.succeeded(), 2);
  EXPECT_EQ(rep.failed(), 2);
  EXPECT_DOUBLE_EQ(rep.success_rate(), 0.5);
}

TEST(Suite, EmptySelection) {
  const SuiteReport rep = run_suite({}, SolverConfig{});
  EXPECT_TRUE(rep.rows.empty());
  EXPECT_EQ(rep.failed(), 0);
}

TEST(Suite, UnknownProblemBecomesFailRow) {
  const SuiteReport rep = run_suite({"hs28", "zz"}, SolverConfig{});
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_TRUE(rep.rows[0].success());
  EXPECT_FALSE(rep.rows[1].success());
}

TEST(Suite, DeterministicAcrossRunsAndThreads) {
  const std::vector<std::string> names = {"hs11", "hs28", "hs61", "hs43_inf"};
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, run_suite(names, SolverConfig{}, 1));
  write_csv(b, run_suite(names, SolverConfig{}, 3));
  EXPECT_EQ(a.str(), b.str());
}

TEST(Suite, SetSelection) {
  EXPECT_EQ(suite_problems(SuiteSet::Feasible), feasible_problem_names());
  EXPECT_EQ(suite_problems(SuiteSet::All).size(),
            2 * feasible_problem_names().size());
  EXPECT_EQ(parse_suite_set("infeasible"), SuiteSet::Infeasible);
  EXPECT_THROW(parse_suite_set("most"), std::invalid_argument);
}

std::vector<std::pair<int, double>> read_rho(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::pair<int, double>> out;
  int k = 0;
  double rho = 0.0;
  while (in >> k >> rho) {
    out.emplace_back(k, rho);
  }
  return out;
}

TEST(RunSingle, Hs28TrajectoryIsConstant) {
  const fs::path dir = scratch("trace28");
  fs::create_directories(dir);
  const SolveResult r = run_single("hs28", SolverConfig{}, dir.string());
  const auto traj = read_rho(dir / "hs28.rho");
  ASSERT_EQ(traj.size(), 2u);
  for (const auto& [k, rho] : traj) {
    EXPECT_EQ(rho, 1.0);
  }
  EXPECT_TRUE(fs::exists(dir / "hs28.trace"));
  EXPECT_EQ(r.outer_iters, 2);
}

TEST(RunSingle, Hs61TrajectoryFile) {
  const fs::path dir = scratch("trace61");
  fs::create_directories(dir);
  const SolveResult r = run_single("hs61", SolverConfig{}, dir.string());
  const auto traj = read_rho(dir / "hs61.rho");
  ASSERT_FALSE(traj.empty());
  EXPECT_EQ(traj.back().second, r.rho_final);
  // reference run ends at 0.338698; the tail of the trajectory depends on
  // tie-breaking in the subproblem solver
  EXPECT_GE(traj.back().second, 0.338698 / 3.0);
  EXPECT_LE(traj.back().second, std::min(1.0, 3.0 * 0.338698));
}

TEST(RunSingle, UnknownProblem) {
  EXPECT_THROW(run_single("bogus", SolverConfig{}), UnknownProblemError);
}

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(DUSTSQP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("solve hs28"), 0);
  EXPECT_EQ(run_cli("solve hs11_inf"), 0);
  EXPECT_EQ(run_cli("solve bogus"), 2);
  EXPECT_EQ(run_cli("solve hs28 --set beta_v=0.9"), 2);
  EXPECT_EQ(run_cli("solve hs43 --set max_outer=1"), 1);
  EXPECT_EQ(run_cli("suite feasible --filter hs2"), 0);
  EXPECT_EQ(run_cli("suite feasible --filter nothing-matches"), 0);
  EXPECT_EQ(run_cli("suite sometimes"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
}

TEST(Cli, SuiteWritesCsv) {
  const fs::path out = scratch("suite.csv");
  ASSERT_EQ(run_cli("suite feasible --filter hs5 --jobs 2 --out " +
                    out.string()),
            0);
  std::ifstream in(out);
  const SuiteReport rep = read_csv(in);
  ASSERT_EQ(rep.rows.size(), 2u);
  EXPECT_EQ(rep.rows[0].problem, "hs51");
  EXPECT_EQ(rep.rows[1].problem, "hs52");
}

TEST(Cli, TraceDirectory) {
  const fs::path dir = scratch("cli_trace");
  fs::remove_all(dir);
  fs::create_directories(dir);
  ASSERT_EQ(run_cli("solve hs11 --trace " + dir.string()), 0);
  EXPECT_TRUE(fs::exists(dir / "hs11.rho"));
  EXPECT_TRUE(fs::exists(dir / "hs11.trace"));
}

}  // namespace
}  // namespace dustsqp
