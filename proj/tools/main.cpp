// dustsqp command-line front end.
//
//   dustsqp solve <name> [--config FILE] [--set key=value]... [--trace DIR]
//   dustsqp suite <feasible|infeasible|all> [--config FILE] [--jobs N]
//                 [--out FILE.csv] [--filter SUBSTR]
//
// Without --out the suite CSV goes to stdout; with it, a table is printed.
// Exit codes: 0 success, 1 failed rows or a non-successful solve, 2 usage or
// configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dustsqp/config.hpp"
#include "dustsqp/hs_registry.hpp"
#include "dustsqp/suite.hpp"

namespace {

constexpr int kUsageError = 2;

dustsqp::SolverConfig make_config(const std::string& path,
                                  const std::vector<std::string>& sets) {
  dustsqp::SolverConfig config;
  if (!path.empty()) {
    config = dustsqp::load_config(path);
  }
  for (const auto& s : sets) {
    dustsqp::apply_assignment(config, s);
  }
  config.validate();
  return config;
}

bool expected_success(const std::string& name, dustsqp::SolveStatus st) {
  const bool inf = name.size() > 4 && name.ends_with("_inf");
  return st == (inf ? dustsqp::SolveStatus::InfeasibleStationary
                    : dustsqp::SolveStatus::Optimal);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penalty SQP solver with dynamic penalty updates"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> sets;

  auto* solve = app.add_subcommand("solve", "solve one registered problem");
  std::string name;
  std::string trace_dir;
  solve->add_option("name", name, "problem name, e.g. hs28 or hs28_inf")
      ->required();
  solve->add_option("--config", config_path, "key=value config file");
  solve->add_option("--set", sets, "override one setting, key=value");
  solve->add_option("--trace", trace_dir,
                    "write <name>.trace and <name>.rho into DIR");

  auto* suite = app.add_subcommand("suite", "run a problem set");
  std::string set_name;
  int jobs = 1;
  std::string out_path;
  std::string filter;
  suite->add_option("problem_set", set_name, "feasible, infeasible or all")
      ->required()
      ->check(CLI::IsMember({"feasible", "infeasible", "all"}));
  suite->add_option("--config", config_path, "key=value config file");
  suite->add_option("--set", sets, "override one setting, key=value");
  suite->add_option("--jobs", jobs, "parallel solves")
      ->check(CLI::PositiveNumber);
  suite->add_option("--out", out_path, "CSV output file");
  suite->add_option("--filter", filter,
                    "only problems whose name contains this string");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  dustsqp::SolverConfig config;
  try {
    config = make_config(config_path, sets);
  } catch (const dustsqp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  }

  if (*solve) {
    dustsqp::SolveResult r;
    try {
      r = dustsqp::run_single(
          name, config,
          trace_dir.empty() ? std::nullopt : std::optional(trace_dir));
    } catch (const dustsqp::UnknownProblemError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kUsageError;
    }
    std::printf("problem     %s\n", name.c_str());
    std::printf("status      %s\n", dustsqp::to_string(r.status).c_str());
    std::printf("iterations  %d\n", r.outer_iters);
    std::printf("f evals     %ld\n", r.n_f);
    std::printf("f           %.10e\n", r.f_final);
    std::printf("v           %.10e\n", r.v_final);
    std::printf("v_inf       %.3e\n", r.v_inf_final);
    std::printf("eps_opt     %.3e\n", r.eps_opt);
    std::printf("eps_fea     %.3e\n", r.eps_fea);
    std::printf("final rho   %.6f\n", r.rho_final);
    if (!r.message.empty()) {
      std::printf("note        %s\n", r.message.c_str());
    }
    return expected_success(name, r.status) ? 0 : 1;
  }

  std::vector<std::string> names;
  for (auto& n : dustsqp::suite_problems(dustsqp::parse_suite_set(set_name))) {
    if (filter.empty() || n.find(filter) != std::string::npos) {
      names.push_back(std::move(n));
    }
  }
  const dustsqp::SuiteReport report = dustsqp::run_suite(names, config, jobs);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kUsageError;
    }
    dustsqp::write_csv(out, report);
  } else {
    dustsqp::write_csv(std::cout, report);
    return report.failed() == 0 ? 0 : 1;
  }
  std::printf("%-10s %-22s %5s %5s %16s %12s %10s %10s\n", "problem",
              "status", "iter", "#f", "f", "v", "kkt", "rho");
  for (const auto& row : report.rows) {
    std::printf("%-10s %-22s %5d %5ld %16.8e %12.4e %10.2e %10.6f\n",
                row.problem.c_str(), row.status.c_str(), row.iters, row.nf,
                row.f, row.v, row.kkt, row.final_rho);
  }
  std::printf("succeeded %d of %zu\n", report.succeeded(), report.rows.size());
  return report.failed() == 0 ? 0 : 1;
}
