#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dustsqp/sqp.hpp"

namespace dustsqp {

enum class SuiteSet { Feasible, Infeasible, All };

SuiteSet parse_suite_set(const std::string& s);
std::vector<std::string> suite_problems(SuiteSet set);

struct SuiteRow {
  std::string problem;
  std::string status;
  int iters = 0;
  long nf = 0;
  double f = 0.0;
  double v = 0.0;
  double kkt = 0.0;
  double final_rho = 0.0;

  /// Infeasible-variant rows succeed on infeasible_stationary, others on
  /// optimal.
  bool success() const;
  bool operator==(const SuiteRow&) const = default;
};

struct SuiteReport {
  std::vector<SuiteRow> rows;

  int succeeded() const;
  int failed() const;
  double success_rate() const;
};

SuiteRow make_row(const std::string& problem, const SolveResult& result);

/// Solves every named problem; failures (including exceptions) become rows.
SuiteReport run_suite(const std::vector<std::string>& names,
                      const SolverConfig& config, int jobs = 1);

void write_csv(std::ostream& out, const SuiteReport& report);
SuiteReport read_csv(std::istream& in);

/// Per-iteration table of a solve.
void write_trace(std::ostream& out, const SolveResult& result);
/// Two columns: k and rho_k.
void write_rho_trajectory(std::ostream& out, const SolveResult& result);

/**
 * Solves one registered problem. With a trace directory, writes
 * <name>.trace and <name>.rho there.
 */
SolveResult run_single(const std::string& name, const SolverConfig& config,
                       const std::optional<std::string>& trace_dir = {});

}  // namespace dustsqp
