#include "dustsqp/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "dustsqp/hs_registry.hpp"

namespace dustsqp {
namespace {

constexpr const char* kHeader = "problem,status,iters,nf,f,v,kkt,final_rho";

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool is_infeasible_variant(const std::string& name) {
  return name.size() > 4 && name.compare(name.size() - 4, 4, "_inf") == 0;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) {
    out.push_back(field);
  }
  if (!line.empty() && line.back() == sep) {
    out.emplace_back();
  }
  return out;
}

}  // namespace

SuiteSet parse_suite_set(const std::string& s) {
  if (s == "feasible") {
    return SuiteSet::Feasible;
  }
  if (s == "infeasible") {
    return SuiteSet::Infeasible;
  }
  if (s == "all") {
    return SuiteSet::All;
  }
  throw std::invalid_argument("unknown suite '" + s +
                              "' (expected feasible, infeasible or all)");
}

std::vector<std::string> suite_problems(SuiteSet set) {
  std::vector<std::string> out;
  if (set != SuiteSet::Infeasible) {
    out = feasible_problem_names();
  }
  if (set != SuiteSet::Feasible) {
    for (auto& name : infeasible_problem_names()) {
      out.push_back(std::move(name));
    }
  }
  return out;
}

bool SuiteRow::success() const {
  return status == to_string(is_infeasible_variant(problem)
                                 ? SolveStatus::InfeasibleStationary
                                 : SolveStatus::Optimal);
}

int SuiteReport::succeeded() const {
  int n = 0;
  for (const auto& row : rows) {
    n += row.success() ? 1 : 0;
  }
  return n;
}

int SuiteReport::failed() const {
  return static_cast<int>(rows.size()) - succeeded();
}

double SuiteReport::success_rate() const {
  return rows.empty() ? 1.0
                      : static_cast<double>(succeeded()) /
                            static_cast<double>(rows.size());
}

SuiteRow make_row(const std::string& problem, const SolveResult& result) {
  SuiteRow row;
  row.problem = problem;
  row.status = to_string(result.status);
  row.iters = result.outer_iters;
  row.nf = result.n_f;
  row.f = result.f_final;
  row.v = result.v_final;
  row.kkt = result.status == SolveStatus::InfeasibleStationary
                ? result.eps_fea
                : result.eps_opt;
  row.final_rho = result.rho_final;
  return row;
}

SuiteReport run_suite(const std::vector<std::string>& names,
                      const SolverConfig& config, int jobs) {
  SuiteReport report;
  report.rows.resize(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      try {
        report.rows[i] = make_row(names[i], sqp_solve(get_problem(names[i]),
                                                      config));
      } catch (const std::exception&) {
        SuiteRow row;
        row.problem = names[i];
        row.status = "error";
        report.rows[i] = row;
      }
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(names.size())));
  if (threads <= 1) {
    worker();
    return report;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back(worker);
  }
  for (auto& th : pool) {
    th.join();
  }
  return report;
}

void write_csv(std::ostream& out, const SuiteReport& report) {
  out << kHeader << '\n';
  for (const auto& r : report.rows) {
    out << r.problem << ',' << r.status << ',' << r.iters << ',' << r.nf << ','
        << fmt(r.f) << ',' << fmt(r.v) << ',' << fmt(r.kkt) << ','
        << fmt(r.final_rho) << '\n';
  }
  out << "# succeeded=" << report.succeeded() << " failed=" << report.failed()
      << " rate=" << fmt(report.success_rate()) << '\n';
}

SuiteReport read_csv(std::istream& in) {
  SuiteReport report;
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::invalid_argument("CSV header mismatch");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') {
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 8) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) +
                                  ": expected 8 fields");
    }
    SuiteRow r;
    r.problem = fields[0];
    r.status = fields[1];
    r.iters = std::stoi(fields[2]);
    r.nf = std::stol(fields[3]);
    r.f = std::stod(fields[4]);
    r.v = std::stod(fields[5]);
    r.kkt = std::stod(fields[6]);
    r.final_rho = std::stod(fields[7]);
    report.rows.push_back(std::move(r));
  }
  return report;
}

void write_trace(std::ostream& out, const SolveResult& result) {
  out << "k f v v_inf eps_opt eps_fea rho_prev rho_tilde rho omega alpha "
         "delta_l0 delta_l_rho delta_J sweeps reductions null_retries "
         "backtracks\n";
  for (const auto& r : result.trace) {
    out << r.k << ' ' << fmt(r.f) << ' ' << fmt(r.v) << ' ' << fmt(r.v_inf)
        << ' ' << fmt(r.eps_opt) << ' ' << fmt(r.eps_fea) << ' '
        << fmt(r.rho_prev) << ' ' << fmt(r.rho_tilde) << ' ' << fmt(r.rho)
        << ' ' << fmt(r.omega) << ' ' << fmt(r.alpha) << ' '
        << fmt(r.delta_l0) << ' ' << fmt(r.delta_l_rho) << ' '
        << fmt(r.delta_J) << ' ' << r.inner_sweeps << ' ' << r.rho_reductions
        << ' ' << r.null_retries << ' ' << r.backtracks << '\n';
  }
}

void write_rho_trajectory(std::ostream& out, const SolveResult& result) {
  for (const auto& [k, rho] : result.rho_trajectory) {
    out << k << ' ' << fmt(rho) << '\n';
  }
}

SolveResult run_single(const std::string& name, const SolverConfig& config,
                       const std::optional<std::string>& trace_dir) {
  const NlpProblem problem = get_problem(name);
  SolveResult result = sqp_solve(problem, config);
  if (trace_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(*trace_dir);
    fs::create_directories(dir);
    std::ofstream trace(dir / (name + ".trace"));
    write_trace(trace, result);
    std::ofstream rho(dir / (name + ".rho"));
    write_rho_trajectory(rho, result);
    if (!trace || !rho) {
      throw std::runtime_error("cannot write trace files in " + dir.string());
    }
  }
  return result;
}

}  // namespace dustsqp
