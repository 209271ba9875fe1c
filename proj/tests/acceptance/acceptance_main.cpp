// Acceptance checks for the solver. Prints one PASS/FAIL line per criterion
// and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dustsqp/hs_registry.hpp"
#include "dustsqp/sqp.hpp"
#include "dustsqp/suite.hpp"
#include "support/test_support.hpp"

namespace {

using namespace dustsqp;
using Clock = std::chrono::steady_clock;

struct Reference {
  const char* name;
  int iters;
  double f;
  double rho;
};

// Reference feasible results (default parameters).
const std::vector<Reference> kFeasible = {
    {"hs11", 8, -8.498465, 0.218726},    {"hs21", 2, -99.96, 1.0},
    {"hs28", 2, 1.117108e-13, 1.0},      {"hs35", 1, 1.111111e-01, 1.0},
    {"hs43", 15, -43.9999, 0.324783},    {"hs48", 8, 2.516051e-19, 1.0},
    {"hs51", 2, 6.496671e-17, 1.0},      {"hs52", 22, 5.326608, 0.101755},
    {"hs61", 13, -143.6461, 0.338698},   {"hs76", 8, -4.681819, 0.387420},
    {"hs100", 11, 680.6301, 0.540664},
};

// Reference final violation of the infeasible variants.
const std::map<std::string, double> kInfeasibleV = {
    {"hs11_inf", 1.0},      {"hs14_inf", 1.000002}, {"hs21_inf", 1.0},
    {"hs28_inf", 1.0},      {"hs32_inf", 1.0},      {"hs35_inf", 1.0},
    {"hs41_inf", 1.0},      {"hs43_inf", 1.0},      {"hs48_inf", 1.000002},
    {"hs51_inf", 1.000006}, {"hs52_inf", 1.000006}, {"hs61_inf", 2.750853},
    {"hs76_inf", 1.0},      {"hs100_inf", 1.0},     {"hs113_inf", 1.0},
};

int failures = 0;

void report(int id, const std::string& title, bool ok,
            const std::string& detail) {
  std::printf("%s %d %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) {
    ++failures;
  }
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct Run {
  std::string name;
  SolveResult result;
};

std::vector<Run> solve_all(const std::vector<std::string>& names,
                           const SolverConfig& cfg, double& secs) {
  const auto t0 = Clock::now();
  std::vector<Run> runs;
  for (const auto& n : names) {
    runs.push_back({n, sqp_solve(get_problem(n), cfg)});
  }
  secs = seconds_since(t0);
  return runs;
}

void criterion_feasible(const std::vector<Run>& runs, double secs) {
  std::ostringstream bad;
  for (std::size_t i = 0; i < kFeasible.size(); ++i) {
    const Reference& ref = kFeasible[i];
    const SolveResult& r = runs[i].result;
    const double ftol = std::max(1e-4, 1e-4 * std::abs(ref.f));
    const bool ok = r.status == SolveStatus::Optimal &&
                    std::abs(r.f_final - ref.f) <= ftol &&
                    r.v_inf_final <= 1e-5 && r.eps_opt <= 1e-4 &&
                    r.outer_iters <= 5 * ref.iters &&
                    r.rho_final >= ref.rho / 3.0 &&
                    r.rho_final <= 3.0 * ref.rho;
    if (!ok) {
      bad << ' ' << ref.name << "(" << to_string(r.status) << " f=" << r.f_final
          << " it=" << r.outer_iters << " rho=" << r.rho_final << ")";
    }
  }
  const bool ok = bad.str().empty() && secs < 10.0;
  report(1, "feasible regression", ok,
         std::to_string(kFeasible.size()) + " problems in " +
             fmt("%.2f s", secs) + bad.str());
}

void criterion_infeasible(const std::vector<Run>& runs, double secs) {
  std::ostringstream bad;
  for (const Run& run : runs) {
    const SolveResult& r = run.result;
    const double want = kInfeasibleV.at(run.name);
    const bool ok = r.status == SolveStatus::InfeasibleStationary &&
                    std::abs(r.v_final - want) <= 1e-3 && r.eps_fea <= 1e-4;
    if (!ok) {
      bad << ' ' << run.name << "(" << to_string(r.status)
          << " v=" << r.v_final << " eps_fea=" << r.eps_fea << ")";
    }
  }
  const bool ok = bad.str().empty() && secs < 10.0;
  report(2, "infeasible regression", ok,
         std::to_string(runs.size()) + " problems in " + fmt("%.2f s", secs) +
             bad.str());
}

void criterion_trajectories(const std::vector<Run>& runs) {
  std::ostringstream detail;
  bool ok = true;
  for (const char* name : {"hs11", "hs43", "hs61"}) {
    const auto it = std::find_if(runs.begin(), runs.end(),
                                 [&](const Run& r) { return r.name == name; });
    const auto ref = std::find_if(
        kFeasible.begin(), kFeasible.end(),
        [&](const Reference& r) { return std::string(r.name) == name; });
    const auto& traj = it->result.rho_trajectory;
    bool mono = !traj.empty();
    for (std::size_t k = 1; k < traj.size(); ++k) {
      mono = mono && traj[k].second <= traj[k - 1].second;
    }
    const double last = traj.empty() ? -1.0 : traj.back().second;
    const bool in_band =
        last >= ref->rho / 3.0 && last <= std::min(1.0, 3.0 * ref->rho);
    ok = ok && mono && in_band;
    detail << ' ' << name << " final=" << fmt("%.6f", last)
           << (mono ? "" : " (not monotone)");
  }
  report(3, "rho trajectories", ok, detail.str());
}

void criterion_weak_duality(const std::vector<Run>& runs) {
  double worst = -1e300;
  double worst_direct = -1e300;
  long steps = 0;
  for (const Run& run : runs) {
    for (const IterationRecord& rec : run.result.trace) {
      worst = std::max(worst, rec.weak_duality_excess);
      worst_direct = std::max(worst_direct, rec.weak_duality_excess_direct);
      ++steps;
    }
  }
  report(4, "weak duality", worst <= 1e-9,
         "max D - J over " + std::to_string(steps) + " subproblems = " +
             fmt("%.3e", worst) + " (plain difference " +
             fmt("%.3e", worst_direct) + ")");
}

void criterion_qp_oracle() {
  std::mt19937_64 rng(20240917);
  double worst_dual = 0.0;
  double worst_primal = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 4);
    const int m_eq = static_cast<int>(rng() % (m + 1));
    const bool low_rank = t % 2 == 1;
    const double rho = t % 4 < 2 ? 1.0 : 0.0;
    const SubproblemData sd = testing::random_subproblem(n, m, m_eq, rng);
    const HessianModel h =
        low_rank ? testing::random_low_rank(n, t % 3, (t / 3) % 3, rng, 1.0)
                 : HessianModel::dense(testing::random_spd(n, rng),
                                       testing::random_spd(n, rng), 1.0);
    const Matrix hd = rho > 0.0 ? h.dense_matrix() : h.dense_h0();
    const DualBlock block = testing::converge_block(sd, h, rho);
    const double dual = testing::dual_oracle(rho, sd, hd).value;
    const double primal = testing::primal_oracle(rho, sd, hd).value;
    worst_dual = std::max(worst_dual, std::abs(block.objective() - dual));
    worst_primal = std::max(
        worst_primal,
        std::abs(testing::primal_value(block.step(), rho, sd, hd) - primal));
  }
  report(5, "QP oracle equivalence", worst_dual <= 1e-7 && worst_primal <= 1e-6,
         "200 instances, max dual gap " + fmt("%.2e", worst_dual) +
             ", max primal gap " + fmt("%.2e", worst_primal));
}

void criterion_dust_finiteness(const std::vector<Run>& runs,
                               const SolverConfig& cfg) {
  long subproblems = 0;
  long total_reductions = 0;
  int worst_tail = 1 << 30;
  int longest = 0;
  std::ostringstream bad;
  for (const Run& run : runs) {
    const NlpProblem p = get_problem(run.name);
    Evaluator ev(p);
    for (const IterationRecord& rec : run.result.trace) {
      const SubproblemData sd = SubproblemData::build(
          ev.grad_f(rec.x), ev.jac_c(rec.x), ev.c(rec.x), p.m_eq);
      const HessianModel h =
          build_exact_hessian(ev, rec.x, rec.eta, rec.rho_prev, cfg);
      DualIterate warm;
      warm.zeta = Vector(sd.rows());
      for (int i = 0; i < sd.rows(); ++i) {
        warm.zeta[i] = rec.eta[sd.source_row[i]];
      }
      DustOptions opts = dust_options(cfg);
      opts.run_to_convergence = true;
      opts.max_sweeps = 200000;
      const SubproblemResult sub =
          solve_subproblem(sd, h, rec.rho_prev, rec.omega, warm, opts);
      const int last =
          sub.reduction_sweeps.empty() ? 0 : sub.reduction_sweeps.back();
      const int tail = sub.inner_iters - last;
      worst_tail = std::min(worst_tail, tail);
      total_reductions += sub.rho_reductions;
      ++subproblems;
      longest = std::max(longest, sub.inner_iters);
      if (tail < 50 || !sub.converged) {
        bad << ' ' << run.name << "@k=" << rec.k << "(tail=" << tail
            << (sub.converged ? "" : ", not converged") << ")";
      }
    }
  }
  report(6, "DUST finiteness", bad.str().empty(),
         std::to_string(subproblems) + " subproblems, " +
             std::to_string(total_reductions) +
             " reductions, shortest quiet tail " + std::to_string(worst_tail) +
             " sweeps, longest solve " + std::to_string(longest) + " sweeps" +
             bad.str());
}

void criterion_psst(const std::vector<Run>& runs, const SolverConfig& cfg) {
  const double beta_l = cfg.effective_beta_l();
  double worst = 1e300;
  long steps = 0;
  for (const Run& run : runs) {
    for (const IterationRecord& rec : run.result.trace) {
      if (rec.null_step) {
        continue;
      }
      worst = std::min(worst, rec.delta_l_rho + rec.omega -
                                  beta_l * (rec.delta_l0 + rec.omega));
      ++steps;
    }
  }
  const double rho = psst_update(0.405, 1.0, 2.0, 1.0, 0.01, 0.378);
  const bool ok = worst >= -1e-12 && std::abs(rho - 0.622 * 1.01 / 2.5) <= 1e-7;
  report(7, "PSST contract", ok,
         std::to_string(steps) + " accepted steps, min slack " +
             fmt("%.3e", worst) + ", worked example rho " +
             fmt("%.7f", rho));
}

void criterion_monotonicity(const std::vector<Run>& runs,
                            const SolverConfig& cfg) {
  double worst = 1e300;
  long steps = 0;
  for (const Run& run : runs) {
    const auto& tr = run.result.trace;
    if (tr.empty()) {
      continue;
    }
    double f_low = run.result.f_final;
    for (const IterationRecord& rec : tr) {
      f_low = std::min(f_low, rec.f);
    }
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const IterationRecord& rec = tr[k];
      const double f_next =
          k + 1 < tr.size() ? tr[k + 1].f : run.result.f_final;
      const double v_next =
          k + 1 < tr.size() ? tr[k + 1].v : run.result.v_final;
      const double rho_next =
          k + 1 < tr.size() ? tr[k + 1].rho : run.result.rho_final;
      const double now = rec.rho * (rec.f - f_low) + rec.v;
      const double next = rho_next * (f_next - f_low) + v_next;
      const double slack =
          now - cfg.theta_alpha * rec.alpha * rec.delta_l_rho - next;
      worst = std::min(worst, slack + 1e-10);
      ++steps;
    }
  }
  report(8, "shifted penalty monotonicity", worst >= 0.0,
         std::to_string(steps) + " steps, min slack " +
             fmt("%.3e", worst - 1e-10));
}

void criterion_hessian() {
  std::mt19937_64 rng(77);
  double sm = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + t % 12;
    const HessianModel h = testing::random_low_rank(n, t % 5, (t / 5) % 4, rng);
    const Vector z = testing::random_vector(n, rng);
    sm = std::max(sm, (h.apply(h.inverse_apply(z)) - z).norm() / z.norm());
    sm = std::max(sm,
                  (h.apply_h0(h.inverse_apply_h0(z)) - z).norm() / z.norm());
  }
  double resc = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 3 + t % 8;
    const double rho = 0.5 + 0.01 * t;
    const HessianModel h =
        testing::random_low_rank(n, 1 + t % 3, 1 + (t / 3) % 3, rng, rho);
    const Matrix h0 = h.dense_h0();
    const Matrix hf = (h.dense_matrix() - h0) / rho;
    const double rb = rho * (0.05 + 0.9 * (t % 10) / 10.0);
    const HessianModel r = h.rescale_rho(rb);
    const Matrix direct = rb * hf + h0;
    const Vector z = testing::random_vector(n, rng);
    const Vector want = direct.llt().solve(z);
    resc = std::max(resc, (r.inverse_apply(z) - want).norm() / want.norm());
    resc = std::max(resc,
                    (r.apply(z) - direct * z).norm() / (direct * z).norm());
  }
  bool mod_ok = true;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 7;
    Matrix a = testing::random_matrix(n, n, rng) * std::pow(10.0, 3 * U(rng));
    a = 0.5 * (a + a.transpose()).eval();
    const double tau = std::pow(10.0, -2 - 6 * U(rng));
    const double tc = std::pow(10.0, 1 + 6 * U(rng));
    const Matrix m = build_exact_modified(a, tau, tc);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    mod_ok = mod_ok && lo >= tau - 1e-12 && hi / lo <= tc * (1 + 1e-9);
  }
  report(9, "Hessian algebra", sm <= 1e-10 && resc <= 1e-9 && mod_ok,
         "inverse residual " + fmt("%.2e", sm) + ", rescale mismatch " +
             fmt("%.2e", resc) + ", modification " +
             (mod_ok ? "ok" : "violated"));
}

void criterion_derivatives() {
  double worst = 0.0;
  std::string arg;
  for (const auto& name : problem_names()) {
    const NlpProblem p = get_problem(name);
    const double e = check_derivatives(p, p.x0, 1e-6);
    if (e > worst) {
      worst = e;
      arg = name;
    }
  }
  report(10, "derivative checks", worst <= 1e-5,
         std::to_string(problem_names().size()) + " problems, worst " +
             fmt("%.2e", worst) + " (" + arg + ")");
}

void criterion_sensitivity() {
  std::ostringstream detail;
  bool ok = true;
  for (double beta_phi : {0.5, 0.99}) {
    SolverConfig cfg;
    cfg.beta_phi = beta_phi;
    const SuiteReport rep = run_suite(feasible_problem_names(), cfg, 4);
    const double rate = rep.success_rate();
    ok = ok && rate >= 0.9;
    detail << " beta_phi=" << beta_phi << ": " << rep.succeeded() << "/"
           << rep.rows.size();
  }
  report(11, "parameter sensitivity", ok, detail.str());
}

void criterion_large_lbfgs() {
  SolverConfig cfg;
  cfg.hessian = HessianMode::Lbfgs;
  const auto t0 = Clock::now();
  const NlpProblem p = get_problem("synth500");
  const SolveResult r = sqp_solve(p, cfg);
  const double secs = seconds_since(t0);
  const bool ok = r.status == SolveStatus::Optimal && secs < 60.0 &&
                  p.n == 500 && p.m == 300;
  report(12, "limited-memory medium problem", ok,
         "n=500 m=300 " + to_string(r.status) + " in " +
             std::to_string(r.outer_iters) + " iterations, " +
             fmt("%.2f s", secs));
}

}  // namespace

int main() {
  const SolverConfig cfg;
  std::vector<std::string> feasible;
  for (const Reference& r : kFeasible) {
    feasible.push_back(r.name);
  }
  std::vector<std::string> infeasible;
  for (const auto& name : infeasible_problem_names()) {
    infeasible.push_back(name);
  }

  double t_fea = 0.0;
  double t_inf = 0.0;
  const std::vector<Run> fea = solve_all(feasible, cfg, t_fea);
  const std::vector<Run> inf = solve_all(infeasible, cfg, t_inf);
  std::vector<Run> all = fea;
  all.insert(all.end(), inf.begin(), inf.end());

  criterion_feasible(fea, t_fea);
  criterion_infeasible(inf, t_inf);
  criterion_trajectories(fea);
  criterion_weak_duality(all);
  criterion_qp_oracle();
  criterion_dust_finiteness(all, cfg);
  criterion_psst(all, cfg);
  criterion_monotonicity(all, cfg);
  criterion_hessian();
  criterion_derivatives();
  criterion_sensitivity();
  criterion_large_lbfgs();

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
