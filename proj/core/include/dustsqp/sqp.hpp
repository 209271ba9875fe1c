#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dustsqp/dust.hpp"
#include "dustsqp/nlp.hpp"

namespace dustsqp {

enum class HessianMode { Exact, Lbfgs };

struct SolverConfig {
  double gamma_ls = 0.5;
  double theta_rho = 0.9;
  double theta_omega = 0.7;
  double theta_alpha = 1e-4;
  double beta_v = 0.1;
  double beta_phi = 0.7;
  /// <= 0 means 0.6 * beta_phi * (1 - beta_v).
  double beta_l = 0.0;
  double rho_init = 1.0;
  double omega_init = 1e-2;
  double tol_v = 1e-5;
  double tol_opt = 1e-4;
  double tol_fea = 1e-4;
  int max_outer = 200;
  long max_inner_sweeps = 100000;
  int max_null_retries = 10;
  int max_backtracks = 60;
  double tau_eig = 1e-4;
  double t_cond = 1e6;
  HessianMode hessian = HessianMode::Exact;
  int lbfgs_memory = 10;
  bool reuse_zeta_for_lambda = false;
  bool shuffle_sweeps = false;
  unsigned long seed = 0;
  bool record_inner_trace = false;

  double effective_beta_l() const;
  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

enum class SolveStatus {
  Optimal,
  InfeasibleStationary,
  IterationLimit,
  LineSearchFailure,
  NumericalFailure,
};

std::string to_string(SolveStatus s);
SolveStatus parse_status(const std::string& s);

struct IterationRecord {
  int k = 0;
  Vector x;     // iterate the step starts from
  Vector eta;   // multipliers used to build the model at x
  double f = 0.0;
  double v = 0.0;
  double v_inf = 0.0;
  double eps_opt = 0.0;
  double eps_fea = 0.0;
  double rho_prev = 0.0;   // rho entering the subproblem
  double rho_tilde = 0.0;  // rho after DUST
  double rho = 0.0;        // rho after PSST
  double omega = 0.0;
  double alpha = 0.0;
  double delta_l0 = 0.0;
  double delta_l_rho = 0.0;  // at rho
  double delta_J = 0.0;
  double phi_before = 0.0;   // phi(x, rho)
  double phi_after = 0.0;    // phi(x + alpha d, rho)
  int inner_sweeps = 0;
  int rho_reductions = 0;
  int null_retries = 0;
  int backtracks = 0;
  bool null_step = false;
  bool hit_cap = false;
  bool psst_fallback = false;
  double weak_duality_excess = 0.0;
  double weak_duality_excess_direct = 0.0;
  double max_drift = 0.0;
  std::vector<SweepTrace> inner;
};

struct SolveResult {
  SolveStatus status = SolveStatus::IterationLimit;
  Vector x_final;
  double f_final = 0.0;
  double v_final = 0.0;
  double v_inf_final = 0.0;
  double eps_opt = 0.0;
  double eps_fea = 0.0;
  double rho_final = 0.0;
  double omega_final = 0.0;
  int outer_iters = 0;
  long n_f = 0;
  EvalCounters counters;
  std::vector<std::pair<int, double>> rho_trajectory;
  std::vector<IterationRecord> trace;
  std::string message;
};

/// Rho after the posterior check, from the scalar ingredients.
double psst_update(double rho_tilde, double delta_l0, double g_dot_d,
                   double d_h_d, double omega, double beta_l);

double psst_update(double rho_tilde, const Vector& d, const SubproblemData& sd,
                   const HessianModel& h, double omega, double beta_l);

struct LineSearchResult {
  double alpha = 1.0;
  int trials = 0;
  bool success = false;
  double phi_new = 0.0;
  Vector x_new;
  double f_new = 0.0;
  Vector c_new;
};

/**
 * Backtracking on phi(., rho): the largest gamma^t passing
 * phi(x + a d) - phi(x) <= -theta_alpha * a * delta_l_rho.
 */
LineSearchResult line_search(Evaluator& ev, const Vector& x, const Vector& d,
                             double rho, double delta_l_rho, double phi_x,
                             double gamma_ls, double theta_alpha,
                             int max_trials);

enum class Termination { Continue, Optimal, InfeasibleStationary };

Termination termination_check(const KktReport& opt, const KktReport& fea,
                              double tol_v, double tol_opt, double tol_fea);

/// eta_opt drives eps_opt, eta_fea drives eps_fea.
Termination termination_check(const NlpProblem& p, const Vector& x,
                              const Vector& eta_opt, const Vector& eta_fea,
                              double tol_v, double tol_opt, double tol_fea);

/// Dense model at x: modified objective Hessian and modified
/// sum_i eta_i hess c_i.
HessianModel build_exact_hessian(Evaluator& ev, const Vector& x,
                                 const Vector& eta, double rho,
                                 const SolverConfig& config);

DustOptions dust_options(const SolverConfig& config);

SolveResult sqp_solve(const NlpProblem& p, const SolverConfig& config);

}  // namespace dustsqp
