#pragma once

#include <vector>

#include "dustsqp/dual_qp.hpp"

namespace dustsqp {

enum class DustDecision { Terminate, ReduceRho, Continue };

const char* to_string(DustDecision d);

/**
 * Complementarity measure: sum over violated rows of
 * (1 -+ zeta_i) * |a_i| * dist(d, C_i), with the sign taken from the residual
 * <a_bar_i, d> + b_bar_i.
 */
double complementarity_chi(const Vector& d, const Vector& zeta,
                           const SubproblemData& sd);

struct RatioReport {
  double j0 = 0.0;
  double j0_omega = 0.0;
  double r_v = 0.0;
  double r_phi = 0.0;
  double r_c = 0.0;
  double chi = 0.0;
  double l_d0 = 0.0;       // l(d_used, 0)
  double j_d = 0.0;        // J(d_used, rho)
  double dual_rho = 0.0;   // D(zeta, rho)
  double dual_w = 0.0;     // D(w, 0)
  Vector d_used;
  DustDecision decision = DustDecision::Continue;
};

/// Ratios from already evaluated model and dual values.
RatioReport make_ratio_report(double j0, double omega, double l_d0, double j_d,
                              double dual_rho, double dual_w, double chi);

RatioReport compute_ratios(const Vector& d_used, const Vector& zeta,
                           const Vector& w, double rho, double omega,
                           const SubproblemData& sd, const HessianModel& h);

/// Throws ConfigError unless 0 < beta_v < beta_phi < 1.
void check_dust_parameters(double beta_v, double beta_phi, double theta_rho);

DustDecision dust_decide(const RatioReport& report, double beta_v,
                         double beta_phi);

struct DustStep {
  DustDecision decision = DustDecision::Continue;
  double rho = 0.0;
};

DustStep dust_decide(const RatioReport& report, double beta_v,
                     double beta_phi, double theta_rho, double rho);

struct DustOptions {
  double beta_v = 0.1;
  double beta_phi = 0.7;
  double theta_rho = 0.9;
  long max_sweeps = 100000;
  /// Ignore Terminate and keep sweeping until the duals settle with no
  /// reduction in the last quiet_sweeps sweeps.
  bool run_to_convergence = false;
  int quiet_sweeps = 50;
  double convergence_tol = 1e-13;
  bool record_trace = false;
  DualQpOptions dual;
};

struct SweepTrace {
  int j = 0;
  double rho = 0.0;
  double r_v = 0.0;
  double r_phi = 0.0;
  double r_c = 0.0;
  double j_d = 0.0;
  double dual_rho = 0.0;
  double dual_w = 0.0;
  DustDecision decision = DustDecision::Continue;
};

struct SubproblemResult {
  Vector d;
  Vector zeta;
  Vector lambda;
  Vector w;
  double d_w = 0.0;
  double rho_tilde = 0.0;
  Reductions red;
  double d_h_d = 0.0;  // <d, H_rho_tilde d>
  int inner_iters = 0;
  int rho_reductions = 0;
  std::vector<int> reduction_sweeps;
  bool null_step = false;
  bool hit_cap = false;
  bool converged = false;  // run_to_convergence only
  /// max over sweeps of D(lambda,0) - J(d,0) and D(zeta,rho) - J(d,rho).
  /// When d is the primal recovered from zeta, D - J is taken from the
  /// residual identity J - D = sum_i h_i(r_i) - zeta_i r_i.
  double weak_duality_excess = -1e300;
  /// same, always evaluated as a plain difference of D and J
  double weak_duality_excess_direct = -1e300;
  /// sweeps where D(zeta, 0) fell below its starting value
  int dual_no_worse_violations = 0;
  double max_drift = 0.0;
  HessianModel h;  // at rho_tilde
  std::vector<SweepTrace> trace;
};

/**
 * Inexact penalty subproblem solve: coordinate sweeps on both duals, a DUST
 * decision after each sweep, and rho reductions applied in place.
 */
SubproblemResult solve_subproblem(const SubproblemData& sd,
                                  const HessianModel& h, double rho_in,
                                  double omega, const DualIterate& warm,
                                  const DustOptions& opts);

}  // namespace dustsqp
