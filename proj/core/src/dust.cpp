#include "dustsqp/dust.hpp"

#include <algorithm>
#include <cmath>

namespace dustsqp {

const char* to_string(DustDecision d) {
  switch (d) {
    case DustDecision::Terminate:
      return "terminate";
    case DustDecision::ReduceRho:
      return "reduce";
    case DustDecision::Continue:
      return "continue";
  }
  return "?";
}

namespace {

// J(d, rho) - D(zeta, rho) for d = -H^{-1}(rho g + A^T zeta)
double recovered_gap(const Vector& d, const Vector& zeta,
                     const SubproblemData& sd) {
  const Vector r = sd.b + sd.A * d;
  double gap = 0.0;
  for (int i = 0; i < sd.rows(); ++i) {
    const double h = sd.is_equality(i) ? std::abs(r[i]) : std::max(r[i], 0.0);
    gap += h - zeta[i] * r[i];
  }
  return gap;
}

}  // namespace

double complementarity_chi(const Vector& d, const Vector& zeta,
                           const SubproblemData& sd) {
  double chi = 0.0;
  for (int i = 0; i < sd.rows(); ++i) {
    const double r = sd.A_bar.row(i).dot(d) + sd.b_bar[i];
    double weight = 0.0;
    if (r > 0.0) {
      weight = 1.0 - zeta[i];
    } else if (r < 0.0 && sd.is_equality(i)) {
      weight = 1.0 + zeta[i];
    }
    chi += weight * sd.norm_a[i] * std::abs(r);
  }
  return chi;
}

RatioReport make_ratio_report(double j0, double omega, double l_d0, double j_d,
                              double dual_rho, double dual_w, double chi) {
  RatioReport r;
  r.j0 = j0;
  r.j0_omega = j0 + omega;
  r.l_d0 = l_d0;
  r.j_d = j_d;
  r.dual_rho = dual_rho;
  r.dual_w = dual_w;
  r.chi = chi;
  const double den_phi = r.j0_omega - dual_rho;
  if (!(den_phi > 0.0)) {
    throw Error("penalty dual value exceeds J0 + omega");
  }
  r.r_v = (r.j0_omega - l_d0) / (r.j0_omega - std::max(dual_w, 0.0));
  r.r_phi = (r.j0_omega - j_d) / den_phi;
  r.r_c = 1.0 - std::sqrt(std::max(chi, 0.0) / r.j0_omega);
  return r;
}

RatioReport compute_ratios(const Vector& d_used, const Vector& zeta,
                           const Vector& w, double rho, double omega,
                           const SubproblemData& sd, const HessianModel& h) {
  RatioReport r = make_ratio_report(
      sd.j0, omega, linear_model(d_used, 0.0, sd), model_J(d_used, rho, sd, h),
      dual_objective(zeta, rho, sd, h), dual_objective(w, 0.0, sd, h),
      complementarity_chi(d_used, zeta, sd));
  r.d_used = d_used;
  return r;
}

void check_dust_parameters(double beta_v, double beta_phi, double theta_rho) {
  if (!(0.0 < beta_v && beta_v < beta_phi && beta_phi < 1.0)) {
    throw ConfigError("need 0 < beta_v < beta_phi < 1");
  }
  if (!(0.0 < theta_rho && theta_rho < 1.0)) {
    throw ConfigError("need 0 < theta_rho < 1");
  }
}

DustDecision dust_decide(const RatioReport& report, double beta_v,
                         double beta_phi) {
  const bool rphi = report.r_phi >= beta_phi;
  const bool rc = report.r_c >= beta_v;
  const bool rv = report.r_v >= beta_v;
  if (rphi && rc && rv) {
    return DustDecision::Terminate;
  }
  if (rphi && rc) {
    return DustDecision::ReduceRho;
  }
  return DustDecision::Continue;
}

DustStep dust_decide(const RatioReport& report, double beta_v,
                     double beta_phi, double theta_rho, double rho) {
  check_dust_parameters(beta_v, beta_phi, theta_rho);
  const DustDecision d = dust_decide(report, beta_v, beta_phi);
  return DustStep{d, d == DustDecision::ReduceRho ? theta_rho * rho : rho};
}

namespace {

struct Candidate {
  DualPair pair;
  Vector zeta;
  double rho = 0.0;
};

}  // namespace

SubproblemResult solve_subproblem(const SubproblemData& sd,
                                  const HessianModel& h_in, double rho_in,
                                  double omega, const DualIterate& warm,
                                  const DustOptions& opts) {
  if (!(rho_in > 0.0) || !(omega > 0.0)) {
    throw std::invalid_argument("solve_subproblem: need rho > 0, omega > 0");
  }
  check_dust_parameters(opts.beta_v, opts.beta_phi, opts.theta_rho);

  SubproblemResult out;
  out.h = rho_in == h_in.rho() ? h_in : h_in.rescale_rho(rho_in);
  double rho = rho_in;
  DualQpSolver qp(sd, out.h, warm, opts.dual);
  const double d_zeta0 = dual_objective(qp.zeta(), 0.0, sd, out.h);

  Candidate best;
  best.pair = DualPair{Vector::Zero(sd.n()), sd.j0, true};
  best.zeta = qp.zeta();
  best.rho = rho;

  DualPair pair;
  double prev_dual_rho = qp.penalty_dual();
  double prev_dual_lambda = qp.feasibility_dual();
  int last_reduction = 0;

  auto finish = [&](const DualPair& used, const Vector& zeta, double rho_t) {
    out.d = used.d;
    out.null_step = used.zero_step;
    out.zeta = zeta;
    out.lambda = qp.lambda();
    out.w = qp.best_w();
    out.d_w = qp.best_w_value();
    out.rho_tilde = rho_t;
    out.d_h_d = out.d.dot(out.h.apply(out.d));
    out.red = reductions(out.d, rho_t, sd, out.d_h_d);
    out.inner_iters = qp.sweeps();
    return out;
  };

  for (long j = 1; j <= opts.max_sweeps; ++j) {
    qp.sweep();
    pair = sufficient_dual_pair(qp.step(), rho, sd, out.h);

    const double dual_rho = qp.penalty_dual();
    const double dual_lambda = qp.feasibility_dual();
    const double l_d0 = linear_model(pair.d, 0.0, sd);
    const double j_d0 = l_d0 + 0.5 * pair.d.dot(out.h.apply_h0(pair.d));
    const double excess_rho = pair.zero_step
                                  ? dual_rho - pair.J
                                  : -recovered_gap(pair.d, qp.zeta(), sd);
    out.weak_duality_excess = std::max(
        {out.weak_duality_excess, dual_lambda - j_d0, excess_rho});
    out.weak_duality_excess_direct =
        std::max({out.weak_duality_excess_direct, dual_lambda - j_d0,
                  dual_rho - pair.J});
    if (dual_objective(qp.zeta(), 0.0, sd, out.h) < d_zeta0 - 1e-12) {
      ++out.dual_no_worse_violations;
    }
    out.max_drift = std::max(out.max_drift, qp.drift());

    RatioReport report = make_ratio_report(
        sd.j0, omega, l_d0, pair.J, dual_rho, qp.best_w_value(),
        complementarity_chi(pair.d, qp.zeta(), sd));
    const DustStep step =
        dust_decide(report, opts.beta_v, opts.beta_phi, opts.theta_rho, rho);

    if (opts.record_trace) {
      out.trace.push_back(SweepTrace{static_cast<int>(j), rho, report.r_v,
                                     report.r_phi, report.r_c, pair.J,
                                     dual_rho, qp.best_w_value(),
                                     step.decision});
    }

    if (pair.J < best.pair.J || best.rho != rho) {
      best.pair = pair;
      best.zeta = qp.zeta();
      best.rho = rho;
    }

    if (step.decision == DustDecision::Terminate && !opts.run_to_convergence) {
      return finish(pair, qp.zeta(), rho);
    }
    if (step.decision == DustDecision::ReduceRho) {
      rho = step.rho;
      out.h = out.h.rescale_rho(rho);
      qp.set_hessian(out.h);
      ++out.rho_reductions;
      out.reduction_sweeps.push_back(static_cast<int>(j));
      last_reduction = static_cast<int>(j);
      prev_dual_rho = qp.penalty_dual();
      prev_dual_lambda = dual_lambda;
      continue;
    }
    if (opts.run_to_convergence) {
      const double change = std::abs(dual_rho - prev_dual_rho) +
                            std::abs(dual_lambda - prev_dual_lambda);
      if (j - last_reduction >= opts.quiet_sweeps &&
          change <= opts.convergence_tol * (1.0 + std::abs(dual_rho))) {
        out.converged = true;
        return finish(pair, qp.zeta(), rho);
      }
    }
    prev_dual_rho = dual_rho;
    prev_dual_lambda = dual_lambda;
  }

  out.hit_cap = true;
  if (best.rho != rho) {
    return finish(pair, qp.zeta(), rho);
  }
  return finish(best.pair, best.zeta, rho);
}

}  // namespace dustsqp
