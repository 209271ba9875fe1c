#include "dustsqp/sqp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace dustsqp {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) {
    throw ConfigError("invalid configuration: " + what);
  }
}

Vector restrict_rows(const Vector& full, const SubproblemData& sd) {
  Vector out(sd.rows());
  for (int r = 0; r < sd.rows(); ++r) {
    out[r] = full[sd.source_row[r]];
  }
  return out;
}

Vector expand_rows(const Vector& rows, const SubproblemData& sd, int m) {
  Vector out = Vector::Zero(m);
  for (int r = 0; r < sd.rows(); ++r) {
    out[sd.source_row[r]] = rows[r];
  }
  return out;
}

}  // namespace

double SolverConfig::effective_beta_l() const {
  return beta_l > 0.0 ? beta_l : 0.6 * beta_phi * (1.0 - beta_v);
}

void SolverConfig::validate() const {
  auto open_unit = [](double t) { return t > 0.0 && t < 1.0; };
  require(open_unit(gamma_ls), "0 < gamma_ls < 1");
  require(open_unit(theta_rho), "0 < theta_rho < 1");
  require(open_unit(theta_omega), "0 < theta_omega < 1");
  require(open_unit(theta_alpha), "0 < theta_alpha < 1");
  require(beta_v > 0.0, "beta_v > 0");
  require(beta_v < beta_phi, "beta_v < beta_phi");
  require(beta_phi < 1.0, "beta_phi < 1");
  const double bl = effective_beta_l();
  require(bl > 0.0 && bl < beta_phi * (1.0 - beta_v),
          "0 < beta_l < beta_phi * (1 - beta_v)");
  require(rho_init > 0.0, "rho_init > 0");
  require(omega_init > 0.0, "omega_init > 0");
  require(tol_v > 0.0, "tol_v > 0");
  require(tol_opt > 0.0, "tol_opt > 0");
  require(tol_fea > 0.0, "tol_fea > 0");
  require(max_outer >= 1, "max_outer >= 1");
  require(max_inner_sweeps >= 1, "max_inner_sweeps >= 1");
  require(max_null_retries >= 0, "max_null_retries >= 0");
  require(max_backtracks >= 1, "max_backtracks >= 1");
  require(tau_eig > 0.0, "tau_eig > 0");
  require(t_cond >= 1.0, "t_cond >= 1");
  require(lbfgs_memory >= 1, "lbfgs_memory >= 1");
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::InfeasibleStationary:
      return "infeasible_stationary";
    case SolveStatus::IterationLimit:
      return "iteration_limit";
    case SolveStatus::LineSearchFailure:
      return "line_search_failure";
    case SolveStatus::NumericalFailure:
      return "numerical_failure";
  }
  return "unknown";
}

SolveStatus parse_status(const std::string& s) {
  for (SolveStatus st :
       {SolveStatus::Optimal, SolveStatus::InfeasibleStationary,
        SolveStatus::IterationLimit, SolveStatus::LineSearchFailure,
        SolveStatus::NumericalFailure}) {
    if (to_string(st) == s) {
      return st;
    }
  }
  throw std::invalid_argument("unknown status '" + s + "'");
}

double psst_update(double rho_tilde, double delta_l0, double g_dot_d,
                   double d_h_d, double omega, double beta_l) {
  const double margin = delta_l0 + omega;
  if (delta_l0 - rho_tilde * g_dot_d + omega >= beta_l * margin) {
    return rho_tilde;
  }
  const double den = g_dot_d + 0.5 * d_h_d;
  if (!(den > 0.0) || !(margin > 0.0)) {
    throw Error("posterior penalty update: nonpositive denominator");
  }
  return (1.0 - beta_l) * margin / den;
}

double psst_update(double rho_tilde, const Vector& d, const SubproblemData& sd,
                   const HessianModel& h, double omega, double beta_l) {
  const double delta_l0 = sd.j0 - linear_model(d, 0.0, sd);
  return psst_update(rho_tilde, delta_l0, sd.g.dot(d), d.dot(h.apply(d)),
                     omega, beta_l);
}

LineSearchResult line_search(Evaluator& ev, const Vector& x, const Vector& d,
                             double rho, double delta_l_rho, double phi_x,
                             double gamma_ls, double theta_alpha,
                             int max_trials) {
  const int m_eq = ev.problem().m_eq;
  LineSearchResult out;
  double alpha = 1.0;
  for (int t = 0; t < max_trials; ++t, alpha *= gamma_ls) {
    Vector xt = x + alpha * d;
    const double ft = ev.f(xt);
    Vector ct = ev.c(xt);
    ++out.trials;
    const double phi = rho * ft + violation_of(ct, m_eq).v;
    if (std::isfinite(phi) &&
        phi - phi_x <= -theta_alpha * alpha * delta_l_rho) {
      out.alpha = alpha;
      out.success = true;
      out.phi_new = phi;
      out.x_new = std::move(xt);
      out.f_new = ft;
      out.c_new = std::move(ct);
      return out;
    }
  }
  out.alpha = 0.0;
  return out;
}

Termination termination_check(const KktReport& opt, const KktReport& fea,
                              double tol_v, double tol_opt, double tol_fea) {
  if (opt.v_inf <= tol_v && opt.eps_opt <= tol_opt) {
    return Termination::Optimal;
  }
  // eps_fea <= tol_fea holds for any eta once v_inf <= tol_fea
  if (fea.v_inf > std::max(tol_v, tol_fea) && fea.eps_fea <= tol_fea) {
    return Termination::InfeasibleStationary;
  }
  return Termination::Continue;
}

Termination termination_check(const NlpProblem& p, const Vector& x,
                              const Vector& eta_opt, const Vector& eta_fea,
                              double tol_v, double tol_opt, double tol_fea) {
  return termination_check(kkt_errors(p, x, eta_opt),
                           kkt_errors(p, x, eta_fea), tol_v, tol_opt, tol_fea);
}

HessianModel build_exact_hessian(Evaluator& ev, const Vector& x,
                                 const Vector& eta, double rho,
                                 const SolverConfig& config) {
  Matrix h_f =
      build_exact_modified(ev.hess_f(x), config.tau_eig, config.t_cond);
  Matrix h_0 = build_exact_modified(ev.weighted_constraint_hessian(x, eta),
                                    config.tau_eig, config.t_cond);
  return HessianModel::dense(std::move(h_f), std::move(h_0), rho);
}

DustOptions dust_options(const SolverConfig& config) {
  DustOptions o;
  o.beta_v = config.beta_v;
  o.beta_phi = config.beta_phi;
  o.theta_rho = config.theta_rho;
  o.max_sweeps = config.max_inner_sweeps;
  o.record_trace = config.record_inner_trace;
  o.dual.reuse_zeta_for_lambda = config.reuse_zeta_for_lambda;
  o.dual.shuffle = config.shuffle_sweeps;
  o.dual.seed = config.seed;
  return o;
}

SolveResult sqp_solve(const NlpProblem& p, const SolverConfig& config) {
  p.validate();
  config.validate();
  const int n = p.n;
  const int m = p.m;
  const double beta_l = config.effective_beta_l();
  const DustOptions dopts = dust_options(config);

  Evaluator ev(p);
  SolveResult result;

  Vector x = p.x0;
  Vector eta = Vector::Zero(m);
  Vector w = Vector::Zero(m);
  Vector eta_opt = Vector::Zero(m);
  double rho = config.rho_init;
  double omega = config.omega_init;

  double f = ev.f(x);
  Vector c = ev.c(x);
  Vector g;
  Matrix jac;
  Vector g_prev;
  Matrix jac_prev;
  Vector s_prev;
  std::vector<CurvaturePair> hist_f;
  std::vector<CurvaturePair> hist_0;
  KktReport kopt;
  KktReport kfea;
  int k = 0;

  auto finish = [&](SolveStatus st, std::string message) {
    const Violation viol = violation_of(c, p.m_eq);
    result.status = st;
    result.x_final = x;
    result.f_final = f;
    result.v_final = viol.v;
    result.v_inf_final = viol.v_inf;
    result.eps_opt = kopt.eps_opt;
    result.eps_fea = kfea.eps_fea;
    result.rho_final = rho;
    result.omega_final = omega;
    result.outer_iters = k;
    result.counters = ev.counters();
    result.n_f = ev.counters().n_f;
    result.message = std::move(message);
    return result;
  };

  auto check = [&]() {
    kopt = kkt_errors(g, jac, c, p.m_eq, eta_opt);
    kfea = kkt_errors(g, jac, c, p.m_eq, eta);
    return termination_check(kopt, kfea, config.tol_v, config.tol_opt,
                             config.tol_fea);
  };

  auto status_of = [](Termination t) {
    return t == Termination::Optimal ? SolveStatus::Optimal
                                     : SolveStatus::InfeasibleStationary;
  };

  try {
    for (;; ++k) {
      g = ev.grad_f(x);
      jac = ev.jac_c(x);
      if (config.hessian == HessianMode::Lbfgs && k > 0) {
        hist_f.push_back(CurvaturePair{s_prev, g - g_prev});
        hist_0.push_back(
            CurvaturePair{s_prev, (jac - jac_prev).transpose() * eta});
        const auto cap = static_cast<std::size_t>(4 * config.lbfgs_memory);
        if (hist_f.size() > cap) {
          hist_f.erase(hist_f.begin());
          hist_0.erase(hist_0.begin());
        }
      }

      Termination term = check();
      if (term != Termination::Continue) {
        return finish(status_of(term), "");
      }
      if (k >= config.max_outer) {
        return finish(SolveStatus::IterationLimit, "outer iteration limit");
      }

      const SubproblemData sd = SubproblemData::build(g, jac, c, p.m_eq);
      auto build_model = [&](double rho_at) {
        if (config.hessian == HessianMode::Exact) {
          return build_exact_hessian(ev, x, eta, rho_at, config);
        }
        return HessianModel::low_rank(
            lbfgs_update(hist_f, config.lbfgs_memory, n, 1.0),
            lbfgs_update(hist_0, config.lbfgs_memory, n, config.tau_eig),
            rho_at);
      };

      const Violation viol = violation_of(c, p.m_eq);
      IterationRecord rec;
      rec.k = k;
      rec.x = x;
      rec.eta = eta;
      rec.f = f;
      rec.v = viol.v;
      rec.v_inf = viol.v_inf;
      rec.eps_opt = kopt.eps_opt;
      rec.eps_fea = kfea.eps_fea;
      rec.rho_prev = rho;

      SubproblemResult sub;
      bool stop = false;
      for (;;) {
        rec.eta = eta;
        rec.omega = omega;
        rec.rho_prev = rho;
        const HessianModel h = build_model(rho);
        DualIterate warm;
        warm.zeta = restrict_rows(eta, sd);
        sub = solve_subproblem(sd, h, rho, omega, warm, dopts);
        // a predicted decrease below roundoff in phi cannot pass Armijo
        const bool negligible =
            !sub.null_step &&
            sub.red.delta_l_rho <=
                1e-15 * (1.0 + std::abs(sub.rho_tilde * f) + viol.v);
        if (negligible ||
            (sub.hit_cap && !(sub.red.delta_l0 + omega > 0.0))) {
          sub.d.setZero();
          sub.null_step = true;
          sub.d_h_d = 0.0;
          sub.red = Reductions{};
        }
        rec.inner_sweeps += sub.inner_iters;
        rec.rho_reductions += sub.rho_reductions;
        rec.hit_cap = rec.hit_cap || sub.hit_cap;
        rec.weak_duality_excess =
            rec.null_retries == 0
                ? sub.weak_duality_excess
                : std::max(rec.weak_duality_excess, sub.weak_duality_excess);
        rec.weak_duality_excess_direct =
            rec.null_retries == 0 ? sub.weak_duality_excess_direct
                                  : std::max(rec.weak_duality_excess_direct,
                                             sub.weak_duality_excess_direct);
        rec.max_drift = std::max(rec.max_drift, sub.max_drift);
        if (config.record_inner_trace) {
          rec.inner.insert(rec.inner.end(), sub.trace.begin(),
                           sub.trace.end());
        }
        if (!sub.null_step) {
          break;
        }
        eta = expand_rows(sub.zeta, sd, m);
        w = expand_rows(sub.w, sd, m);
        eta_opt = eta / sub.rho_tilde;
        rho = sub.rho_tilde;
        term = check();
        if (term != Termination::Continue) {
          stop = true;
          break;
        }
        if (rec.null_retries >= config.max_null_retries) {
          break;
        }
        ++rec.null_retries;
        omega *= config.theta_omega;
      }
      if (stop) {
        return finish(status_of(term), "");
      }

      rec.null_step = sub.null_step;
      rec.rho_tilde = sub.rho_tilde;
      const double g_dot_d = sd.g.dot(sub.d);
      const double rho_k =
          sub.null_step
              ? sub.rho_tilde
              : psst_update(sub.rho_tilde, sub.red.delta_l0, g_dot_d,
                            sub.d_h_d, omega, beta_l);
      rec.psst_fallback = rho_k != sub.rho_tilde;
      rec.rho = rho_k;
      rec.delta_l0 = sub.red.delta_l0;
      rec.delta_l_rho = sub.red.delta_l0 - rho_k * g_dot_d;
      rec.delta_J = sub.red.delta_J;
      rec.phi_before = rho_k * f + viol.v;

      Vector x_new = x;
      if (sub.null_step) {
        rec.alpha = 0.0;
        rec.phi_after = rec.phi_before;
      } else {
        LineSearchResult ls =
            line_search(ev, x, sub.d, rho_k, rec.delta_l_rho, rec.phi_before,
                        config.gamma_ls, config.theta_alpha,
                        config.max_backtracks);
        rec.backtracks = ls.trials;
        if (!ls.success) {
          rho = rho_k;
          result.trace.push_back(std::move(rec));
          return finish(SolveStatus::LineSearchFailure,
                        "no acceptable step length");
        }
        rec.alpha = ls.alpha;
        rec.phi_after = ls.phi_new;
        x_new = std::move(ls.x_new);
        f = ls.f_new;
        c = std::move(ls.c_new);
      }

      eta = expand_rows(sub.zeta, sd, m);
      w = expand_rows(sub.w, sd, m);
      eta_opt = eta / sub.rho_tilde;
      rho = rho_k;
      omega *= config.theta_omega;
      result.rho_trajectory.emplace_back(k, rho);
      result.trace.push_back(std::move(rec));

      s_prev = x_new - x;
      g_prev = g;
      jac_prev = jac;
      x = std::move(x_new);
    }
  } catch (const Error& e) {
    return finish(SolveStatus::NumericalFailure, e.what());
  }
}

}  // namespace dustsqp
