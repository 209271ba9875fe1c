#include "dustsqp/penalty_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dustsqp {
namespace {

constexpr double kDegenerateNorm = 1e-12;

double pos(double t) { return t > 0.0 ? t : 0.0; }

double inf_norm(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

}  // namespace

SubproblemData SubproblemData::build(const Vector& g, const Matrix& jac,
                                     const Vector& c, int m_eq) {
  const auto m = c.size();
  if (jac.rows() != m || jac.cols() != g.size()) {
    throw std::invalid_argument("SubproblemData: dimension mismatch");
  }
  std::vector<int> keep;
  int kept_eq = 0;
  for (int i = 0; i < m; ++i) {
    const double na = jac.row(i).norm();
    if (na < kDegenerateNorm) {
      if (std::abs(c[i]) < kDegenerateNorm) {
        continue;
      }
      throw DegenerateConstraintError("constraint " + std::to_string(i) +
                                      " has a vanishing gradient");
    }
    keep.push_back(i);
    if (i < m_eq) {
      ++kept_eq;
    }
  }

  SubproblemData sd;
  const int rows = static_cast<int>(keep.size());
  const auto n = g.size();
  sd.g = g;
  sd.A.resize(rows, n);
  sd.b.resize(rows);
  sd.norm_a.resize(rows);
  sd.A_bar.resize(rows, n);
  sd.b_bar.resize(rows);
  sd.m_eq = kept_eq;
  sd.source_row = keep;
  for (int r = 0; r < rows; ++r) {
    const int i = keep[r];
    sd.A.row(r) = jac.row(i);
    sd.b[r] = c[i];
    sd.norm_a[r] = jac.row(i).norm();
    sd.A_bar.row(r) = jac.row(i) / sd.norm_a[r];
    sd.b_bar[r] = c[i] / sd.norm_a[r];
  }
  sd.j0 = l1_residual(sd.b, sd.m_eq);
  return sd;
}

double l1_residual(const Vector& r, int m_eq) {
  double sum = 0.0;
  for (int i = 0; i < r.size(); ++i) {
    sum += i < m_eq ? std::abs(r[i]) : pos(r[i]);
  }
  return sum;
}

Violation violation_of(const Vector& c, int m_eq) {
  Violation out;
  for (int i = 0; i < c.size(); ++i) {
    const double t = i < m_eq ? std::abs(c[i]) : pos(c[i]);
    out.v += t;
    out.v_inf = std::max(out.v_inf, t);
  }
  return out;
}

Violation violation(const NlpProblem& p, const Vector& x) {
  return violation_of(p.constraints(x), p.m_eq);
}

double penalty(const NlpProblem& p, const Vector& x, double rho) {
  return rho * p.objective(x) + violation(p, x).v;
}

double linear_model(const Vector& d, double rho, const SubproblemData& sd) {
  const Vector r = sd.b + sd.A * d;
  return rho * sd.g.dot(d) + l1_residual(r, sd.m_eq);
}

double model_J(const Vector& d, double rho, const SubproblemData& sd,
               const HessianModel& h) {
  const Vector hd = rho == 0.0 ? h.apply_h0(d) : h.apply(d);
  return linear_model(d, rho, sd) + 0.5 * d.dot(hd);
}

Reductions reductions(const Vector& d, double rho, const SubproblemData& sd,
                      double d_h_d) {
  Reductions out;
  out.delta_l0 = sd.j0 - linear_model(d, 0.0, sd);
  out.delta_l_rho = out.delta_l0 - rho * sd.g.dot(d);
  out.delta_J = out.delta_l_rho - 0.5 * d_h_d;
  return out;
}

Reductions reductions(const Vector& d, double rho, const SubproblemData& sd,
                      const HessianModel& h) {
  return reductions(d, rho, sd, d.dot(rho == 0.0 ? h.apply_h0(d) : h.apply(d)));
}

KktReport kkt_errors(const Vector& grad, const Matrix& jac, const Vector& c,
                     int m_eq, const Vector& eta) {
  const auto m = c.size();
  if (eta.size() != m || jac.rows() != m) {
    throw std::invalid_argument("kkt_errors: dimension mismatch");
  }
  KktReport out;
  out.v_inf = violation_of(c, m_eq).v_inf;

  const Vector jt_eta = jac.transpose() * eta;
  out.eps_opt = std::max(inf_norm(grad + jt_eta),
                         inf_norm(eta.cwiseProduct(c)));

  double fea = inf_norm(jt_eta);
  for (int i = 0; i < m; ++i) {
    const double cp = pos(c[i]);
    const double cm = pos(-c[i]);
    if (i < m_eq) {
      fea = std::max(fea, std::abs((1.0 - eta[i]) * cp));
      fea = std::max(fea, std::abs((1.0 + eta[i]) * cm));
    } else {
      fea = std::max(fea, std::abs((1.0 - eta[i]) * cp));
      fea = std::max(fea, std::abs(eta[i] * cm));
    }
  }
  out.eps_fea = fea;
  return out;
}

KktReport kkt_errors(const NlpProblem& p, const Vector& x, const Vector& eta) {
  return kkt_errors(p.gradient(x), p.jacobian(x), p.constraints(x), p.m_eq,
                    eta);
}

}  // namespace dustsqp
