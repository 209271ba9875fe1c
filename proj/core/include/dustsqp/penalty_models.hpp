#pragma once

#include <vector>

#include "dustsqp/hessian.hpp"
#include "dustsqp/nlp.hpp"

namespace dustsqp {

/**
 * Linearization of the NLP at one iterate. Row i of A is the gradient of the
 * constraint source_row[i]; rows whose gradient and value both vanish are
 * dropped.
 */
struct SubproblemData {
  Vector g;
  Matrix A;  // rows x n
  Vector b;
  Vector norm_a;
  Matrix A_bar;
  Vector b_bar;
  int m_eq = 0;
  double j0 = 0.0;
  std::vector<int> source_row;

  static SubproblemData build(const Vector& g, const Matrix& jac,
                              const Vector& c, int m_eq);

  int rows() const { return static_cast<int>(b.size()); }
  int n() const { return static_cast<int>(g.size()); }
  bool is_equality(int i) const { return i < m_eq; }
};

struct Violation {
  double v = 0.0;
  double v_inf = 0.0;
};

Violation violation_of(const Vector& c, int m_eq);
Violation violation(const NlpProblem& p, const Vector& x);

/// rho*f(x) + v(x).
double penalty(const NlpProblem& p, const Vector& x, double rho);

/// sum |r_i| over equalities plus sum (r_i)_+ over inequalities.
double l1_residual(const Vector& r, int m_eq);

/// l(d, rho) = rho <g,d> + sum |b + A d|_E + sum (b + A d)_+^I.
double linear_model(const Vector& d, double rho, const SubproblemData& sd);

/// l(d, rho) + d^T H d / 2 with H = H_rho (rho > 0) or H_0 (rho == 0).
double model_J(const Vector& d, double rho, const SubproblemData& sd,
               const HessianModel& h);

struct Reductions {
  double delta_l0 = 0.0;
  double delta_l_rho = 0.0;
  double delta_J = 0.0;
};

Reductions reductions(const Vector& d, double rho, const SubproblemData& sd,
                      double d_h_d);
Reductions reductions(const Vector& d, double rho, const SubproblemData& sd,
                      const HessianModel& h);

struct KktReport {
  double v_inf = 0.0;
  double eps_opt = 0.0;
  double eps_fea = 0.0;
};

KktReport kkt_errors(const Vector& grad, const Matrix& jac, const Vector& c,
                     int m_eq, const Vector& eta);
KktReport kkt_errors(const NlpProblem& p, const Vector& x, const Vector& eta);

}  // namespace dustsqp
