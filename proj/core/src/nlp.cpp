#include "dustsqp/nlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dustsqp {

void NlpProblem::validate() const {
  if (n < 1) {
    throw std::invalid_argument(name + ": dimension n must be >= 1");
  }
  if (m_eq < 0 || m_eq > m) {
    throw std::invalid_argument(name + ": need 0 <= m_eq <= m");
  }
  if (x0.size() != n) {
    throw std::invalid_argument(name + ": starting point has wrong size");
  }
  if (!objective || !constraints || !gradient || !jacobian ||
      !objective_hessian || !constraint_hessian) {
    throw std::invalid_argument(name + ": missing callback");
  }
}

double Evaluator::f(const Vector& x) {
  ++counters_.n_f;
  return problem_->objective(x);
}

Vector Evaluator::c(const Vector& x) {
  ++counters_.n_c;
  return problem_->constraints(x);
}

Vector Evaluator::grad_f(const Vector& x) {
  ++counters_.n_grad;
  return problem_->gradient(x);
}

Matrix Evaluator::jac_c(const Vector& x) {
  ++counters_.n_jac;
  return problem_->jacobian(x);
}

Matrix Evaluator::hess_f(const Vector& x) {
  ++counters_.n_hess;
  return problem_->objective_hessian(x);
}

Matrix Evaluator::hess_c(const Vector& x, int i) {
  ++counters_.n_hess;
  return problem_->constraint_hessian(x, i);
}

Matrix Evaluator::weighted_constraint_hessian(const Vector& x,
                                              const Vector& weights) {
  const int n = problem_->n;
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < weights.size(); ++i) {
    if (weights[i] != 0.0) {
      out += weights[i] * hess_c(x, i);
    }
  }
  return out;
}

NlpProblem make_infeasible(const NlpProblem& p) {
  if (p.n < 1) {
    throw std::invalid_argument("make_infeasible: n must be >= 1");
  }
  // existing simple bounds on x_1 are replaced, not kept
  std::vector<int> keep;
  for (int i = 0; i < p.m; ++i) {
    const bool x1_bound = static_cast<int>(p.bound_var.size()) == p.m &&
                          p.bound_var[i] == 0 && i >= p.m_eq;
    if (!x1_bound) {
      keep.push_back(i);
    }
  }
  const int kept = static_cast<int>(keep.size());
  const int n = p.n;

  NlpProblem q = p;
  q.name = p.name + "_inf";
  q.m = kept + 2;
  q.bound_var.assign(static_cast<std::size_t>(q.m), -1);
  for (int r = 0; r < kept; ++r) {
    if (static_cast<int>(p.bound_var.size()) == p.m) {
      q.bound_var[r] = p.bound_var[keep[r]];
    }
  }
  q.bound_var[kept] = 0;
  q.bound_var[kept + 1] = 0;

  auto cons = p.constraints;
  q.constraints = [cons, keep, kept](const Vector& x) {
    const Vector full = cons(x);
    Vector c(kept + 2);
    for (int r = 0; r < kept; ++r) {
      c[r] = full[keep[r]];
    }
    c[kept] = x[0];
    c[kept + 1] = 1.0 - x[0];
    return c;
  };
  auto jac = p.jacobian;
  q.jacobian = [jac, keep, kept, n](const Vector& x) {
    const Matrix full = jac(x);
    Matrix J = Matrix::Zero(kept + 2, n);
    for (int r = 0; r < kept; ++r) {
      J.row(r) = full.row(keep[r]);
    }
    J(kept, 0) = 1.0;
    J(kept + 1, 0) = -1.0;
    return J;
  };
  auto hess = p.constraint_hessian;
  q.constraint_hessian = [hess, keep, kept, n](const Vector& x,
                                               int i) -> Matrix {
    if (i < kept) {
      return hess(x, keep[static_cast<std::size_t>(i)]);
    }
    return Matrix::Zero(n, n);
  };
  return q;
}

double check_derivatives(const NlpProblem& p, const Vector& x, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("check_derivatives: step must be positive");
  }
  const Vector g = p.gradient(x);
  const Matrix J = p.jacobian(x);
  double worst = 0.0;
  auto rel = [](double analytic, double fd) {
    return std::abs(analytic - fd) / std::max(1.0, std::abs(analytic));
  };
  Vector xp = x;
  Vector xm = x;
  for (int j = 0; j < p.n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    const double dfd = (p.objective(xp) - p.objective(xm)) / (2.0 * h);
    worst = std::max(worst, rel(g[j], dfd));
    if (p.m > 0) {
      const Vector dc = (p.constraints(xp) - p.constraints(xm)) / (2.0 * h);
      for (int i = 0; i < p.m; ++i) {
        worst = std::max(worst, rel(J(i, j), dc[i]));
      }
    }
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return worst;
}

}  // namespace dustsqp
