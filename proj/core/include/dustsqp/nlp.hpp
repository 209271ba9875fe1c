#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dustsqp/types.hpp"

namespace dustsqp {

/**
 * Callback-style definition of
 *
 *   min f(x)  s.t.  c_i(x) = 0 (i < m_eq),  c_i(x) <= 0 (m_eq <= i < m).
 *
 * Equalities always come first. Inequalities stated as g(x) >= 0 are negated
 * on entry, and simple bounds are ordinary inequality rows.
 */
struct NlpProblem {
  std::string name;
  int n = 0;
  int m = 0;
  int m_eq = 0;
  Vector x0;

  std::function<double(const Vector&)> objective;
  std::function<Vector(const Vector&)> constraints;
  std::function<Vector(const Vector&)> gradient;
  /// m x n, row i is the gradient of c_i.
  std::function<Matrix(const Vector&)> jacobian;
  std::function<Matrix(const Vector&)> objective_hessian;
  std::function<Matrix(const Vector&, int)> constraint_hessian;

  /// Optional, size m: index j if row i is a simple bound on x_j, else -1.
  std::vector<int> bound_var;

  /// Throws std::invalid_argument when dimensions or callbacks are
  /// inconsistent.
  void validate() const;
};

struct EvalCounters {
  long n_f = 0;
  long n_c = 0;
  long n_grad = 0;
  long n_jac = 0;
  long n_hess = 0;
};

/// Counting front end over an NlpProblem. One instance per solve.
class Evaluator {
 public:
  explicit Evaluator(const NlpProblem& problem) : problem_(&problem) {}

  const NlpProblem& problem() const { return *problem_; }
  const EvalCounters& counters() const { return counters_; }

  double f(const Vector& x);
  Vector c(const Vector& x);
  Vector grad_f(const Vector& x);
  Matrix jac_c(const Vector& x);
  Matrix hess_f(const Vector& x);
  Matrix hess_c(const Vector& x, int i);

  /// sum_i weights_i * hess c_i(x); rows with zero weight are not evaluated.
  Matrix weighted_constraint_hessian(const Vector& x, const Vector& weights);

 private:
  const NlpProblem* problem_;
  EvalCounters counters_;
};

/**
 * Appends x_1 <= 0 and 1 - x_1 <= 0, which no point satisfies together.
 * Simple bound rows on x_1 recorded in bound_var are replaced by the new
 * pair, so a variable keeps one lower and one upper bound.
 */
NlpProblem make_infeasible(const NlpProblem& p);

/**
 * Largest relative mismatch between the analytic gradient/Jacobian and a
 * central difference with step h, measured entrywise as
 * |analytic - fd| / max(1, |analytic|).
 */
double check_derivatives(const NlpProblem& p, const Vector& x, double h);

}  // namespace dustsqp
