#include "dustsqp/hs_registry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <utility>

namespace dustsqp {
namespace {

struct Term {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> grad;
  std::function<Matrix(const Vector&)> hess;
};

Term linear_term(Vector a, double b) {
  const int n = static_cast<int>(a.size());
  return Term{[a, b](const Vector& x) { return a.dot(x) + b; },
              [a](const Vector&) { return a; },
              [n](const Vector&) { return Matrix(Matrix::Zero(n, n)); }};
}

Vector coeffs(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) {
    v[i++] = x;
  }
  return v;
}

class ProblemBuilder {
 public:
  ProblemBuilder(std::string name, Vector x0)
      : name_(std::move(name)), n_(static_cast<int>(x0.size())),
        x0_(std::move(x0)) {}

  ProblemBuilder& objective(Term t) {
    objective_ = std::move(t);
    return *this;
  }
  ProblemBuilder& equality(Term t) {
    equalities_.push_back(std::move(t));
    return *this;
  }
  ProblemBuilder& inequality(Term t, int bound_var = -1) {
    inequalities_.push_back(std::move(t));
    inequality_bounds_.push_back(bound_var);
    return *this;
  }
  ProblemBuilder& linear_equality(Vector a, double b) {
    return equality(linear_term(std::move(a), b));
  }
  ProblemBuilder& linear_inequality(Vector a, double b) {
    return inequality(linear_term(std::move(a), b));
  }
  // lo <= x_j  as  lo - x_j <= 0
  ProblemBuilder& lower_bound(int j, double lo) {
    Vector a = Vector::Zero(n_);
    a[j] = -1.0;
    return inequality(linear_term(a, lo), j);
  }
  // x_j <= hi  as  x_j - hi <= 0
  ProblemBuilder& upper_bound(int j, double hi) {
    Vector a = Vector::Zero(n_);
    a[j] = 1.0;
    return inequality(linear_term(a, -hi), j);
  }

  NlpProblem build() const {
    std::vector<Term> rows = equalities_;
    rows.insert(rows.end(), inequalities_.begin(), inequalities_.end());
    const int m = static_cast<int>(rows.size());
    const int n = n_;

    NlpProblem p;
    p.name = name_;
    p.n = n;
    p.m = m;
    p.m_eq = static_cast<int>(equalities_.size());
    p.x0 = x0_;
    p.bound_var.assign(equalities_.size(), -1);
    p.bound_var.insert(p.bound_var.end(), inequality_bounds_.begin(),
                       inequality_bounds_.end());
    p.objective = objective_.value;
    p.gradient = objective_.grad;
    p.objective_hessian = objective_.hess;
    p.constraints = [rows, m](const Vector& x) {
      Vector c(m);
      for (int i = 0; i < m; ++i) {
        c[i] = rows[i].value(x);
      }
      return c;
    };
    p.jacobian = [rows, m, n](const Vector& x) {
      Matrix J(m, n);
      for (int i = 0; i < m; ++i) {
        J.row(i) = rows[i].grad(x).transpose();
      }
      return J;
    };
    p.constraint_hessian = [rows](const Vector& x, int i) {
      return rows.at(static_cast<std::size_t>(i)).hess(x);
    };
    p.validate();
    return p;
  }

 private:
  std::string name_;
  int n_;
  Vector x0_;
  Term objective_;
  std::vector<Term> equalities_;
  std::vector<Term> inequalities_;
  std::vector<int> inequality_bounds_;
};

// Term whose Hessian is a constant matrix.
Term quadratic_objective(std::function<double(const Vector&)> value,
                         std::function<Vector(const Vector&)> grad,
                         Matrix hess) {
  return Term{std::move(value), std::move(grad),
              [hess](const Vector&) { return hess; }};
}

NlpProblem hs11() {
  return ProblemBuilder("hs11", coeffs({4.9, 0.1}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return (x[0] - 5) * (x[0] - 5) + x[1] * x[1] - 25;
          },
          [](const Vector& x) { return coeffs({2 * (x[0] - 5), 2 * x[1]}); },
          Matrix(Eigen::Vector2d(2, 2).asDiagonal())))
      .inequality(Term{
          [](const Vector& x) { return x[0] * x[0] - x[1]; },
          [](const Vector& x) { return coeffs({2 * x[0], -1}); },
          [](const Vector&) {
            return Matrix(Eigen::Vector2d(2, 0).asDiagonal());
          }})
      .build();
}

NlpProblem hs14() {
  return ProblemBuilder("hs14", coeffs({2, 2}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return (x[0] - 2) * (x[0] - 2) + (x[1] - 1) * (x[1] - 1);
          },
          [](const Vector& x) {
            return coeffs({2 * (x[0] - 2), 2 * (x[1] - 1)});
          },
          Matrix(2.0 * Matrix::Identity(2, 2))))
      .linear_equality(coeffs({1, -2}), 1)
      .inequality(Term{
          [](const Vector& x) { return x[0] * x[0] / 4 + x[1] * x[1] - 1; },
          [](const Vector& x) { return coeffs({x[0] / 2, 2 * x[1]}); },
          [](const Vector&) {
            return Matrix(Eigen::Vector2d(0.5, 2).asDiagonal());
          }})
      .build();
}

NlpProblem hs21() {
  return ProblemBuilder("hs21", coeffs({-1, -1}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return 0.01 * x[0] * x[0] + x[1] * x[1] - 100;
          },
          [](const Vector& x) { return coeffs({0.02 * x[0], 2 * x[1]}); },
          Matrix(Eigen::Vector2d(0.02, 2).asDiagonal())))
      .linear_inequality(coeffs({-10, 1}), 10)
      .lower_bound(0, 2)
      .upper_bound(0, 50)
      .lower_bound(1, -50)
      .upper_bound(1, 50)
      .build();
}

NlpProblem hs28() {
  Matrix H(3, 3);
  H << 2, 2, 0, 2, 4, 2, 0, 2, 2;
  return ProblemBuilder("hs28", coeffs({-4, 1, 1}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return std::pow(x[0] + x[1], 2) + std::pow(x[1] + x[2], 2);
          },
          [](const Vector& x) {
            const double u = x[0] + x[1];
            const double w = x[1] + x[2];
            return coeffs({2 * u, 2 * u + 2 * w, 2 * w});
          },
          H))
      .linear_equality(coeffs({1, 2, 3}), -1)
      .build();
}

NlpProblem hs32() {
  const Eigen::Vector3d e(1, 3, 1);
  const Eigen::Vector3d w(1, -1, 0);
  const Matrix H = 2 * e * e.transpose() + 8 * w * w.transpose();
  return ProblemBuilder("hs32", coeffs({0.1, 0.7, 0.2}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return std::pow(x[0] + 3 * x[1] + x[2], 2) +
                   4 * std::pow(x[0] - x[1], 2);
          },
          [e, w](const Vector& x) {
            const double u = x[0] + 3 * x[1] + x[2];
            const double v = x[0] - x[1];
            return Vector(2 * u * e + 8 * v * w);
          },
          H))
      .linear_equality(coeffs({-1, -1, -1}), 1)
      .inequality(Term{
          [](const Vector& x) {
            return x[0] * x[0] * x[0] - 6 * x[1] - 4 * x[2] + 3;
          },
          [](const Vector& x) { return coeffs({3 * x[0] * x[0], -6, -4}); },
          [](const Vector& x) {
            Matrix h = Matrix::Zero(3, 3);
            h(0, 0) = 6 * x[0];
            return h;
          }})
      .lower_bound(0, 0)
      .lower_bound(1, 0)
      .lower_bound(2, 0)
      .build();
}

NlpProblem hs35() {
  Matrix H(3, 3);
  H << 4, 2, 2, 2, 4, 0, 2, 0, 2;
  return ProblemBuilder("hs35", coeffs({0.5, 0.5, 0.5}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return 9 - 8 * x[0] - 6 * x[1] - 4 * x[2] + 2 * x[0] * x[0] +
                   2 * x[1] * x[1] + x[2] * x[2] + 2 * x[0] * x[1] +
                   2 * x[0] * x[2];
          },
          [](const Vector& x) {
            return coeffs({-8 + 4 * x[0] + 2 * x[1] + 2 * x[2],
                           -6 + 4 * x[1] + 2 * x[0], -4 + 2 * x[2] + 2 * x[0]});
          },
          H))
      .linear_inequality(coeffs({1, 1, 2}), -3)
      .lower_bound(0, 0)
      .lower_bound(1, 0)
      .lower_bound(2, 0)
      .build();
}

NlpProblem hs41() {
  return ProblemBuilder("hs41", coeffs({2, 2, 2, 2}))
      .objective(Term{
          [](const Vector& x) { return 2 - x[0] * x[1] * x[2]; },
          [](const Vector& x) {
            return coeffs({-x[1] * x[2], -x[0] * x[2], -x[0] * x[1], 0});
          },
          [](const Vector& x) {
            Matrix h = Matrix::Zero(4, 4);
            h(0, 1) = h(1, 0) = -x[2];
            h(0, 2) = h(2, 0) = -x[1];
            h(1, 2) = h(2, 1) = -x[0];
            return h;
          }})
      .linear_equality(coeffs({1, 2, 2, -1}), 0)
      .lower_bound(0, 0)
      .upper_bound(0, 1)
      .lower_bound(1, 0)
      .upper_bound(1, 1)
      .lower_bound(2, 0)
      .upper_bound(2, 1)
      .lower_bound(3, 0)
      .upper_bound(3, 2)
      .build();
}

NlpProblem hs43() {
  auto diag = [](std::initializer_list<double> d) {
    return Matrix(coeffs(d).asDiagonal());
  };
  return ProblemBuilder("hs43", Vector::Zero(4))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return x[0] * x[0] + x[1] * x[1] + 2 * x[2] * x[2] + x[3] * x[3] -
                   5 * x[0] - 5 * x[1] - 21 * x[2] + 7 * x[3];
          },
          [](const Vector& x) {
            return coeffs(
                {2 * x[0] - 5, 2 * x[1] - 5, 4 * x[2] - 21, 2 * x[3] + 7});
          },
          diag({2, 2, 4, 2})))
      .inequality(Term{
          [](const Vector& x) {
            return x.squaredNorm() + x[0] - x[1] + x[2] - x[3] - 8;
          },
          [](const Vector& x) {
            return coeffs(
                {2 * x[0] + 1, 2 * x[1] - 1, 2 * x[2] + 1, 2 * x[3] - 1});
          },
          [diag](const Vector&) { return diag({2, 2, 2, 2}); }})
      .inequality(Term{
          [](const Vector& x) {
            return x[0] * x[0] + 2 * x[1] * x[1] + x[2] * x[2] +
                   2 * x[3] * x[3] - x[0] - x[3] - 10;
          },
          [](const Vector& x) {
            return coeffs({2 * x[0] - 1, 4 * x[1], 2 * x[2], 4 * x[3] - 1});
          },
          [diag](const Vector&) { return diag({2, 4, 2, 4}); }})
      .inequality(Term{
          [](const Vector& x) {
            return 2 * x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + 2 * x[0] -
                   x[1] - x[3] - 5;
          },
          [](const Vector& x) {
            return coeffs({4 * x[0] + 2, 2 * x[1] - 1, 2 * x[2], -1});
          },
          [diag](const Vector&) { return diag({4, 2, 2, 0}); }})
      .build();
}

NlpProblem hs48() {
  Matrix H = Matrix::Zero(5, 5);
  H(0, 0) = 2;
  H.block<2, 2>(1, 1) << 2, -2, -2, 2;
  H.block<2, 2>(3, 3) << 2, -2, -2, 2;
  return ProblemBuilder("hs48", coeffs({3, 5, -3, 2, -2}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return std::pow(x[0] - 1, 2) + std::pow(x[1] - x[2], 2) +
                   std::pow(x[3] - x[4], 2);
          },
          [](const Vector& x) {
            return coeffs({2 * (x[0] - 1), 2 * (x[1] - x[2]),
                           -2 * (x[1] - x[2]), 2 * (x[3] - x[4]),
                           -2 * (x[3] - x[4])});
          },
          H))
      .linear_equality(coeffs({1, 1, 1, 1, 1}), -5)
      .linear_equality(coeffs({0, 0, 1, -2, -2}), 3)
      .build();
}

// (a x0 - x1)^2 + (x1 + x2 - 2)^2 + (x3 - 1)^2 + (x4 - 1)^2
Term hs51_family_objective(double a) {
  const Vector e = coeffs({a, -1, 0, 0, 0});
  const Vector f = coeffs({0, 1, 1, 0, 0});
  Matrix H = 2 * e * e.transpose() + 2 * f * f.transpose();
  H(3, 3) += 2;
  H(4, 4) += 2;
  return quadratic_objective(
      [a](const Vector& x) {
        return std::pow(a * x[0] - x[1], 2) + std::pow(x[1] + x[2] - 2, 2) +
               std::pow(x[3] - 1, 2) + std::pow(x[4] - 1, 2);
      },
      [e, f](const Vector& x) {
        Vector g = 2 * e.dot(x) * e + 2 * (f.dot(x) - 2) * f;
        g[3] += 2 * (x[3] - 1);
        g[4] += 2 * (x[4] - 1);
        return g;
      },
      H);
}

NlpProblem hs51() {
  return ProblemBuilder("hs51", coeffs({2.5, 0.5, 2, -1, 0.5}))
      .objective(hs51_family_objective(1.0))
      .linear_equality(coeffs({1, 3, 0, 0, 0}), -4)
      .linear_equality(coeffs({0, 0, 1, 1, -2}), 0)
      .linear_equality(coeffs({0, 1, 0, 0, -1}), 0)
      .build();
}

NlpProblem hs52() {
  return ProblemBuilder("hs52", coeffs({2, 2, 2, 2, 2}))
      .objective(hs51_family_objective(4.0))
      .linear_equality(coeffs({1, 3, 0, 0, 0}), 0)
      .linear_equality(coeffs({0, 0, 1, 1, -2}), 0)
      .linear_equality(coeffs({0, 1, 0, 0, -1}), 0)
      .build();
}

NlpProblem hs61() {
  return ProblemBuilder("hs61", Vector::Zero(3))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return 4 * x[0] * x[0] + 2 * x[1] * x[1] + 2 * x[2] * x[2] -
                   33 * x[0] + 16 * x[1] - 24 * x[2];
          },
          [](const Vector& x) {
            return coeffs({8 * x[0] - 33, 4 * x[1] + 16, 4 * x[2] - 24});
          },
          Matrix(Eigen::Vector3d(8, 4, 4).asDiagonal())))
      .equality(Term{
          [](const Vector& x) { return 3 * x[0] - 2 * x[1] * x[1] - 7; },
          [](const Vector& x) { return coeffs({3, -4 * x[1], 0}); },
          [](const Vector&) {
            return Matrix(Eigen::Vector3d(0, -4, 0).asDiagonal());
          }})
      .equality(Term{
          [](const Vector& x) { return 4 * x[0] - x[2] * x[2] - 11; },
          [](const Vector& x) { return coeffs({4, 0, -2 * x[2]}); },
          [](const Vector&) {
            return Matrix(Eigen::Vector3d(0, 0, -2).asDiagonal());
          }})
      .build();
}

NlpProblem hs76() {
  Matrix H(4, 4);
  H << 2, 0, -1, 0, 0, 1, 0, 0, -1, 0, 2, 1, 0, 0, 1, 1;
  return ProblemBuilder("hs76", coeffs({0.5, 0.5, 0.5, 0.5}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return x[0] * x[0] + 0.5 * x[1] * x[1] + x[2] * x[2] +
                   0.5 * x[3] * x[3] - x[0] * x[2] + x[2] * x[3] - x[0] -
                   3 * x[1] + x[2] - x[3];
          },
          [](const Vector& x) {
            return coeffs({2 * x[0] - x[2] - 1, x[1] - 3,
                           2 * x[2] - x[0] + x[3] + 1, x[3] + x[2] - 1});
          },
          H))
      .linear_inequality(coeffs({1, 2, 1, 1}), -5)
      .linear_inequality(coeffs({3, 1, 2, -1}), -4)
      .linear_inequality(coeffs({0, -1, -4, 0}), 1.5)
      .lower_bound(0, 0)
      .lower_bound(1, 0)
      .lower_bound(2, 0)
      .lower_bound(3, 0)
      .build();
}

NlpProblem hs100() {
  return ProblemBuilder("hs100", coeffs({1, 2, 0, 4, 0, 1, 1}))
      .objective(Term{
          [](const Vector& x) {
            return std::pow(x[0] - 10, 2) + 5 * std::pow(x[1] - 12, 2) +
                   std::pow(x[2], 4) + 3 * std::pow(x[3] - 11, 2) +
                   10 * std::pow(x[4], 6) + 7 * x[5] * x[5] +
                   std::pow(x[6], 4) - 4 * x[5] * x[6] - 10 * x[5] - 8 * x[6];
          },
          [](const Vector& x) {
            return coeffs({2 * (x[0] - 10), 10 * (x[1] - 12),
                           4 * std::pow(x[2], 3), 6 * (x[3] - 11),
                           60 * std::pow(x[4], 5), 14 * x[5] - 4 * x[6] - 10,
                           4 * std::pow(x[6], 3) - 4 * x[5] - 8});
          },
          [](const Vector& x) {
            Matrix h = Matrix::Zero(7, 7);
            h(0, 0) = 2;
            h(1, 1) = 10;
            h(2, 2) = 12 * x[2] * x[2];
            h(3, 3) = 6;
            h(4, 4) = 300 * std::pow(x[4], 4);
            h(5, 5) = 14;
            h(6, 6) = 12 * x[6] * x[6];
            h(5, 6) = h(6, 5) = -4;
            return h;
          }})
      .inequality(Term{
          [](const Vector& x) {
            return 2 * x[0] * x[0] + 3 * std::pow(x[1], 4) + x[2] +
                   4 * x[3] * x[3] + 5 * x[4] - 127;
          },
          [](const Vector& x) {
            return coeffs({4 * x[0], 12 * std::pow(x[1], 3), 1, 8 * x[3], 5, 0,
                           0});
          },
          [](const Vector& x) {
            Matrix h = Matrix::Zero(7, 7);
            h(0, 0) = 4;
            h(1, 1) = 36 * x[1] * x[1];
            h(3, 3) = 8;
            return h;
          }})
      .inequality(Term{
          [](const Vector& x) {
            return 7 * x[0] + 3 * x[1] + 10 * x[2] * x[2] + x[3] - x[4] - 282;
          },
          [](const Vector& x) {
            return coeffs({7, 3, 20 * x[2], 1, -1, 0, 0});
          },
          [](const Vector&) {
            Matrix h = Matrix::Zero(7, 7);
            h(2, 2) = 20;
            return h;
          }})
      .inequality(Term{
          [](const Vector& x) {
            return 23 * x[0] + x[1] * x[1] + 6 * x[5] * x[5] - 8 * x[6] - 196;
          },
          [](const Vector& x) {
            return coeffs({23, 2 * x[1], 0, 0, 0, 12 * x[5], -8});
          },
          [](const Vector&) {
            Matrix h = Matrix::Zero(7, 7);
            h(1, 1) = 2;
            h(5, 5) = 12;
            return h;
          }})
      .inequality(Term{
          [](const Vector& x) {
            return 4 * x[0] * x[0] + x[1] * x[1] - 3 * x[0] * x[1] +
                   2 * x[2] * x[2] + 5 * x[5] - 11 * x[6];
          },
          [](const Vector& x) {
            return coeffs({8 * x[0] - 3 * x[1], 2 * x[1] - 3 * x[0], 4 * x[2],
                           0, 0, 5, -11});
          },
          [](const Vector&) {
            Matrix h = Matrix::Zero(7, 7);
            h(0, 0) = 8;
            h(1, 1) = 2;
            h(0, 1) = h(1, 0) = -3;
            h(2, 2) = 4;
            return h;
          }})
      .build();
}

NlpProblem hs113() {
  Matrix H = Matrix::Zero(10, 10);
  H(0, 0) = 2;
  H(1, 1) = 2;
  H(0, 1) = H(1, 0) = 1;
  const double tail[] = {2, 8, 2, 4, 10, 14, 4, 2};
  for (int i = 0; i < 8; ++i) {
    H(i + 2, i + 2) = tail[i];
  }
  auto sparse_hess = [](std::initializer_list<std::pair<int, double>> diag,
                        double off01 = 0.0) {
    Matrix h = Matrix::Zero(10, 10);
    for (auto [i, v] : diag) {
      h(i, i) = v;
    }
    h(0, 1) = h(1, 0) = off01;
    return h;
  };
  auto grad10 = [](std::initializer_list<std::pair<int, double>> entries) {
    Vector g = Vector::Zero(10);
    for (auto [i, v] : entries) {
      g[i] = v;
    }
    return g;
  };
  return ProblemBuilder("hs113", coeffs({2, 3, 5, 5, 1, 2, 7, 3, 6, 10}))
      .objective(quadratic_objective(
          [](const Vector& x) {
            return x[0] * x[0] + x[1] * x[1] + x[0] * x[1] - 14 * x[0] -
                   16 * x[1] + std::pow(x[2] - 10, 2) +
                   4 * std::pow(x[3] - 5, 2) + std::pow(x[4] - 3, 2) +
                   2 * std::pow(x[5] - 1, 2) + 5 * x[6] * x[6] +
                   7 * std::pow(x[7] - 11, 2) + 2 * std::pow(x[8] - 10, 2) +
                   std::pow(x[9] - 7, 2) + 45;
          },
          [](const Vector& x) {
            return coeffs({2 * x[0] + x[1] - 14, 2 * x[1] + x[0] - 16,
                           2 * (x[2] - 10), 8 * (x[3] - 5), 2 * (x[4] - 3),
                           4 * (x[5] - 1), 10 * x[6], 14 * (x[7] - 11),
                           4 * (x[8] - 10), 2 * (x[9] - 7)});
          },
          H))
      .linear_inequality(grad10({{0, 4}, {1, 5}, {6, -3}, {7, 9}}), -105)
      .linear_inequality(grad10({{0, 10}, {1, -8}, {6, -17}, {7, 2}}), 0)
      .linear_inequality(grad10({{0, -8}, {1, 2}, {8, 5}, {9, -2}}), -12)
      .inequality(Term{
          [](const Vector& x) {
            return 3 * std::pow(x[0] - 2, 2) + 4 * std::pow(x[1] - 3, 2) +
                   2 * x[2] * x[2] - 7 * x[3] - 120;
          },
          [grad10](const Vector& x) {
            return grad10({{0, 6 * (x[0] - 2)},
                           {1, 8 * (x[1] - 3)},
                           {2, 4 * x[2]},
                           {3, -7}});
          },
          [sparse_hess](const Vector&) {
            return sparse_hess({{0, 6}, {1, 8}, {2, 4}});
          }})
      .inequality(Term{
          [](const Vector& x) {
            return 5 * x[0] * x[0] + 8 * x[1] + std::pow(x[2] - 6, 2) -
                   2 * x[3] - 40;
          },
          [grad10](const Vector& x) {
            return grad10(
                {{0, 10 * x[0]}, {1, 8}, {2, 2 * (x[2] - 6)}, {3, -2}});
          },
          [sparse_hess](const Vector&) {
            return sparse_hess({{0, 10}, {2, 2}});
          }})
      .inequality(Term{
          [](const Vector& x) {
            return 0.5 * std::pow(x[0] - 8, 2) + 2 * std::pow(x[1] - 4, 2) +
                   3 * x[4] * x[4] - x[5] - 30;
          },
          [grad10](const Vector& x) {
            return grad10({{0, x[0] - 8},
                           {1, 4 * (x[1] - 4)},
                           {4, 6 * x[4]},
                           {5, -1}});
          },
          [sparse_hess](const Vector&) {
            return sparse_hess({{0, 1}, {1, 4}, {4, 6}});
          }})
      .inequality(Term{
          [](const Vector& x) {
            return x[0] * x[0] + 2 * std::pow(x[1] - 2, 2) -
                   2 * x[0] * x[1] + 14 * x[4] - 6 * x[5];
          },
          [grad10](const Vector& x) {
            return grad10({{0, 2 * x[0] - 2 * x[1]},
                           {1, 4 * (x[1] - 2) - 2 * x[0]},
                           {4, 14},
                           {5, -6}});
          },
          [sparse_hess](const Vector&) {
            return sparse_hess({{0, 2}, {1, 4}}, -2);
          }})
      .inequality(Term{
          [](const Vector& x) {
            return -3 * x[0] + 6 * x[1] + 12 * std::pow(x[8] - 8, 2) -
                   7 * x[9];
          },
          [grad10](const Vector& x) {
            return grad10({{0, -3}, {1, 6}, {8, 24 * (x[8] - 8)}, {9, -7}});
          },
          [sparse_hess](const Vector&) { return sparse_hess({{8, 24}}); }})
      .build();
}

using Factory = NlpProblem (*)();

const std::vector<std::pair<std::string, Factory>>& hs_factories() {
  static const std::vector<std::pair<std::string, Factory>> table = {
      {"hs11", hs11},   {"hs14", hs14}, {"hs21", hs21}, {"hs28", hs28},
      {"hs32", hs32},   {"hs35", hs35}, {"hs41", hs41}, {"hs43", hs43},
      {"hs48", hs48},   {"hs51", hs51}, {"hs52", hs52}, {"hs61", hs61},
      {"hs76", hs76},   {"hs100", hs100}, {"hs113", hs113},
  };
  return table;
}

constexpr std::string_view kInfeasibleSuffix = "_inf";
constexpr std::string_view kSyntheticName = "synth500";

}  // namespace

const std::vector<std::string>& feasible_problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, factory] : hs_factories()) {
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

std::vector<std::string> infeasible_problem_names() {
  std::vector<std::string> out;
  for (const auto& name : feasible_problem_names()) {
    out.push_back(name + std::string(kInfeasibleSuffix));
  }
  return out;
}

std::vector<std::string> problem_names() {
  std::vector<std::string> out = feasible_problem_names();
  for (auto& name : infeasible_problem_names()) {
    out.push_back(std::move(name));
  }
  out.emplace_back(kSyntheticName);
  return out;
}

NlpProblem get_problem(std::string_view name) {
  if (name == kSyntheticName) {
    NlpProblem p = make_random_convex_problem(500, 300, 150, 20240917);
    p.name = std::string(kSyntheticName);
    return p;
  }
  std::string_view base = name;
  bool infeasible = false;
  if (base.size() > kInfeasibleSuffix.size() &&
      base.substr(base.size() - kInfeasibleSuffix.size()) ==
          kInfeasibleSuffix) {
    base.remove_suffix(kInfeasibleSuffix.size());
    infeasible = true;
  }
  for (const auto& [key, factory] : hs_factories()) {
    if (key == base) {
      NlpProblem p = factory();
      return infeasible ? make_infeasible(p) : p;
    }
  }
  std::string message = "unknown problem '" + std::string(name) +
                        "'; available:";
  for (const auto& known : problem_names()) {
    message += " " + known;
  }
  throw UnknownProblemError(message);
}

NlpProblem make_random_convex_problem(int n, int m, int m_eq,
                                      std::uint64_t seed) {
  if (n < 1 || m < 0 || m_eq < 0 || m_eq > m) {
    throw std::invalid_argument("make_random_convex_problem: bad dimensions");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_int_distribution<int> column(0, n - 1);

  Vector curvature(n);
  Vector linear(n);
  for (int j = 0; j < n; ++j) {
    curvature[j] = 1.0 + (unit(rng) + 1.0);  // in [1, 3]
    linear[j] = 2.0 * unit(rng);
  }
  Vector reference(n);
  for (int j = 0; j < n; ++j) {
    reference[j] = unit(rng);
  }

  // Sparse rows with a handful of entries each; every other inequality is
  // active at the reference point.
  constexpr int kRowNnz = 8;
  Matrix A = Matrix::Zero(m, n);
  Vector b(m);
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < kRowNnz; ++k) {
      A(i, column(rng)) += unit(rng);
    }
    double slack = 0.0;
    if (i >= m_eq && (i - m_eq) % 2 == 1) {
      slack = 0.5 * (unit(rng) + 1.0);
    }
    b[i] = -A.row(i).dot(reference) - slack;
  }

  constexpr double kQuartic = 0.025;
  NlpProblem p;
  p.name = "random_convex";
  p.n = n;
  p.m = m;
  p.m_eq = m_eq;
  p.x0 = Vector::Zero(n);
  p.objective = [curvature, linear](const Vector& x) {
    return 0.5 * x.cwiseProduct(x).dot(curvature) + linear.dot(x) +
           kQuartic * x.array().pow(4).sum();
  };
  p.gradient = [curvature, linear](const Vector& x) {
    return Vector(curvature.cwiseProduct(x) + linear +
                  4.0 * kQuartic * x.array().cube().matrix());
  };
  p.objective_hessian = [curvature](const Vector& x) {
    return Matrix(
        (curvature.array() + 12.0 * kQuartic * x.array().square())
            .matrix()
            .asDiagonal());
  };
  p.constraints = [A, b](const Vector& x) { return Vector(A * x + b); };
  p.jacobian = [A](const Vector&) { return A; };
  p.constraint_hessian = [n](const Vector&, int) {
    return Matrix(Matrix::Zero(n, n));
  };
  p.validate();
  return p;
}

}  // namespace dustsqp
