#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dustsqp/hessian.hpp"
#include "dustsqp/penalty_models.hpp"

namespace dustsqp {

/// Dual box: [-1, 1] for equality rows, [0, 1] for inequality rows.
struct Box {
  Vector lower;
  Vector upper;

  static Box for_rows(int m, int m_eq);
  Vector clip(const Vector& x) const;
  bool contains(const Vector& x) const;
};

/**
 * D(mult, rho) = -1/2 (rho g + A^T mult)^T H^{-1} (rho g + A^T mult) + mult^T b
 * with H = H_rho for rho > 0 (rho must equal h.rho()) and H_0 for rho = 0.
 */
double dual_objective(const Vector& mult, double rho, const SubproblemData& sd,
                      const HessianModel& h);

/// d = -H^{-1} (rho g + A^T mult).
Vector primal_recover(const Vector& mult, double rho, const SubproblemData& sd,
                      const HessianModel& h);

/**
 * Maximizer over [lo, hi] of the concave quadratic with the given slope and
 * curvature -diag at `current`. diag <= 0 means a flat direction: the result
 * is lo, current or hi by the sign of the slope.
 */
double coordinate_maximizer(double current, double partial, double diag,
                            double lo, double hi);

/**
 * One block of dual multipliers with incremental caches. Dense models keep
 * W = H^{-1} A^T and the primal step; low-rank models keep v = rho g + A^T mult
 * and p = V^T v so each coordinate touches O(n + rank) numbers.
 *
 * The referenced SubproblemData must outlive the block.
 */
class DualBlock {
 public:
  DualBlock(const SubproblemData& sd, const HessianModel& h, double rho,
            Vector mult);

  /// New Hessian (and rho) for the same data; multipliers are kept.
  void rebind(const HessianModel& h, double rho);
  /// Replace the multipliers and rebuild caches.
  void reset(const Vector& mult);

  double partial(int i) const;
  double diagonal(int i) const;
  /// Coordinate step on row i; returns the change in mult_i.
  double update(int i);
  void sweep(const std::vector<int>& order);

  Vector step() const;
  double objective() const;
  /// Largest mismatch between the incremental caches and a recomputation.
  double drift() const;
  /// Number of doubles held in matrix caches.
  Eigen::Index cached_entries() const {
    return at_.size() + w_.size() + u_.size() + qt_.size() + qvt_.size();
  }

  const Vector& mult() const { return mult_; }
  double rho() const { return rho_; }

 private:
  void build_caches();

  const SubproblemData* sd_;
  bool low_rank_ = false;
  double rho_ = 0.0;
  Vector mult_;
  Box box_;
  Matrix at_;  // n x m
  Vector diag_;

  // dense
  Matrix w_;
  Vector hg_;
  Vector d_;

  // shared
  Vector v_;

  // low rank
  double scale_ = 1.0;
  Matrix u_;
  Matrix qt_;   // U^T A^T
  Matrix qvt_;  // V^T A^T
  Vector vg_;  // V^T rho g
  Vector p_;
};

struct DualIterate {
  Vector zeta;
  Vector lambda;
  Vector best_w;
  double d_best_w = 0.0;
};

struct DualQpOptions {
  bool reuse_zeta_for_lambda = false;
  bool shuffle = false;
  std::uint64_t seed = 0;
};

/**
 * Coordinate ascent on the penalty dual D(., rho) and the feasibility dual
 * D(., 0), one pass over each per sweep, with a running best feasibility
 * multiplier w.
 */
class DualQpSolver {
 public:
  DualQpSolver(const SubproblemData& sd, const HessianModel& h,
               const DualIterate& warm, DualQpOptions opts = {});

  void sweep();
  void set_hessian(const HessianModel& h);

  const Vector& zeta() const { return zeta_block_.mult(); }
  const Vector& lambda() const { return lambda_block_.mult(); }
  const Vector& best_w() const { return best_w_; }
  double best_w_value() const { return d_best_w_; }
  double penalty_dual() const { return zeta_block_.objective(); }
  double feasibility_dual() const { return lambda_block_.objective(); }
  double rho() const { return zeta_block_.rho(); }
  int sweeps() const { return sweeps_; }

  Vector step() const { return zeta_block_.step(); }
  double drift() const;
  DualIterate iterate() const;

 private:
  std::vector<int> next_order();

  DualQpOptions opts_;
  DualBlock zeta_block_;
  DualBlock lambda_block_;
  Vector best_w_;
  double d_best_w_ = 0.0;
  int sweeps_ = 0;
  std::vector<int> order_;
  std::mt19937_64 rng_;
};

struct DualPair {
  Vector d;
  double J = 0.0;
  bool zero_step = false;
};

/// d if J(d, rho) <= J(0, rho), the zero step otherwise.
DualPair sufficient_dual_pair(const Vector& d, double rho,
                              const SubproblemData& sd, const HessianModel& h);

}  // namespace dustsqp
