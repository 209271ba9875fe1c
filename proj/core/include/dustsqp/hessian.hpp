#pragma once

#include <vector>

#include <Eigen/Dense>

#include "dustsqp/types.hpp"

namespace dustsqp {

/**
 * Eigenvalue-clipped copy of a symmetric matrix: every eigenvalue is raised
 * to at least tau_eig and, if the condition number still exceeds t_cond,
 * the result is blended with the identity as alpha*H + (1-alpha)*I using
 * the largest alpha that meets the bound.
 */
Matrix build_exact_modified(const Matrix& h_raw, double tau_eig,
                            double t_cond);

struct CurvaturePair {
  Vector s;
  Vector y;
};

/// H = scale*I + basis * middle^{-1} * basis^T.
struct CompactFactors {
  double scale = 1.0;
  Matrix basis;
  Matrix middle;
  int skipped = 0;
};

/**
 * Compact BFGS factors from the newest `memory` usable pairs of `history`
 * (oldest first). Pairs with <s,y> <= 1e-8 |s||y| are skipped. The scale is
 * <y,y>/<s,y> of the newest accepted pair, or fallback_scale if none.
 */
CompactFactors lbfgs_update(const std::vector<CurvaturePair>& history,
                            int memory, int n, double fallback_scale = 1.0);

/// H^{-1} = (I - U V^T) / scale.
struct InverseFactors {
  double scale = 1.0;
  Matrix U;
  Matrix V;
};

enum class HessianBackend { ExactModified, LowRank };

/**
 * Positive definite pair H_0 and H_rho = rho*H_f + H_0.
 *
 * Dense models keep H_f and H_0 explicitly. Low-rank models keep
 *   H_rho = sigma*I + Psi Sigma^{-1} Psi^T,   H_0 = gamma*I + Phi Gamma^{-1} Phi^T
 * at a base penalty parameter; rescale_rho moves to a smaller one without
 * refactoring.
 */
class HessianModel {
 public:
  HessianModel() = default;

  static HessianModel dense(Matrix h_f, Matrix h_0, double rho);

  static HessianModel from_factors(double sigma, Matrix psi, Matrix sigma_mat,
                                   double gamma, Matrix phi, Matrix gamma_mat,
                                   double rho);

  /// rho*H_f + H_0 with both parts given in compact form.
  static HessianModel low_rank(const CompactFactors& h_f,
                               const CompactFactors& h_0, double rho);

  HessianBackend backend() const { return backend_; }
  int n() const { return n_; }
  double rho() const { return rho_; }

  Vector apply(const Vector& z) const;
  Vector apply_h0(const Vector& z) const;
  Vector inverse_apply(const Vector& z) const;
  Vector inverse_apply_h0(const Vector& z) const;

  /// Same model at 0 < rho_bar <= rho().
  HessianModel rescale_rho(double rho_bar) const;

  /// Low-rank only.
  const InverseFactors& inverse_factors() const;
  const InverseFactors& inverse_factors_h0() const;

  /// Scalar part of H_rho at the current rho (low-rank only).
  double sigma_bar() const;

  Matrix dense_matrix() const;
  Matrix dense_h0() const;

 private:
  void factor_dense();
  void factor_low_rank();

  HessianBackend backend_ = HessianBackend::ExactModified;
  int n_ = 0;
  double rho_ = 1.0;

  // dense
  Matrix h_f_;
  Matrix h_0_;
  Eigen::LLT<Matrix> llt_rho_;
  Eigen::LLT<Matrix> llt_0_;

  // low rank, at base_rho_
  double base_rho_ = 1.0;
  double tau_ = 1.0;
  double sigma_ = 1.0;
  Matrix psi_;
  Matrix sigma_mat_;
  Eigen::FullPivLU<Matrix> sigma_lu_;
  double gamma_ = 1.0;
  Matrix phi_;
  Matrix gamma_mat_;
  Eigen::FullPivLU<Matrix> gamma_lu_;
  InverseFactors inv_rho_;
  InverseFactors inv_0_;
};

struct EigenBounds {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

/// Extreme eigenvalues of H_rho.
EigenBounds eigen_bounds(const HessianModel& h);

}  // namespace dustsqp
