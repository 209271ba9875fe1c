#include "dustsqp/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dustsqp {
namespace {

constexpr double kCurvatureGuard = 1e-8;

Eigen::FullPivLU<Matrix> checked_lu(const Matrix& k, const char* what) {
  Eigen::FullPivLU<Matrix> lu(k);
  if (k.size() > 0 && !lu.isInvertible()) {
    throw HessianError(std::string(what) + " is singular");
  }
  return lu;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

Matrix build_exact_modified(const Matrix& h_raw, double tau_eig,
                            double t_cond) {
  if (!(tau_eig > 0.0) || !(t_cond >= 1.0)) {
    throw std::invalid_argument(
        "build_exact_modified: need tau_eig > 0 and t_cond >= 1");
  }
  if (h_raw.rows() != h_raw.cols()) {
    throw std::invalid_argument("build_exact_modified: matrix not square");
  }
  if (!h_raw.allFinite()) {
    throw HessianError("Hessian has nonfinite entries");
  }
  const Matrix sym = 0.5 * (h_raw + h_raw.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) {
    throw HessianError("eigendecomposition failed");
  }
  Vector lambda = eig.eigenvalues().cwiseMax(tau_eig);
  const double lo = lambda.minCoeff();
  const double hi = lambda.maxCoeff();
  if (hi > t_cond * lo) {
    const double alpha = (t_cond - 1.0) / (hi - t_cond * lo + t_cond - 1.0);
    lambda = (alpha * lambda.array() + (1.0 - alpha)).matrix();
  }
  const Matrix& u = eig.eigenvectors();
  Matrix out = u * lambda.asDiagonal() * u.transpose();
  return 0.5 * (out + out.transpose());
}

CompactFactors lbfgs_update(const std::vector<CurvaturePair>& history,
                            int memory, int n, double fallback_scale) {
  CompactFactors out;
  out.scale = fallback_scale;
  out.basis = Matrix::Zero(n, 0);
  out.middle = Matrix::Zero(0, 0);

  std::vector<const CurvaturePair*> kept;
  for (auto it = history.rbegin(); it != history.rend(); ++it) {
    const double sy = it->s.dot(it->y);
    if (!(sy > kCurvatureGuard * it->s.norm() * it->y.norm())) {
      ++out.skipped;
      continue;
    }
    if (static_cast<int>(kept.size()) < memory) {
      kept.push_back(&*it);
    }
  }
  if (kept.empty()) {
    return out;
  }
  std::reverse(kept.begin(), kept.end());
  const int k = static_cast<int>(kept.size());
  Matrix s(n, k);
  Matrix y(n, k);
  for (int j = 0; j < k; ++j) {
    s.col(j) = kept[j]->s;
    y.col(j) = kept[j]->y;
  }
  const Vector& s_new = kept.back()->s;
  const Vector& y_new = kept.back()->y;
  const double delta = y_new.squaredNorm() / s_new.dot(y_new);

  const Matrix sty = s.transpose() * y;
  Matrix lower = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < i; ++j) {
      lower(i, j) = sty(i, j);
    }
  }
  Matrix m(2 * k, 2 * k);
  m << delta * s.transpose() * s, lower, lower.transpose(),
      -Matrix(sty.diagonal().asDiagonal());

  out.scale = delta;
  out.basis = hcat(delta * s, y);
  out.middle = -m;
  return out;
}

HessianModel HessianModel::dense(Matrix h_f, Matrix h_0, double rho) {
  if (!(rho >= 0.0)) {
    throw std::invalid_argument("HessianModel: rho must be >= 0");
  }
  if (h_f.rows() != h_f.cols() || h_0.rows() != h_0.cols() ||
      h_f.rows() != h_0.rows()) {
    throw std::invalid_argument("HessianModel: dimension mismatch");
  }
  HessianModel h;
  h.backend_ = HessianBackend::ExactModified;
  h.n_ = static_cast<int>(h_f.rows());
  h.rho_ = rho;
  h.h_f_ = std::move(h_f);
  h.h_0_ = std::move(h_0);
  h.factor_dense();
  return h;
}

void HessianModel::factor_dense() {
  llt_rho_.compute(rho_ * h_f_ + h_0_);
  if (llt_rho_.info() != Eigen::Success) {
    throw HessianError("H_rho is not positive definite");
  }
  llt_0_.compute(h_0_);
  if (llt_0_.info() != Eigen::Success) {
    throw HessianError("H_0 is not positive definite");
  }
}

HessianModel HessianModel::from_factors(double sigma, Matrix psi,
                                        Matrix sigma_mat, double gamma,
                                        Matrix phi, Matrix gamma_mat,
                                        double rho) {
  if (!(sigma > 0.0) || !(gamma > 0.0) || !(rho > 0.0)) {
    throw std::invalid_argument(
        "HessianModel: sigma, gamma and rho must be positive");
  }
  const auto n = psi.rows() > 0 ? psi.rows() : phi.rows();
  if (psi.cols() != sigma_mat.rows() || sigma_mat.rows() != sigma_mat.cols() ||
      phi.cols() != gamma_mat.rows() || gamma_mat.rows() != gamma_mat.cols() ||
      (psi.cols() > 0 && phi.cols() > 0 && psi.rows() != phi.rows())) {
    throw std::invalid_argument("HessianModel: factor dimension mismatch");
  }
  HessianModel h;
  h.backend_ = HessianBackend::LowRank;
  h.n_ = static_cast<int>(n);
  h.rho_ = rho;
  h.base_rho_ = rho;
  h.tau_ = 1.0;
  h.sigma_ = sigma;
  h.psi_ = std::move(psi);
  h.sigma_mat_ = std::move(sigma_mat);
  h.gamma_ = gamma;
  h.phi_ = std::move(phi);
  h.gamma_mat_ = std::move(gamma_mat);
  h.factor_low_rank();
  return h;
}

HessianModel HessianModel::low_rank(const CompactFactors& h_f,
                                    const CompactFactors& h_0, double rho) {
  if (!(rho > 0.0)) {
    throw std::invalid_argument("HessianModel: rho must be positive");
  }
  const auto n = h_f.basis.rows();
  if (h_0.basis.rows() != n) {
    throw std::invalid_argument("HessianModel: dimension mismatch");
  }
  HessianModel h = from_factors(
      rho * h_f.scale + h_0.scale, hcat(h_f.basis, h_0.basis),
      block_diag(h_f.middle / rho, h_0.middle), h_0.scale, h_0.basis,
      h_0.middle, rho);
  h.n_ = static_cast<int>(n);
  return h;
}

void HessianModel::factor_low_rank() {
  if (psi_.rows() == 0) {
    psi_ = Matrix::Zero(n_, 0);
  }
  if (phi_.rows() == 0) {
    phi_ = Matrix::Zero(n_, 0);
  }
  sigma_lu_ = checked_lu(sigma_mat_, "Sigma");
  gamma_lu_ = checked_lu(gamma_mat_, "Gamma");

  inv_0_.scale = gamma_;
  inv_0_.U = phi_;
  if (phi_.cols() > 0) {
    const Matrix k1 = gamma_ * gamma_mat_ + phi_.transpose() * phi_;
    inv_0_.V = checked_lu(k1, "gamma*Gamma + Phi^T Phi")
                   .solve(Matrix(phi_.transpose()))
                   .transpose();
  } else {
    inv_0_.V = Matrix::Zero(n_, 0);
  }

  if (tau_ == 1.0) {
    inv_rho_.scale = sigma_;
    inv_rho_.U = psi_;
    if (psi_.cols() > 0) {
      const Matrix k2 = sigma_ * sigma_mat_ + psi_.transpose() * psi_;
      inv_rho_.V = checked_lu(k2, "sigma*Sigma + Psi^T Psi")
                       .solve(Matrix(psi_.transpose()))
                       .transpose();
    } else {
      inv_rho_.V = Matrix::Zero(n_, 0);
    }
    return;
  }

  const double sbar = tau_ * sigma_ + (1.0 - tau_) * gamma_;
  Matrix v_psi = Matrix::Zero(n_, 0);
  if (psi_.cols() > 0) {
    const Matrix k3 = (sbar / tau_) * sigma_mat_ + psi_.transpose() * psi_;
    v_psi = checked_lu(k3, "Theta_3 system")
                .solve(Matrix(psi_.transpose()))
                .transpose();
  }
  // G = H_tau^{-1} Phi
  Matrix g = (phi_ - psi_ * (v_psi.transpose() * phi_)) / sbar;
  Matrix v_phi = Matrix::Zero(n_, 0);
  if (phi_.cols() > 0) {
    const Matrix k4 = gamma_mat_ / (1.0 - tau_) + phi_.transpose() * g;
    v_phi = checked_lu(k4, "Theta_4 system")
                .solve(Matrix(g.transpose()))
                .transpose();
  }
  inv_rho_.scale = sbar;
  inv_rho_.U = hcat(psi_, sbar * g);
  inv_rho_.V = hcat(v_psi, v_phi);
}

Vector HessianModel::apply(const Vector& z) const {
  if (backend_ == HessianBackend::ExactModified) {
    return rho_ * (h_f_ * z) + h_0_ * z;
  }
  Vector out = sigma_ * z;
  if (psi_.cols() > 0) {
    out += psi_ * sigma_lu_.solve(Vector(psi_.transpose() * z));
  }
  if (tau_ == 1.0) {
    return out;
  }
  return tau_ * out + (1.0 - tau_) * apply_h0(z);
}

Vector HessianModel::apply_h0(const Vector& z) const {
  if (backend_ == HessianBackend::ExactModified) {
    return h_0_ * z;
  }
  Vector out = gamma_ * z;
  if (phi_.cols() > 0) {
    out += phi_ * gamma_lu_.solve(Vector(phi_.transpose() * z));
  }
  return out;
}

Vector HessianModel::inverse_apply(const Vector& z) const {
  if (backend_ == HessianBackend::ExactModified) {
    return llt_rho_.solve(z);
  }
  return (z - inv_rho_.U * (inv_rho_.V.transpose() * z)) / inv_rho_.scale;
}

Vector HessianModel::inverse_apply_h0(const Vector& z) const {
  if (backend_ == HessianBackend::ExactModified) {
    return llt_0_.solve(z);
  }
  return (z - inv_0_.U * (inv_0_.V.transpose() * z)) / inv_0_.scale;
}

HessianModel HessianModel::rescale_rho(double rho_bar) const {
  if (!(rho_bar > 0.0) || rho_bar > rho_ * (1.0 + 1e-15)) {
    throw std::invalid_argument("rescale_rho: need 0 < rho_bar <= rho");
  }
  if (rho_bar == rho_) {
    return *this;
  }
  if (backend_ == HessianBackend::ExactModified) {
    return dense(h_f_, h_0_, rho_bar);
  }
  HessianModel h = *this;
  h.rho_ = rho_bar;
  h.tau_ = rho_bar / base_rho_;
  h.factor_low_rank();
  return h;
}

const InverseFactors& HessianModel::inverse_factors() const {
  if (backend_ != HessianBackend::LowRank) {
    throw std::logic_error("inverse_factors: dense model");
  }
  return inv_rho_;
}

const InverseFactors& HessianModel::inverse_factors_h0() const {
  if (backend_ != HessianBackend::LowRank) {
    throw std::logic_error("inverse_factors_h0: dense model");
  }
  return inv_0_;
}

double HessianModel::sigma_bar() const {
  return tau_ * sigma_ + (1.0 - tau_) * gamma_;
}

Matrix HessianModel::dense_matrix() const {
  if (backend_ == HessianBackend::ExactModified) {
    return rho_ * h_f_ + h_0_;
  }
  Matrix out = sigma_ * Matrix::Identity(n_, n_);
  if (psi_.cols() > 0) {
    out += psi_ * sigma_lu_.solve(Matrix(psi_.transpose()));
  }
  if (tau_ != 1.0) {
    out = tau_ * out + (1.0 - tau_) * dense_h0();
  }
  return 0.5 * (out + out.transpose());
}

Matrix HessianModel::dense_h0() const {
  if (backend_ == HessianBackend::ExactModified) {
    return h_0_;
  }
  Matrix out = gamma_ * Matrix::Identity(n_, n_);
  if (phi_.cols() > 0) {
    out += phi_ * gamma_lu_.solve(Matrix(phi_.transpose()));
  }
  return 0.5 * (out + out.transpose());
}

EigenBounds eigen_bounds(const HessianModel& h) {
  auto dense_bounds = [](const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
    return EigenBounds{eig.eigenvalues().minCoeff(),
                       eig.eigenvalues().maxCoeff()};
  };
  if (h.backend() == HessianBackend::ExactModified) {
    return dense_bounds(h.dense_matrix());
  }
  // H_rho = sbar*I + W C W^T, reduced through a thin QR of W.
  const InverseFactors& inv = h.inverse_factors();
  const double sbar = h.sigma_bar();
  const int k = static_cast<int>(inv.U.cols());
  const int n = h.n();
  if (k == 0) {
    return {sbar, sbar};
  }
  if (k >= n) {
    return dense_bounds(h.dense_matrix());
  }
  // Low-rank part of H_rho projected on span(U); U spans Psi and Phi.
  Eigen::HouseholderQR<Matrix> qr(inv.U);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  Matrix hq(n, k);
  for (int j = 0; j < k; ++j) {
    hq.col(j) = h.apply(q.col(j));
  }
  Matrix reduced = q.transpose() * hq - sbar * Matrix::Identity(k, k);
  reduced = 0.5 * (reduced + reduced.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(reduced, Eigen::EigenvaluesOnly);
  const double lo = std::min(0.0, eig.eigenvalues().minCoeff());
  const double hi = std::max(0.0, eig.eigenvalues().maxCoeff());
  return {sbar + lo, sbar + hi};
}

}  // namespace dustsqp
