#include "dustsqp/dual_qp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dustsqp {
namespace {

constexpr double kZeroDiagonal = 1e-14;

void check_rho(double rho, const HessianModel& h) {
  if (rho < 0.0 || (rho > 0.0 && std::abs(rho - h.rho()) > 1e-12 * h.rho())) {
    throw std::invalid_argument("dual: rho must be 0 or the model's rho");
  }
}

Vector h_inverse(double rho, const HessianModel& h, const Vector& z) {
  return rho == 0.0 ? h.inverse_apply_h0(z) : h.inverse_apply(z);
}

}  // namespace

Box Box::for_rows(int m, int m_eq) {
  Box box;
  box.lower = Vector::Zero(m);
  box.upper = Vector::Ones(m);
  box.lower.head(m_eq).setConstant(-1.0);
  return box;
}

Vector Box::clip(const Vector& x) const {
  return x.cwiseMax(lower).cwiseMin(upper);
}

bool Box::contains(const Vector& x) const {
  return x.size() == lower.size() && (x.array() >= lower.array()).all() &&
         (x.array() <= upper.array()).all();
}

double dual_objective(const Vector& mult, double rho, const SubproblemData& sd,
                      const HessianModel& h) {
  check_rho(rho, h);
  const Vector v = rho * sd.g + sd.A.transpose() * mult;
  return -0.5 * v.dot(h_inverse(rho, h, v)) + mult.dot(sd.b);
}

Vector primal_recover(const Vector& mult, double rho, const SubproblemData& sd,
                      const HessianModel& h) {
  check_rho(rho, h);
  return -h_inverse(rho, h, rho * sd.g + sd.A.transpose() * mult);
}

double coordinate_maximizer(double current, double partial, double diag,
                            double lo, double hi) {
  if (diag <= 0.0) {
    if (partial > 0.0) {
      return hi;
    }
    if (partial < 0.0) {
      return lo;
    }
    return current;
  }
  return std::clamp(current + partial / diag, lo, hi);
}

DualBlock::DualBlock(const SubproblemData& sd, const HessianModel& h,
                     double rho, Vector mult)
    : sd_(&sd), mult_(std::move(mult)) {
  box_ = Box::for_rows(sd.rows(), sd.m_eq);
  if (mult_.size() != sd.rows()) {
    throw std::invalid_argument("DualBlock: multiplier size mismatch");
  }
  mult_ = box_.clip(mult_);
  at_ = sd.A.transpose();
  rebind(h, rho);
}

void DualBlock::rebind(const HessianModel& h, double rho) {
  check_rho(rho, h);
  rho_ = rho;
  low_rank_ = h.backend() == HessianBackend::LowRank;
  const int m = sd_->rows();
  diag_.resize(m);
  if (low_rank_) {
    const InverseFactors& inv =
        rho == 0.0 ? h.inverse_factors_h0() : h.inverse_factors();
    scale_ = inv.scale;
    u_ = inv.U;
    qt_ = inv.U.transpose() * at_;
    qvt_ = inv.V.transpose() * at_;
    vg_ = inv.V.transpose() * (rho * sd_->g);
    for (int i = 0; i < m; ++i) {
      diag_[i] = std::max(
          0.0, (at_.col(i).squaredNorm() - qt_.col(i).dot(qvt_.col(i))) /
                   scale_);
    }
    w_.resize(0, 0);
  } else {
    w_.resize(at_.rows(), m);
    for (int i = 0; i < m; ++i) {
      w_.col(i) = h_inverse(rho, h, at_.col(i));
      diag_[i] = at_.col(i).dot(w_.col(i));
    }
    hg_ = h_inverse(rho, h, rho * sd_->g);
  }
  for (int i = 0; i < m; ++i) {
    if (diag_[i] < kZeroDiagonal * (1.0 + at_.col(i).squaredNorm())) {
      diag_[i] = 0.0;
    }
  }
  build_caches();
}

void DualBlock::reset(const Vector& mult) {
  mult_ = box_.clip(mult);
  build_caches();
}

void DualBlock::build_caches() {
  v_ = rho_ * sd_->g + at_ * mult_;
  if (low_rank_) {
    p_ = vg_ + qvt_ * mult_;
  } else {
    d_ = -(hg_ + w_ * mult_);
  }
}

double DualBlock::partial(int i) const {
  if (low_rank_) {
    return -(at_.col(i).dot(v_) - qt_.col(i).dot(p_)) / scale_ + sd_->b[i];
  }
  return at_.col(i).dot(d_) + sd_->b[i];
}

double DualBlock::diagonal(int i) const { return diag_[i]; }

double DualBlock::update(int i) {
  const double old = mult_[i];
  const double next = coordinate_maximizer(old, partial(i), diag_[i],
                                           box_.lower[i], box_.upper[i]);
  const double delta = next - old;
  if (delta == 0.0) {
    return 0.0;
  }
  mult_[i] = next;
  v_ += delta * at_.col(i);
  if (low_rank_) {
    p_ += delta * qvt_.col(i);
  } else {
    d_ -= delta * w_.col(i);
  }
  return delta;
}

void DualBlock::sweep(const std::vector<int>& order) {
  for (int i : order) {
    update(i);
  }
}

Vector DualBlock::step() const {
  if (low_rank_) {
    return -(v_ - u_ * p_) / scale_;
  }
  return d_;
}

double DualBlock::objective() const {
  return 0.5 * v_.dot(step()) + mult_.dot(sd_->b);
}

double DualBlock::drift() const {
  const Vector v = rho_ * sd_->g + at_ * mult_;
  double err = (v - v_).cwiseAbs().maxCoeff();
  if (low_rank_) {
    const Vector p = vg_ + qvt_ * mult_;
    if (p.size() > 0) {
      err = std::max(err, (p - p_).cwiseAbs().maxCoeff());
    }
  } else {
    const Vector d = -(hg_ + w_ * mult_);
    err = std::max(err, (d - d_).cwiseAbs().maxCoeff());
  }
  return err;
}

DualQpSolver::DualQpSolver(const SubproblemData& sd, const HessianModel& h,
                           const DualIterate& warm, DualQpOptions opts)
    : opts_(opts),
      zeta_block_(sd, h, h.rho(),
                  warm.zeta.size() == sd.rows() ? warm.zeta
                                                : Vector(Vector::Zero(sd.rows()))),
      lambda_block_(sd, h, 0.0,
                    opts.reuse_zeta_for_lambda ? zeta_block_.mult()
                                               : Vector(Vector::Zero(sd.rows()))),
      rng_(opts.seed) {
  order_.resize(static_cast<std::size_t>(sd.rows()));
  std::iota(order_.begin(), order_.end(), 0);
  // best of the two starting points under D(., 0)
  const double d_lambda = lambda_block_.objective();
  const double d_zeta = dual_objective(zeta_block_.mult(), 0.0, sd, h);
  if (d_zeta > d_lambda) {
    best_w_ = zeta_block_.mult();
    d_best_w_ = d_zeta;
  } else {
    best_w_ = lambda_block_.mult();
    d_best_w_ = d_lambda;
  }
}

std::vector<int> DualQpSolver::next_order() {
  if (opts_.shuffle) {
    std::shuffle(order_.begin(), order_.end(), rng_);
  }
  return order_;
}

void DualQpSolver::sweep() {
  zeta_block_.sweep(next_order());
  if (opts_.reuse_zeta_for_lambda) {
    lambda_block_.reset(zeta_block_.mult());
  } else {
    lambda_block_.sweep(next_order());
  }
  const double d_lambda = lambda_block_.objective();
  if (d_lambda > d_best_w_) {
    d_best_w_ = d_lambda;
    best_w_ = lambda_block_.mult();
  }
  ++sweeps_;
}

void DualQpSolver::set_hessian(const HessianModel& h) {
  zeta_block_.rebind(h, h.rho());
}

double DualQpSolver::drift() const {
  return std::max(zeta_block_.drift(), lambda_block_.drift());
}

DualIterate DualQpSolver::iterate() const {
  return DualIterate{zeta(), lambda(), best_w_, d_best_w_};
}

DualPair sufficient_dual_pair(const Vector& d, double rho,
                              const SubproblemData& sd,
                              const HessianModel& h) {
  const double j = model_J(d, rho, sd, h);
  if (j <= sd.j0 && d.squaredNorm() > 0.0) {
    return DualPair{d, j, false};
  }
  return DualPair{Vector::Zero(d.size()), sd.j0, true};
}

}  // namespace dustsqp
