#include "bernq/arnoldi.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bernq/errors.hpp"
#include "bernq/matfunc.hpp"

namespace bernq {

ArnoldiProcess::ArnoldiProcess(const BandedOperator& a, const Eigen::VectorXd& f,
                               ArnoldiOptions options)
    : a_(a), options_(options) {
  if (f.size() != a.size()) throw std::invalid_argument("vector dimension does not match the operator");
  beta_ = f.norm();
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    throw std::invalid_argument("Arnoldi needs a nonzero finite starting vector");
  }
  threshold_ = options_.breakdown_tolerance * a.norm1();
  const Eigen::Index s = a.size();
  basis_.resize(s, 1);
  basis_.col(0) = f / beta_;
  hess_ = Eigen::MatrixXd::Zero(1, 0);
}

bool ArnoldiProcess::step() {
  if (finished()) return false;
  const Eigen::Index s = a_.size();
  const int j = j_;  // new column index
  if (basis_.cols() < j + 2) basis_.conservativeResize(s, j + 2);
  hess_.conservativeResize(j + 2, j + 1);
  hess_.row(j + 1).setZero();
  hess_.col(j).setZero();

  Eigen::VectorXd w = a_.apply(basis_.col(j));
  const int passes = options_.reorthogonalize ? 2 : 1;
  for (int pass = 0; pass < passes; ++pass) {
    for (int i = 0; i <= j; ++i) {
      const double h = basis_.col(i).dot(w);
      hess_(i, j) += h;
      w -= h * basis_.col(i);
    }
  }
  const double norm = w.norm();
  hess_(j + 1, j) = norm;
  ++j_;
  if (norm <= threshold_) {
    breakdown_ = true;
    hess_(j + 1, j) = 0.0;
    basis_.col(j + 1).setZero();
  } else {
    basis_.col(j + 1) = w / norm;
  }
  return true;
}

KrylovDecomposition ArnoldiProcess::decomposition() const {
  KrylovDecomposition dec;
  dec.beta = beta_;
  dec.V = basis_.leftCols(j_);
  dec.H = hess_.topLeftCorner(j_, j_);
  dec.breakdown = breakdown_;
  if (j_ > 0 && !breakdown_) {
    dec.h_next = hess_(j_, j_ - 1);
    if (dec.h_next > 0.0) dec.v_next = basis_.col(j_);
  }
  return dec;
}

KrylovDecomposition arnoldi_extend(const BandedOperator& a,
                                   const Eigen::VectorXd& f, int j,
                                   ArnoldiOptions options) {
  if (j < 1 || j > a.size()) throw std::invalid_argument("Arnoldi step count must lie in [1, s]");
  ArnoldiProcess process(a, f, options);
  while (process.steps() < j && process.step()) {
  }
  return process.decomposition();
}

Eigen::VectorXd arnoldi_q_approx(const KrylovDecomposition& dec, double tau) {
  const Eigen::Index j = dec.H.cols();
  if (j < 1) throw std::invalid_argument("empty Krylov decomposition");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(j, j);
  const Eigen::MatrixXd lhs = expm_dense(dec.H) - id;
  Eigen::VectorXd rhs = dec.beta * (expm_dense(tau * dec.H) * dec.H.col(0));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(lhs);
  if (!(lu.rcond() > std::numeric_limits<double>::epsilon())) {
    throw NumericalError("projected e^H - I is numerically singular");
  }
  return dec.V * lu.solve(rhs);
}

double orthogonality_loss(const KrylovDecomposition& dec) {
  const Eigen::Index j = dec.V.cols();
  return (dec.V.transpose() * dec.V - Eigen::MatrixXd::Identity(j, j)).norm();
}

double arnoldi_residual(const BandedOperator& a, const KrylovDecomposition& dec) {
  const Eigen::Index j = dec.V.cols();
  Eigen::MatrixXd r(a.size(), j);
  for (Eigen::Index c = 0; c < j; ++c) r.col(c) = a.apply(dec.V.col(c));
  r -= dec.V * dec.H;
  if (j > 0 && dec.v_next.size() == a.size()) r.col(j - 1) -= dec.h_next * dec.v_next;
  return r.norm();
}

}  // namespace bernq
