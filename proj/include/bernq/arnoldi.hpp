#pragma once

#include <Eigen/Core>

#include "bernq/banded.hpp"

namespace bernq {

struct ArnoldiOptions {
  /// A second Gram-Schmidt pass per step. Off by default so the loss of
  /// orthogonality stays visible.
  bool reorthogonalize = false;
  /// Happy breakdown when h_{j+1,j} <= breakdown_tolerance * ||A||_1.
  double breakdown_tolerance = 1e-14;
};

// A V_j = V_j H_j + h_next v_next e_j^T, V_j e_1 = f / beta.
struct KrylovDecomposition {
  Eigen::MatrixXd V;       // s x j
  Eigen::MatrixXd H;       // j x j, upper Hessenberg
  double beta = 0.0;       // ||f||_2
  double h_next = 0.0;     // h_{j+1,j}; zero after a breakdown
  Eigen::VectorXd v_next;  // v_{j+1}; empty after a breakdown
  bool breakdown = false;

  int steps() const { return static_cast<int>(H.cols()); }
};

/**
 * Incremental modified Gram-Schmidt Arnoldi.
 *
 * Each step() adds one basis vector; decomposition() snapshots the current
 * state. Once a breakdown occurs, or the basis spans the whole space,
 * step() returns false and leaves the state unchanged.
 */
class ArnoldiProcess {
 public:
  ArnoldiProcess(const BandedOperator& a, const Eigen::VectorXd& f,
                 ArnoldiOptions options = {});

  bool step();
  int steps() const { return j_; }
  bool finished() const { return breakdown_ || j_ == a_.size(); }
  KrylovDecomposition decomposition() const;

 private:
  const BandedOperator& a_;
  ArnoldiOptions options_;
  double beta_ = 0.0;
  double threshold_ = 0.0;
  int j_ = 0;
  bool breakdown_ = false;
  Eigen::MatrixXd basis_;  // s x (capacity), columns 0 ... j_ are live
  Eigen::MatrixXd hess_;   // (capacity + 1) x capacity
};

/// j Arnoldi steps from f (fewer if a breakdown occurs first).
KrylovDecomposition arnoldi_extend(const BandedOperator& a,
                                   const Eigen::VectorXd& f, int j,
                                   ArnoldiOptions options = {});

/// y_j = V_j (e^{H_j} - I) \ (e^{tau H_j} H_j e_1 beta), with e^{H_j} - I
/// formed by explicit subtraction.
Eigen::VectorXd arnoldi_q_approx(const KrylovDecomposition& dec, double tau);

/// ||V_j^T V_j - I||_F.
double orthogonality_loss(const KrylovDecomposition& dec);

/// ||A V_j - V_j H_j - h_next v_next e_j^T||_F.
double arnoldi_residual(const BandedOperator& a, const KrylovDecomposition& dec);

}  // namespace bernq
