#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "bernq/acceleration.hpp"
#include "bernq/banded.hpp"
#include "bernq/fourier.hpp"

namespace bernq {

/// Largest dimension accepted by the dense exponential routines.
inline constexpr Eigen::Index kDenseExpCap = 1024;

/// Solves (A^2 + (2 pi k)^2 I) x = b.
Eigen::VectorXd shifted_solve(const BandedOperator& a, int k,
                              const Eigen::VectorXd& b);

/// h_{p-1}(tau, A) f by Horner's rule in A, using only products with A.
Eigen::VectorXd h_action(const BandedOperator& a, int p, double tau,
                         const Eigen::VectorXd& f);

/// Tail vectors gamma_k^(0)(A) f and delta_k^(0)(A) f for k = first ...
/// first + size - 1. Each delta entry is one product with A (and a 1/(2 pi k)
/// scale) away from the shared solve that produced its gamma entry.
struct VectorSequence {
  int first = 1;
  std::vector<Eigen::VectorXd> gamma;
  std::vector<Eigen::VectorXd> delta;
};

/// How the tail vectors are formed from x = (A^2 + (2 pi k)^2 I)^{-1} f.
enum class KernelForm {
  /// From u = f - (2 pi k)^2 x = A^2 x, then (A / 2 pi k)^{p-2} u. The solve
  /// error is never amplified by powers of A.
  residual,
  /// (2 pi k)^2 (A / 2 pi k)^p x: the w-powers applied to the solve result
  /// by matrix-vector products. Amplifies the solve error by up to
  /// ||A||^p; kept to reproduce the unstable Lanczos baseline.
  powers,
};

struct PlanOptions {
  KernelForm form = KernelForm::residual;
  /// Worker threads for the independent shifted solves. The reduction over
  /// modes is always sequential in ascending k.
  int threads = 1;
};

/**
 * Precomputed, tau-independent data for q(tau, A) f approximations of order
 * p with N modes and up to ell correction levels.
 *
 * Construction performs exactly N + 2 ell shifted factorizations (modes
 * 1 ... N + 2 ell); evaluation at any tau performs none.
 */
class LanczosActionPlan {
 public:
  LanczosActionPlan(const BandedOperator& a, const Eigen::VectorXd& f, int p,
                    int N, int ell, PlanOptions options = {});

  int p() const { return p_; }
  int N() const { return N_; }
  int ell() const { return ell_; }
  std::size_t solve_count() const { return solves_; }

  /// Tail vectors for modes 1 ... N + 2 ell.
  const VectorSequence& sequence() const { return sequence_; }
  const CoefficientTriangle<Eigen::VectorXd>& cosine_triangle() const { return *cosine_; }
  const CoefficientTriangle<Eigen::VectorXd>& sine_triangle() const { return *sine_; }

  /// h_{p-1}(tau, A) f from the cached scaled powers A^k f / k!.
  Eigen::VectorXd polynomial_part(double tau) const;

  /// G_{p,N,ell'}(tau, A) f for any ell' <= ell (ell' = 0 gives g).
  Eigen::VectorXd evaluate(double tau, int ell) const;
  Eigen::VectorXd evaluate(double tau) const { return evaluate(tau, ell_); }

 private:
  int p_, N_, ell_;
  std::size_t solves_ = 0;
  std::vector<Eigen::VectorXd> scaled_powers_;
  VectorSequence sequence_;
  std::optional<CoefficientTriangle<Eigen::VectorXd>> cosine_;
  std::optional<CoefficientTriangle<Eigen::VectorXd>> sine_;
};

/// g_{n,N}(tau, A) f, p = 2n + 2 even.
Eigen::VectorXd g_action(const BandedOperator& a, const ApproxParams& params,
                         const Eigen::VectorXd& f, PlanOptions options = {});

/// G_{p,N,ell}(tau, A) f.
Eigen::VectorXd G_action(const BandedOperator& a, const ApproxParams& params,
                         const Eigen::VectorXd& f, PlanOptions options = {});

/// e^X by scaling and squaring with the degree-13 diagonal Pade approximant.
Eigen::MatrixXd expm_dense(const Eigen::MatrixXd& x);

/// e^X - I, formed without subtracting I: the Pade step gives
/// 2 (V - U)^{-1} U, and each squaring maps E to E (E + 2I).
Eigen::MatrixXd expm1_dense(const Eigen::MatrixXd& x);

/// (e^X - I) X^{-1} = sum X^k / (k + 1)!, defined for singular X too.
Eigen::MatrixXd phi1_dense(const Eigen::MatrixXd& x);

/// e^{tA} f (dense, s <= kDenseExpCap).
Eigen::VectorXd expm_action(const BandedOperator& a, double t,
                            const Eigen::VectorXd& f);

/// Dense reference for q(tau, A) f: factors phi1(A) = (e^A - I) A^{-1} once,
/// then solves phi1(A) z = e^{tau A} f for each requested tau. Singular A is
/// fine; only eigenvalues 2 pi i k with k != 0 are poles.
class ReferenceSolver {
 public:
  explicit ReferenceSolver(const Eigen::MatrixXd& a);
  explicit ReferenceSolver(const BandedOperator& a) : ReferenceSolver(a.to_dense()) {}

  Eigen::VectorXd solve(double tau, const Eigen::VectorXd& f) const;

 private:
  Eigen::MatrixXd a_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

/// Oracle z = phi1(A)^{-1} e^{tau A} f by dense LU.
Eigen::VectorXd reference_solution(const BandedOperator& a, double tau,
                                   const Eigen::VectorXd& f);

/// The same oracle for a dense square matrix.
Eigen::VectorXd reference_solution_dense(const Eigen::MatrixXd& a, double tau,
                                         const Eigen::VectorXd& f);

}  // namespace bernq
