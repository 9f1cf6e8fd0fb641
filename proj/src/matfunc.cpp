#include "bernq/matfunc.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "bernq/bernoulli.hpp"
#include "bernq/errors.hpp"
#include "bernq/summation.hpp"

namespace bernq {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

void check_dims(const BandedOperator& a, const Eigen::VectorXd& f) {
  if (f.size() != a.size()) {
    throw std::invalid_argument("vector dimension does not match the operator");
  }
}

void check_matrix_params(const ApproxParams& params) {
  if (params.p < 1) throw std::invalid_argument("order p must be >= 1");
  if (params.p - 1 > BernoulliTable::kDefaultDegreeCap) {
    throw std::invalid_argument("order p exceeds the Bernoulli degree cap");
  }
  if (params.N < 1) throw std::invalid_argument("truncation N must be >= 1");
  if (params.ell < 0) throw std::invalid_argument("acceleration depth ell must be >= 0");
  if (!(params.tau >= 0.0 && params.tau <= 1.0)) {
    throw std::invalid_argument("tau must lie in [0, 1]");
  }
}

// Pade(13) coefficients b_0 ... b_13 and the matching scaling threshold.
constexpr double kPade13[] = {64764752532480000.0, 32382376266240000.0,
                              7771770303897600.0,  1187353796428800.0,
                              129060195264000.0,   10559470521600.0,
                              670442572800.0,      33522128640.0,
                              1323241920.0,        40840800.0,
                              960960.0,            16380.0,
                              182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

struct PadeParts {
  Eigen::MatrixXd u;        // odd part, scaled * inner_u
  Eigen::MatrixXd v;        // even part
  Eigen::MatrixXd scaled;   // x / 2^squarings
  Eigen::MatrixXd inner_u;
  int squarings = 0;
};

PadeParts pade13(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  if (n != x.cols()) throw std::invalid_argument("matrix exponential needs a square matrix");
  if (n > kDenseExpCap) {
    throw NumericalError("dense exponential dimension cap exceeded");
  }
  if (!x.allFinite()) throw NumericalError("non-finite matrix passed to the exponential");
  const double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  PadeParts parts;
  if (norm > kTheta13) {
    parts.squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  const Eigen::MatrixXd a = x / std::ldexp(1.0, parts.squarings);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const auto& b = kPade13;
  Eigen::MatrixXd inner_u = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) +
                                  b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
  parts.scaled = a;
  parts.inner_u = inner_u;
  parts.u = a * inner_u;
  parts.v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
            b[4] * a4 + b[2] * a2 + b[0] * id;
  return parts;
}

}  // namespace

Eigen::VectorXd shifted_solve(const BandedOperator& a, int k,
                              const Eigen::VectorXd& b) {
  if (k < 1) throw std::invalid_argument("mode index k must be >= 1");
  check_dims(a, b);
  const double omega = kTwoPi * k;
  return ShiftedFactorization(a, omega * omega).solve(b);
}

Eigen::VectorXd h_action(const BandedOperator& a, int p, double tau,
                         const Eigen::VectorXd& f) {
  if (p < 1) throw std::invalid_argument("order p must be >= 1");
  check_dims(a, f);
  const auto& table = shared_bernoulli_table();
  if (p - 1 > table.max_degree()) {
    throw std::invalid_argument("order p exceeds the Bernoulli degree cap");
  }
  std::vector<double> coeff(p);
  double factorial = 1.0;
  for (int k = 0; k < p; ++k) {
    if (k > 0) factorial *= k;
    coeff[k] = table(k, tau) / factorial;
  }
  Eigen::VectorXd v = coeff[p - 1] * f;
  for (int k = p - 2; k >= 0; --k) v = a.apply(v) + coeff[k] * f;
  return v;
}

LanczosActionPlan::LanczosActionPlan(const BandedOperator& a,
                                     const Eigen::VectorXd& f, int p, int N,
                                     int ell, PlanOptions options)
    : p_(p), N_(N), ell_(ell) {
  check_matrix_params(ApproxParams{p, N, ell, 0.0, 0.0});
  check_dims(a, f);

  scaled_powers_.reserve(p);
  scaled_powers_.push_back(f);
  for (int k = 1; k < p; ++k) {
    scaled_powers_.push_back(a.apply(scaled_powers_.back()) / static_cast<double>(k));
  }

  const int modes = N + 2 * ell;
  sequence_.first = 1;
  sequence_.gamma.assign(modes, Eigen::VectorXd());
  sequence_.delta.assign(modes, Eigen::VectorXd());
  const bool even = p % 2 == 0;

  auto fill_mode = [&](int k) {
    const double omega = kTwoPi * k;
    const ShiftedFactorization factor(a, omega * omega);
    const Eigen::VectorXd x = factor.solve(f);
    // even_part carries w^p / ((2 pi k)^{p-2} D), odd_part one more factor
    // of w / (2 pi k), D = w^2 + (2 pi k)^2.
    Eigen::VectorXd even_part, odd_part;
    if (options.form == KernelForm::powers) {
      even_part = x;
      for (int i = 0; i < p; ++i) even_part = a.apply(even_part) / omega;
      even_part *= omega * omega;
      odd_part = a.apply(even_part) / omega;
    } else {
      // u = A^2 x, formed as f - (2 pi k)^2 x.
      Eigen::VectorXd u = f - (omega * omega) * x;
      if (p == 1) {
        even_part = omega * a.apply(x);
        odd_part = std::move(u);
      } else {
        for (int i = 0; i < p - 2; ++i) u = a.apply(u) / omega;
        odd_part = a.apply(u) / omega;
        even_part = std::move(u);
      }
    }
    if (even) {
      sequence_.gamma[k - 1] = std::move(even_part);
      sequence_.delta[k - 1] = std::move(odd_part);
    } else {
      sequence_.gamma[k - 1] = std::move(odd_part);
      sequence_.delta[k - 1] = std::move(even_part);
    }
  };

  const int threads = std::max(1, std::min(options.threads, modes));
  if (threads == 1) {
    for (int k = 1; k <= modes; ++k) fill_mode(k);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        try {
          for (int k = 1 + t; k <= modes; k += threads) fill_mode(k);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  solves_ = static_cast<std::size_t>(modes);

  std::vector<Eigen::VectorXd> cos_base(sequence_.gamma.begin() + (N - 1),
                                        sequence_.gamma.end());
  std::vector<Eigen::VectorXd> sin_base(sequence_.delta.begin() + (N - 1),
                                        sequence_.delta.end());
  cosine_.emplace(std::move(cos_base), N, ell);
  sine_.emplace(std::move(sin_base), N, ell);
}

Eigen::VectorXd LanczosActionPlan::polynomial_part(double tau) const {
  const auto& table = shared_bernoulli_table();
  VectorCompensatedSum sum(scaled_powers_.front().size());
  for (int k = 0; k < p_; ++k) sum.add(scaled_powers_[k], table(k, tau));
  return sum.value();
}

Eigen::VectorXd LanczosActionPlan::evaluate(double tau, int ell) const {
  if (ell < 0 || ell > ell_) {
    throw std::invalid_argument("requested correction depth exceeds the plan");
  }
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("tau must lie in [0, 1]");
  if (ell > 0) check_interior(tau);

  const double cs = detail::cosine_sign(p_);
  const double ss = detail::sine_sign(p_);
  const Eigen::Index n = scaled_powers_.front().size();

  VectorCompensatedSum modes(n);
  for (int k = 1; k <= N_; ++k) {
    const double phase = k * tau;
    const Eigen::VectorXd term = (cs * cos2pi(phase)) * sequence_.gamma[k - 1] +
                                 (ss * sin2pi(phase)) * sequence_.delta[k - 1];
    modes.add(term);
  }
  Eigen::VectorXd result = polynomial_part(tau) + 2.0 * modes.value();
  if (ell == 0) return result;

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
  const auto [gamma_part, delta_part] =
      detail::boundary_sums(*cosine_, *sine_, N_, ell, tau, zero);
  result += (2.0 * ss) * (Eigen::VectorXd((cs * ss) * gamma_part) + delta_part);
  return result;
}

Eigen::VectorXd g_action(const BandedOperator& a, const ApproxParams& params,
                         const Eigen::VectorXd& f, PlanOptions options) {
  check_matrix_params(params);
  if (params.p % 2 != 0) {
    throw std::invalid_argument("g_action needs an even order p = 2n + 2");
  }
  return LanczosActionPlan(a, f, params.p, params.N, 0, options).evaluate(params.tau, 0);
}

Eigen::VectorXd G_action(const BandedOperator& a, const ApproxParams& params,
                         const Eigen::VectorXd& f, PlanOptions options) {
  check_matrix_params(params);
  if (params.ell > 0) check_interior(params.tau);
  return LanczosActionPlan(a, f, params.p, params.N, params.ell, options)
      .evaluate(params.tau, params.ell);
}

Eigen::MatrixXd expm_dense(const Eigen::MatrixXd& x) {
  const PadeParts parts = pade13(x);
  Eigen::MatrixXd r = (parts.v - parts.u).partialPivLu().solve(parts.v + parts.u);
  for (int i = 0; i < parts.squarings; ++i) r = r * r;
  return r;
}

Eigen::MatrixXd expm1_dense(const Eigen::MatrixXd& x) {
  const PadeParts parts = pade13(x);
  Eigen::MatrixXd e = (parts.v - parts.u).partialPivLu().solve(2.0 * parts.u);
  for (int i = 0; i < parts.squarings; ++i) {
    Eigen::MatrixXd shifted = e;
    shifted.diagonal().array() += 2.0;
    e = e * shifted;
  }
  return e;
}

Eigen::MatrixXd phi1_dense(const Eigen::MatrixXd& x) {
  const PadeParts parts = pade13(x);
  // E(Y) = Y phi1(Y) and E(2Y) = E(Y) (E(Y) + 2I) give
  // phi1(2Y) = phi1(Y) (Y phi1(Y) + 2I) / 2 without dividing by Y.
  Eigen::MatrixXd phi = (parts.v - parts.u).partialPivLu().solve(2.0 * parts.inner_u);
  Eigen::MatrixXd y = parts.scaled;
  for (int i = 0; i < parts.squarings; ++i) {
    Eigen::MatrixXd factor = y * phi;
    factor.diagonal().array() += 2.0;
    phi = 0.5 * (phi * factor);
    y *= 2.0;
  }
  return phi;
}

Eigen::VectorXd expm_action(const BandedOperator& a, double t,
                            const Eigen::VectorXd& f) {
  check_dims(a, f);
  if (a.size() > kDenseExpCap) throw NumericalError("dense exponential dimension cap exceeded");
  return expm_dense(t * a.to_dense()) * f;
}

ReferenceSolver::ReferenceSolver(const Eigen::MatrixXd& a) : a_(a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("reference solver needs a square matrix");
  const Eigen::MatrixXd phi = phi1_dense(a_);
  lu_.compute(phi);
  // rcond alone is scale-free; near a pole phi1(A) itself is of roundoff
  // size, so its inverse is also compared against eps * ||A||.
  const double eps = std::numeric_limits<double>::epsilon();
  const double rc = lu_.rcond();
  const double inverse_norm = 1.0 / (rc * phi.cwiseAbs().colwise().sum().maxCoeff());
  const double a_norm = a_.cwiseAbs().colwise().sum().maxCoeff();
  if (!(rc > eps) || !(inverse_norm * eps * std::max(1.0, a_norm) < 1e-2)) {
    throw NumericalError("(e^A - I) / A is numerically singular");
  }
}

Eigen::VectorXd ReferenceSolver::solve(double tau, const Eigen::VectorXd& f) const {
  if (f.size() != a_.rows()) {
    throw std::invalid_argument("vector dimension does not match the operator");
  }
  return lu_.solve(expm_dense(tau * a_) * f);
}

Eigen::VectorXd reference_solution(const BandedOperator& a, double tau,
                                   const Eigen::VectorXd& f) {
  check_dims(a, f);
  return ReferenceSolver(a).solve(tau, f);
}

Eigen::VectorXd reference_solution_dense(const Eigen::MatrixXd& a, double tau,
                                         const Eigen::VectorXd& f) {
  return ReferenceSolver(a).solve(tau, f);
}

}  // namespace bernq
