#pragma once

// Independent reference implementations used only by the tests. None of
// them share code paths with the library beyond the public types.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "bernq/banded.hpp"

namespace oracle {

using Rational = boost::multiprecision::cpp_rational;
using cplx = std::complex<double>;

// Bernoulli numbers B_0 ... B_n (B_1 = -1/2) by the Akiyama-Tanigawa
// algorithm, which yields B_1 = +1/2; the sign is flipped afterwards.
inline std::vector<Rational> bernoulli_numbers(int n) {
  std::vector<Rational> out(n + 1), a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
    out[m] = a[0];
  }
  if (n >= 1) out[1] = -out[1];
  return out;
}

// Monomial coefficients of B_n(x) = sum_k C(n,k) B_k x^{n-k}, ascending.
inline std::vector<Rational> bernoulli_polynomial(int n, const std::vector<Rational>& numbers) {
  std::vector<Rational> c(n + 1);
  Rational binom = 1;
  for (int k = 0; k <= n; ++k) {
    c[n - k] = binom * numbers[k];
    binom = binom * (n - k) / (k + 1);
  }
  return c;
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-13) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, tol, &err);
}

inline cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b,
                              double tol = 1e-13) {
  const double re = integrate([&](double t) { return f(t).real(); }, a, b, tol);
  const double im = integrate([&](double t) { return f(t).imag(); }, a, b, tol);
  return {re, im};
}

// q(tau, w) straight from the definition, for w away from 0.
inline cplx q_closed(double tau, cplx w) { return w * std::exp(w * tau) / (std::exp(w) - 1.0); }

// Spectral data of a tridiagonal matrix whose off-diagonal products are
// positive: A = D S D^{-1} with S symmetric.
struct TridiagonalEigen {
  Eigen::VectorXd scaling;      // diagonal of D
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // of S

  explicit TridiagonalEigen(const bernq::BandedOperator& a) {
    const Eigen::Index s = a.size();
    scaling.resize(s);
    scaling[0] = 1.0;
    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(s, s);
    for (Eigen::Index i = 0; i < s; ++i) {
      sym(i, i) = a.diag()[i];
      if (i + 1 < s) {
        scaling[i + 1] = scaling[i] * std::sqrt(a.sub()[i] / a.super()[i]);
        const double off = std::sqrt(a.sub()[i] * a.super()[i]);
        sym(i, i + 1) = off;
        sym(i + 1, i) = off;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    eigenvalues = es.eigenvalues();
    eigenvectors = es.eigenvectors();
  }

  // phi(A) f.
  Eigen::VectorXd apply(const std::function<double(double)>& phi, const Eigen::VectorXd& f) const {
    Eigen::VectorXd c = eigenvectors.transpose() * f.cwiseQuotient(scaling);
    for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= phi(eigenvalues[i]);
    return scaling.cwiseProduct(eigenvectors * c);
  }
};

inline double q_real(double tau, double lambda) {
  if (lambda == 0.0) return 1.0;
  return lambda * std::exp(lambda * tau) / std::expm1(lambda);
}

inline double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline bernq::BandedOperator random_tridiagonal(int s, unsigned seed, bool symmetric) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  auto r = [&] { return dist(gen); };
  Eigen::VectorXd sub(s - 1), diag(s), super(s - 1);
  for (int i = 0; i < s; ++i) diag[i] = r() * 3.0;
  for (int i = 0; i + 1 < s; ++i) {
    sub[i] = r();
    super[i] = symmetric ? sub[i] : r();
  }
  return bernq::BandedOperator::tridiagonal(sub, diag, super);
}

}  // namespace oracle
