#pragma once

#include <complex>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bernq {

using Rational = boost::multiprecision::cpp_rational;

/**
 * Monomial coefficients of the Bernoulli polynomials B_0 ... B_d.
 *
 * The coefficients are generated in exact rational arithmetic from
 * B_k' = k B_{k-1} together with the zero-mean condition on [0, 1], and
 * rounded to double once. Immutable after construction.
 */
class BernoulliTable {
 public:
  static constexpr int kDefaultDegreeCap = 64;

  /// Throws std::invalid_argument if max_degree < 0 or max_degree > cap.
  explicit BernoulliTable(int max_degree, int cap = kDefaultDegreeCap);

  int max_degree() const { return static_cast<int>(exact_.size()) - 1; }

  /// Coefficients of B_k in ascending powers of tau, exact.
  const std::vector<Rational>& exact_coefficients(int k) const;

  /// Coefficients of B_k in ascending powers of tau, rounded.
  std::span<const double> coefficients(int k) const;

  /// Horner evaluation of B_k(tau).
  double operator()(int k, double tau) const;

 private:
  void check_degree(int k) const;

  std::vector<std::vector<Rational>> exact_;
  std::vector<std::vector<double>> rounded_;
};

BernoulliTable build_bernoulli_table(int max_degree);

/// Process-wide table of the default cap degree, built on first use.
const BernoulliTable& shared_bernoulli_table();

double eval_bernoulli(const BernoulliTable& table, int k, double tau);

/// h_{p-1}(tau) = sum_{k=0}^{p-1} B_k(tau) w^k / k!, the polynomial part of
/// the Lanczos representation of q of order p.
std::complex<double> lanczos_polynomial(const BernoulliTable& table, int p,
                                        double tau, std::complex<double> w);

}  // namespace bernq
