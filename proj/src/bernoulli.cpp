#include "bernq/bernoulli.hpp"

#include <stdexcept>
#include <string>

namespace bernq {

BernoulliTable::BernoulliTable(int max_degree, int cap) {
  if (max_degree < 0) {
    throw std::invalid_argument("Bernoulli table degree must be non-negative");
  }
  if (max_degree > cap) {
    throw std::invalid_argument("Bernoulli table degree " +
                                std::to_string(max_degree) +
                                " exceeds the cap " + std::to_string(cap));
  }
  exact_.reserve(max_degree + 1);
  exact_.push_back({Rational(1)});
  for (int k = 1; k <= max_degree; ++k) {
    const auto& prev = exact_.back();
    std::vector<Rational> next(k + 1);
    // Integrate k * B_{k-1}; the constant term fixes the mean to zero.
    Rational mean = 0;
    for (int i = 1; i <= k; ++i) {
      next[i] = Rational(k) * prev[i - 1] / Rational(i);
      mean += next[i] / Rational(i + 1);
    }
    next[0] = -mean;
    exact_.push_back(std::move(next));
  }
  rounded_.reserve(exact_.size());
  for (const auto& poly : exact_) {
    std::vector<double> r;
    r.reserve(poly.size());
    for (const auto& c : poly) r.push_back(static_cast<double>(c));
    rounded_.push_back(std::move(r));
  }
}

void BernoulliTable::check_degree(int k) const {
  if (k < 0 || k > max_degree()) {
    throw std::out_of_range("Bernoulli degree " + std::to_string(k) +
                            " outside the table range [0, " +
                            std::to_string(max_degree()) + "]");
  }
}

const std::vector<Rational>& BernoulliTable::exact_coefficients(int k) const {
  check_degree(k);
  return exact_[k];
}

std::span<const double> BernoulliTable::coefficients(int k) const {
  check_degree(k);
  return rounded_[k];
}

double BernoulliTable::operator()(int k, double tau) const {
  check_degree(k);
  const auto& c = rounded_[k];
  double acc = c.back();
  for (int i = k - 1; i >= 0; --i) acc = acc * tau + c[i];
  return acc;
}

BernoulliTable build_bernoulli_table(int max_degree) {
  return BernoulliTable(max_degree);
}

const BernoulliTable& shared_bernoulli_table() {
  static const BernoulliTable table(BernoulliTable::kDefaultDegreeCap);
  return table;
}

double eval_bernoulli(const BernoulliTable& table, int k, double tau) {
  return table(k, tau);
}

std::complex<double> lanczos_polynomial(const BernoulliTable& table, int p,
                                        double tau, std::complex<double> w) {
  if (p < 1) throw std::invalid_argument("lanczos_polynomial requires p >= 1");
  if (p - 1 > table.max_degree()) {
    throw std::out_of_range("Bernoulli table does not cover degree p - 1");
  }
  // Horner in w over b_k = B_k(tau) / k!.
  std::vector<double> b(p);
  double factorial = 1.0;
  for (int k = 0; k < p; ++k) {
    if (k > 0) factorial *= k;
    b[k] = table(k, tau) / factorial;
  }
  std::complex<double> acc = b[p - 1];
  for (int k = p - 2; k >= 0; --k) acc = acc * w + b[k];
  return acc;
}

}  // namespace bernq
