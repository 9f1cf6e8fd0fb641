#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Core>

namespace bernq {

// Neumaier's variant of Kahan summation. Results depend on the order in
// which terms are added; callers add in ascending mode index.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class ComplexCompensatedSum {
 public:
  void add(std::complex<double> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Componentwise compensated accumulation of scale * v.
class VectorCompensatedSum {
 public:
  explicit VectorCompensatedSum(Eigen::Index n)
      : sum_(Eigen::VectorXd::Zero(n)), comp_(Eigen::VectorXd::Zero(n)) {}

  void add(const Eigen::VectorXd& v, double scale = 1.0) {
    for (Eigen::Index i = 0; i < sum_.size(); ++i) {
      const double x = scale * v[i];
      const double t = sum_[i] + x;
      if (std::abs(sum_[i]) >= std::abs(x)) {
        comp_[i] += (sum_[i] - t) + x;
      } else {
        comp_[i] += (x - t) + sum_[i];
      }
      sum_[i] = t;
    }
  }
  Eigen::VectorXd value() const { return sum_ + comp_; }

 private:
  Eigen::VectorXd sum_;
  Eigen::VectorXd comp_;
};

/// cos(2*pi*x) and sin(2*pi*x) with the argument reduced to [-1/2, 1/2]
/// first, so large mode numbers keep full phase accuracy.
inline double cos2pi(double x) {
  const double r = x - std::nearbyint(x);
  return std::cos(2.0 * M_PI * r);
}
inline double sin2pi(double x) {
  const double r = x - std::nearbyint(x);
  return std::sin(2.0 * M_PI * r);
}

}  // namespace bernq
