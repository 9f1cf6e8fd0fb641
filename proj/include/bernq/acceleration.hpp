#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bernq/errors.hpp"
#include "bernq/fourier.hpp"
#include "bernq/summation.hpp"

namespace bernq {

/// Threshold on |1 - cos(2 pi tau)| below which the rational corrections
/// are refused.
inline constexpr double kEndpointGuard = 1e-8;

/// Default offset for the tau = 0 shift identity.
inline constexpr double kDefaultShiftAlpha = 0.125;

/// Cosine-tail base coefficient gamma_k^(0) (unsigned).
cplx gamma0(int p, int k, cplx w);

/// Sine-tail base coefficient delta_k^(0) (unsigned).
cplx delta0(int p, int k, cplx w);

/**
 * Pyramid of second differences over a base sequence.
 *
 * Level 0 holds the base entries for mode indices first, first + 1, ...;
 * level j holds -x_{k-1} + 2 x_k - x_{k+1} of level j - 1 and covers the
 * indices first + j ... last - j. Entries may be scalars or vectors.
 */
template <class T>
class CoefficientTriangle {
 public:
  CoefficientTriangle(std::vector<T> base, int first_index, int ell)
      : first_(first_index), ell_(ell) {
    if (ell < 0) throw std::invalid_argument("triangle depth must be >= 0");
    if (base.size() < static_cast<std::size_t>(2 * ell + 1)) {
      throw std::invalid_argument(
          "triangle base needs at least 2*ell + 1 entries");
    }
    levels_.push_back(std::move(base));
    for (int j = 1; j <= ell; ++j) {
      const auto& prev = levels_.back();
      std::vector<T> next;
      next.reserve(prev.size() - 2);
      for (std::size_t i = 1; i + 1 < prev.size(); ++i) {
        next.push_back(T(-prev[i - 1] + 2.0 * prev[i] - prev[i + 1]));
      }
      levels_.push_back(std::move(next));
    }
  }

  int first_index() const { return first_; }
  int depth() const { return ell_; }

  /// Lowest and highest mode index stored at a level.
  int level_begin(int level) const { return first_ + level; }
  int level_end(int level) const {
    return level_begin(level) + static_cast<int>(levels_[level].size()) - 1;
  }

  const std::vector<T>& level(int j) const { return levels_.at(j); }

  const T& at(int level, int k) const {
    if (level < 0 || level > ell_ || k < level_begin(level) ||
        k > level_end(level)) {
      throw std::out_of_range("triangle entry outside the computed range");
    }
    return levels_[level][k - level_begin(level)];
  }

 private:
  int first_;
  int ell_;
  std::vector<std::vector<T>> levels_;
};

/// Triangle over base entries indexed first_index, first_index + 1, ...
CoefficientTriangle<cplx> build_triangle(std::span<const cplx> base, int ell,
                                         int first_index = 0);

/**
 * The rational correction of depth ell.
 *
 * gamma_part and delta_part are the cosine and sine boundary sums; the
 * corrected value is base + 2 * sign * (gamma_part + delta_part). For odd p
 * gamma_part absorbs the opposite sign of the cosine coefficients.
 */
struct CorrectionTerm {
  cplx gamma_part = 0.0;
  cplx delta_part = 0.0;
  int sign = 1;

  cplx value() const {
    return 2.0 * static_cast<double>(sign) * (gamma_part + delta_part);
  }
};

/// Throws DomainError when 2 - 2 cos(2 pi tau) degenerates.
void check_interior(double tau);

namespace detail {

// (2 - 2 cos(2 pi tau)) = 4 sin^2(pi tau).
inline double shift_factor(double tau) {
  const double s = std::sin(M_PI * (tau - std::nearbyint(tau)));
  return 4.0 * s * s;
}

// Boundary sums of depth ell over precomputed triangles (both starting at
// mode index N):
//   sum_j [x_{N+j}^{(j-1)} (2 t(N+j) - t(N+j-1)) - x_{N+j+1}^{(j-1)} t(N+j)]
//         / (2 - 2 cos 2 pi tau)^j
// with t = cos for the cosine triangle and t = sin for the sine triangle.
template <class T>
std::pair<T, T> boundary_sums(const CoefficientTriangle<T>& cosine,
                              const CoefficientTriangle<T>& sine, int N,
                              int ell, double tau, const T& zero) {
  T gamma_part = zero;
  T delta_part = zero;
  if (ell == 0) return {gamma_part, delta_part};
  const double d = shift_factor(tau);
  double scale = 1.0;
  for (int j = 1; j <= ell; ++j) {
    scale /= d;
    const double a = (N + j) * tau;
    const double b = (N + j - 1) * tau;
    const double cos_a = cos2pi(a), cos_b = cos2pi(b);
    const double sin_a = sin2pi(a), sin_b = sin2pi(b);
    gamma_part += scale * (cosine.at(j - 1, N + j) * (2.0 * cos_a - cos_b) -
                           cosine.at(j - 1, N + j + 1) * cos_a);
    delta_part += scale * (sine.at(j - 1, N + j) * (2.0 * sin_a - sin_b) -
                           sine.at(j - 1, N + j + 1) * sin_a);
  }
  return {gamma_part, delta_part};
}

}  // namespace detail

CorrectionTerm correction(int p, int N, int ell, double tau, cplx w);

/// [h_{p-1} + f_{p,N}](tau) + 2 sign (Gamma + Delta); equals g_approx when
/// ell = 0.
cplx G_approx(const ApproxParams& params);

/// Principal term of the truncation error R_{p,N}(tau, w) for interior
/// tau. Built from the dominant tail: cosine coefficients for even p, sine
/// coefficients for odd p.
cplx leading_error_term(int p, int N, double tau, cplx w);

/// Evaluator of e^x used by the tau = 0 pipeline.
using ExpEvaluator = std::function<cplx(cplx)>;

ExpEvaluator builtin_exp();

/**
 * Rational approximant N_r(zeta) / D_r(zeta) of e^{-zeta}, used as an
 * e^x evaluator through zeta = -x.
 *
 * Text format: the degree r, then r + 1 numerator coefficients and r + 1
 * denominator coefficients, in ascending powers, whitespace separated.
 */
class RationalExp {
 public:
  RationalExp(std::vector<double> numerator, std::vector<double> denominator);

  static RationalExp parse(std::istream& in);
  static RationalExp load(const std::filesystem::path& path);

  int degree() const { return static_cast<int>(num_.size()) - 1; }
  cplx operator()(cplx x) const;

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

/// q(0, w) from the interior value G(1 - alpha, w) through
/// q(0, w) = q(1 - alpha, w) e^{alpha w} - w. params.tau is ignored.
cplx q0_shift(cplx w, double alpha, const ExpEvaluator& exp_eval,
              ApproxParams params);

}  // namespace bernq
