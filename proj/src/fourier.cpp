#include "bernq/fourier.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bernq/bernoulli.hpp"
#include "bernq/errors.hpp"
#include "bernq/summation.hpp"

namespace bernq {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

cplx int_pow(cplx x, int e) {
  cplx r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// e^x - 1 without cancellation for small |x|.
cplx complex_expm1(cplx x) {
  const double a = x.real();
  const double b = x.imag();
  const double half_sin = std::sin(0.5 * b);
  return {std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin,
          std::exp(a) * std::sin(b)};
}

cplx q_series(double tau, cplx w) {
  const auto& table = shared_bernoulli_table();
  ComplexCompensatedSum sum;
  cplx power = 1.0;  // w^k / k!
  int quiet = 0;
  for (int k = 0; k <= table.max_degree(); ++k) {
    if (k > 0) power *= w / static_cast<double>(k);
    const cplx term = table(k, tau) * power;
    sum.add(term);
    // Odd Bernoulli numbers vanish, so a single small term is not enough.
    if (std::abs(term) <= std::numeric_limits<double>::epsilon() *
                              std::abs(sum.value())) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  return sum.value();
}

}  // namespace

void ApproxParams::validate() const {
  if (p < 1) throw std::invalid_argument("order p must be >= 1");
  if (p - 1 > BernoulliTable::kDefaultDegreeCap) {
    throw std::invalid_argument("order p exceeds the Bernoulli degree cap");
  }
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  if (ell < 0) throw std::invalid_argument("acceleration depth ell must be >= 0");
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("tau must lie in [0, 1]");
  }
  check_pole(w);
}

void check_pole(cplx w) {
  const double k = std::nearbyint(w.imag() / kTwoPi);
  if (k == 0.0) return;
  if (std::abs(w - cplx(0.0, kTwoPi * k)) < kPoleTolerance) {
    throw DomainError("w is a pole of q (2*pi*i*" +
                      std::to_string(static_cast<long long>(k)) + ")");
  }
}

cplx reference_q(double tau, cplx w) {
  check_pole(w);
  if (std::abs(w) < kSeriesSwitchRadius) return q_series(tau, w);
  if (w.real() >= 0.0) {
    return w * std::exp(w * (tau - 1.0)) / -complex_expm1(-w);
  }
  return w * std::exp(w * tau) / complex_expm1(w);
}

HatCoefficients hat_coefficients(int k, cplx w) {
  if (k < 1) throw std::invalid_argument("mode index k must be >= 1");
  check_pole(w);
  const double omega = kTwoPi * k;
  const cplx denom = w * w + omega * omega;
  return {w * w / denom, -omega * w / denom};
}

namespace detail {

ModeKernels mode_kernels(int p, int k, cplx w) {
  check_pole(w);
  const double omega = kTwoPi * k;
  const cplx r = w / omega;
  const cplx damping = 1.0 / (r * r + 1.0);  // omega^2 / (w^2 + omega^2)
  const cplx rp = int_pow(r, p);
  return {rp * damping, rp * r * damping};
}

int sine_sign(int p) {
  const int e = (p + 2) / 2;  // ceil((p + 1) / 2)
  return e % 2 == 0 ? 1 : -1;
}

int cosine_sign(int p) { return p % 2 == 0 ? sine_sign(p) : -sine_sign(p); }

}  // namespace detail

ModeCoefficients lanczos_coefficients(int p, int k, cplx w) {
  if (p < 1) throw std::invalid_argument("order p must be >= 1");
  if (k < 1) throw std::invalid_argument("mode index k must be >= 1");
  const auto kern = detail::mode_kernels(p, k, w);
  const bool even = p % 2 == 0;
  const cplx gamma = even ? kern.even_kernel : kern.odd_kernel;
  const cplx delta = even ? kern.odd_kernel : kern.even_kernel;
  return {k, static_cast<double>(detail::cosine_sign(p)) * gamma,
          static_cast<double>(detail::sine_sign(p)) * delta};
}

cplx fourier_partial(double tau, cplx w, int N) {
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  check_pole(w);
  ComplexCompensatedSum sum;
  for (int k = 1; k <= N; ++k) {
    const auto hat = hat_coefficients(k, w);
    const double phase = k * tau;
    sum.add(hat.c_hat * cos2pi(phase) + hat.s_hat * sin2pi(phase));
  }
  return 1.0 + 2.0 * sum.value();
}

cplx g_approx(const ApproxParams& params) {
  params.validate();
  const cplx h =
      lanczos_polynomial(shared_bernoulli_table(), params.p, params.tau, params.w);
  ComplexCompensatedSum sum;
  for (int k = 1; k <= params.N; ++k) {
    const auto m = lanczos_coefficients(params.p, k, params.w);
    const double phase = k * params.tau;
    sum.add(m.c * cos2pi(phase) + m.s * sin2pi(phase));
  }
  return h + 2.0 * sum.value();
}

double residual_l2(int p, cplx w, int N, int K) {
  if (N < 0) throw std::invalid_argument("truncation N must be >= 0");
  if (K < N) throw std::invalid_argument("tail cut K must be >= N");
  CompensatedSum sum;
  for (int k = N + 1; k <= K; ++k) {
    const auto m = lanczos_coefficients(p, k, w);
    sum.add(std::norm(m.c) + std::norm(m.s));
  }
  return std::sqrt(2.0 * sum.value());
}

double delta_of_N(cplx z, int N, int K) {
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  if (K < 2 * N) throw std::invalid_argument("delta_of_N requires K >= 2N");
  const double az = std::abs(z);
  if (az == 0.0) throw std::invalid_argument("delta_of_N requires z != 0");
  const double scale = std::pow(static_cast<double>(N), 3.5) / std::pow(az, 4);
  return scale * residual_l2(4, kTwoPi * z, N, K);
}

}  // namespace bernq
