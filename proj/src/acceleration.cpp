#include "bernq/acceleration.hpp"

#include <fstream>
#include <istream>
#include <string>

namespace bernq {

cplx gamma0(int p, int k, cplx w) {
  if (p < 1) throw std::invalid_argument("order p must be >= 1");
  if (k < 1) throw std::invalid_argument("mode index k must be >= 1");
  const auto kern = detail::mode_kernels(p, k, w);
  return p % 2 == 0 ? kern.even_kernel : kern.odd_kernel;
}

cplx delta0(int p, int k, cplx w) {
  if (p < 1) throw std::invalid_argument("order p must be >= 1");
  if (k < 1) throw std::invalid_argument("mode index k must be >= 1");
  const auto kern = detail::mode_kernels(p, k, w);
  return p % 2 == 0 ? kern.odd_kernel : kern.even_kernel;
}

CoefficientTriangle<cplx> build_triangle(std::span<const cplx> base, int ell,
                                         int first_index) {
  return CoefficientTriangle<cplx>(std::vector<cplx>(base.begin(), base.end()),
                                   first_index, ell);
}

void check_interior(double tau) {
  if (!(0.5 * detail::shift_factor(tau) > kEndpointGuard)) {
    throw DomainError(
        "tau is too close to an endpoint for the rational correction; "
        "use q0_shift for tau = 0");
  }
}

CorrectionTerm correction(int p, int N, int ell, double tau, cplx w) {
  if (p < 1) throw std::invalid_argument("order p must be >= 1");
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  if (ell < 0) throw std::invalid_argument("acceleration depth ell must be >= 0");
  CorrectionTerm term;
  term.sign = detail::sine_sign(p);
  if (ell == 0) return term;
  check_interior(tau);

  std::vector<cplx> gammas, deltas;
  gammas.reserve(2 * ell + 1);
  deltas.reserve(2 * ell + 1);
  for (int k = N; k <= N + 2 * ell; ++k) {
    gammas.push_back(gamma0(p, k, w));
    deltas.push_back(delta0(p, k, w));
  }
  const CoefficientTriangle<cplx> cosine(std::move(gammas), N, ell);
  const CoefficientTriangle<cplx> sine(std::move(deltas), N, ell);
  const auto [gamma_part, delta_part] =
      detail::boundary_sums(cosine, sine, N, ell, tau, cplx(0.0));
  const double ratio = detail::cosine_sign(p) * detail::sine_sign(p);
  term.gamma_part = ratio * gamma_part;
  term.delta_part = delta_part;
  return term;
}

cplx G_approx(const ApproxParams& params) {
  const cplx base = g_approx(params);
  if (params.ell == 0) return base;
  return base + correction(params.p, params.N, params.ell, params.tau, params.w)
                    .value();
}

cplx leading_error_term(int p, int N, double tau, cplx w) {
  if (p < 1) throw std::invalid_argument("order p must be >= 1");
  if (N < 1) throw std::invalid_argument("truncation N must be >= 1");
  check_interior(tau);
  const double one_minus_cos = 0.5 * detail::shift_factor(tau);
  const double a = (N + 1) * tau;
  const double b = N * tau;
  cplx principal;
  if (p % 2 == 0) {
    principal = gamma0(p, N + 1, w) * (2.0 * cos2pi(a) - cos2pi(b)) -
                gamma0(p, N + 2, w) * cos2pi(a);
  } else {
    principal = delta0(p, N + 1, w) * (2.0 * sin2pi(a) - sin2pi(b)) -
                delta0(p, N + 2, w) * sin2pi(a);
  }
  return static_cast<double>(detail::sine_sign(p)) / one_minus_cos * principal;
}

ExpEvaluator builtin_exp() {
  return [](cplx x) { return std::exp(x); };
}

RationalExp::RationalExp(std::vector<double> numerator,
                         std::vector<double> denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (num_.empty() || num_.size() != den_.size()) {
    throw std::invalid_argument(
        "rational approximant needs numerator and denominator of equal degree");
  }
}

RationalExp RationalExp::parse(std::istream& in) {
  int r = -1;
  if (!(in >> r) || r < 0) {
    throw std::invalid_argument("rational approximant: missing or bad degree");
  }
  std::vector<double> num(r + 1), den(r + 1);
  for (auto& c : num) {
    if (!(in >> c)) throw std::invalid_argument("rational approximant: short numerator");
  }
  for (auto& c : den) {
    if (!(in >> c)) throw std::invalid_argument("rational approximant: short denominator");
  }
  return RationalExp(std::move(num), std::move(den));
}

RationalExp RationalExp::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return parse(in);
}

cplx RationalExp::operator()(cplx x) const {
  const cplx zeta = -x;
  cplx n = num_.back();
  cplx d = den_.back();
  for (int i = degree() - 1; i >= 0; --i) {
    n = n * zeta + num_[i];
    d = d * zeta + den_[i];
  }
  return n / d;
}

cplx q0_shift(cplx w, double alpha, const ExpEvaluator& exp_eval,
              ApproxParams params) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("shift alpha must lie in (0, 1)");
  }
  if (!exp_eval) throw std::invalid_argument("missing exponential evaluator");
  params.tau = 1.0 - alpha;
  params.w = w;
  return G_approx(params) * exp_eval(alpha * w) - w;
}

}  // namespace bernq
