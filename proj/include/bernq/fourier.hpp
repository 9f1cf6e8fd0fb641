#pragma once

#include <complex>

namespace bernq {

using cplx = std::complex<double>;

/// |w| below which q is summed from its Taylor series in w.
inline constexpr double kSeriesSwitchRadius = 1e-1;
/// Distance to a pole 2*pi*i*k (k != 0) treated as a domain violation.
inline constexpr double kPoleTolerance = 1e-12;

/**
 * Parameters of one approximation of q(tau, w).
 *
 * p is the order of the Lanczos representation (polynomial degree p - 1,
 * mode coefficients decaying like k^-p); for even p the classical index is
 * n = (p - 2) / 2. N is the number of retained modes and ell the number of
 * rational correction levels.
 */
struct ApproxParams {
  int p = 2;
  int N = 1;
  int ell = 0;
  double tau = 0.0;
  cplx w = 0.0;

  cplx z() const { return w / (2.0 * M_PI); }

  /// Throws std::invalid_argument or DomainError.
  void validate() const;

  static ApproxParams from_n(int n, int N, double tau, cplx w) {
    return ApproxParams{2 * n + 2, N, 0, tau, w};
  }
};

struct ModeCoefficients {
  int k = 0;
  cplx c = 0.0;
  cplx s = 0.0;
};

struct HatCoefficients {
  cplx c_hat = 0.0;
  cplx s_hat = 0.0;
};

/// Throws DomainError if w lies within kPoleTolerance of 2*pi*i*k, k != 0.
void check_pole(cplx w);

/// q(tau, w) = w e^{w tau} / (e^w - 1), with the removable singularity at
/// w = 0 filled in.
cplx reference_q(double tau, cplx w);

/// Fourier coefficients of q(., w) against cos and sin(2 pi k tau).
HatCoefficients hat_coefficients(int k, cplx w);

/// Mode coefficients c_k, s_k of f_p = q - h_{p-1}.
ModeCoefficients lanczos_coefficients(int p, int k, cplx w);

/// 1 + 2 sum_{k<=N} [c^_k cos(2 pi k tau) + s^_k sin(2 pi k tau)].
cplx fourier_partial(double tau, cplx w, int N);

/// h_{p-1}(tau) + f_{p,N}(tau).
cplx g_approx(const ApproxParams& params);

/// L2 norm over [0, 1] of the truncation residual R_{p,N}, with the mode
/// sum cut at k = K. Parseval: sqrt(2 sum_{N<k<=K} |c_k|^2 + |s_k|^2).
double residual_l2(int p, cplx w, int N, int K);

/// N^{7/2} |z|^{-4} ||R_{1,N}(., z)||_2 for the p = 4 representation,
/// with the mode sum cut at k = K.
double delta_of_N(cplx z, int N, int K);

namespace detail {

// The two rational mode kernels shared by the coefficient formulas:
//   even_kernel = w^p     / ((2 pi k)^{p-2} (w^2 + (2 pi k)^2))
//   odd_kernel  = w^{p+1} / ((2 pi k)^{p-1} (w^2 + (2 pi k)^2))
struct ModeKernels {
  cplx even_kernel;
  cplx odd_kernel;
};
ModeKernels mode_kernels(int p, int k, cplx w);

// Sign carried by the cosine and sine coefficients relative to the
// kernels gamma0 / delta0. The sine sign is (-1)^ceil((p+1)/2) for every
// p; the cosine sign agrees with it for even p and is opposite for odd p.
int sine_sign(int p);
int cosine_sign(int p);

}  // namespace detail

}  // namespace bernq
