#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bernq/banded.hpp"
#include "bernq/bvp.hpp"
#include "oracles.hpp"

using bernq::BandedOperator;
using bernq::ShiftedFactorization;

namespace {
const double kTwoPi = 2.0 * M_PI;
}

TEST_CASE("band storage round-trips through the dense form") {
  for (int s : {1, 2, 3, 17, 64}) {
    const BandedOperator a = s == 1 ? BandedOperator::diagonal(Eigen::VectorXd::Constant(1, -2.0))
                                    : oracle::random_tridiagonal(s, 11 + s, false);
    const Eigen::MatrixXd d = a.to_dense();
    const auto back = BandedOperator::try_tridiagonal(d);
    REQUIRE(back.has_value());
    CHECK(back->to_dense() == d);
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(s, -1.0, 2.0);
    CHECK(oracle::max_abs(a.apply(x) - d * x) <= 1e-15 * (1.0 + oracle::max_abs(d * x)));
    CHECK(a.norm1() == doctest::Approx(d.cwiseAbs().colwise().sum().maxCoeff()));
    CHECK(a.norm_inf() == doctest::Approx(d.cwiseAbs().rowwise().sum().maxCoeff()));
  }
  Eigen::MatrixXd full = Eigen::MatrixXd::Ones(4, 4);
  CHECK_FALSE(BandedOperator::try_tridiagonal(full).has_value());
  CHECK(oracle::random_tridiagonal(8, 3, true).is_symmetric());
  CHECK_FALSE(oracle::random_tridiagonal(8, 3, false).is_symmetric());
}

TEST_CASE("Gershgorin discs of discretized Laplacians lie in the left half-plane") {
  for (const auto& grid : {bernq::uniform_grid(24.0, 64), bernq::geometric_grid(0.01, 1.005, 64)}) {
    const Eigen::MatrixXd d = bernq::discretize_laplacian(grid).to_dense();
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
      const double radius = d.row(i).cwiseAbs().sum() - std::abs(d(i, i));
      CHECK(d(i, i) + radius <= 1e-9 * std::abs(d(i, i)));
    }
  }
}

TEST_CASE("shifted solves") {
  const Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(8, 1.0, 3.0);
  for (int k : {1, 3}) {
    const double shift = std::pow(kTwoPi * k, 2);
    const auto zero = BandedOperator::diagonal(Eigen::VectorXd::Zero(8));
    CHECK(oracle::max_abs(ShiftedFactorization(zero, shift).solve(b) - b / shift) <= 1e-16);

    Eigen::VectorXd d(8);
    d << -1, 2, -3, 0.5, 10, -20, 0, 4;
    const auto diag = BandedOperator::diagonal(d);
    const Eigen::VectorXd expected = b.array() / (d.array().square() + shift);
    CHECK(oracle::max_abs(ShiftedFactorization(diag, shift).solve(b) - expected) <= 1e-16);
  }
}

TEST_CASE("banded solve matches the dense LU oracle and meets the residual bound") {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int s = 2 + trial * 3;
    const bool symmetric = trial % 2 == 0;
    BandedOperator a = oracle::random_tridiagonal(s, 100 + trial, symmetric);
    if (trial % 3 == 0) {
      // Badly scaled rows force pivoting.
      Eigen::MatrixXd d = a.to_dense();
      d.row(0) *= 1e3;
      a = *BandedOperator::try_tridiagonal(d);
    }
    const Eigen::MatrixXd dense = a.to_dense();
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd b(s);
    for (int i = 0; i < s; ++i) b[i] = dist(gen);
    for (int k : {1, 2, 7}) {
      const double shift = std::pow(kTwoPi * k, 2);
      Eigen::MatrixXd m = dense * dense;
      m.diagonal().array() += shift;
      const Eigen::VectorXd ref = m.fullPivLu().solve(b);
      const Eigen::VectorXd x = ShiftedFactorization(a, shift).solve(b);
      CHECK(oracle::max_abs(x - ref) <= 1e-12 * oracle::max_abs(ref));
      if (s == 8 && symmetric) CHECK(oracle::max_abs(x - ref) <= 1e-13 * oracle::max_abs(ref));
      const double norm = a.norm_inf();
      CHECK(oracle::max_abs(m * x - b) <= 1e-12 * (norm * norm + shift) * oracle::max_abs(x));
    }
  }
}

TEST_CASE("dense operators use the dense factorization") {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 0.5, -1, 0, 3, 2, 1, -2;
  const auto a = BandedOperator::dense(m);
  CHECK_FALSE(a.is_tridiagonal());
  const Eigen::VectorXd b = Eigen::VectorXd::Ones(3);
  Eigen::MatrixXd sq = m * m;
  sq.diagonal().array() += 4.0;
  CHECK(oracle::max_abs(ShiftedFactorization(a, 4.0).solve(b) - sq.fullPivLu().solve(b)) <= 1e-14);
}

TEST_CASE("factorization counter") {
  const auto before = bernq::shifted_factorization_count();
  const auto a = oracle::random_tridiagonal(6, 1, true);
  ShiftedFactorization f1(a, 1.0), f2(a, 2.0);
  CHECK(bernq::shifted_factorization_count() - before == 2);
}

TEST_CASE("matrix market and triplet I/O") {
  const auto a = oracle::random_tridiagonal(9, 42, false);
  std::stringstream mm;
  bernq::write_matrix_market(mm, a);
  const auto back = bernq::read_matrix_market(mm);
  CHECK(back.is_tridiagonal());
  CHECK(back.to_dense() == a.to_dense());

  std::stringstream tri;
  bernq::write_tridiagonal_triplets(tri, a);
  CHECK(bernq::read_tridiagonal_triplets(tri).to_dense() == a.to_dense());

  std::istringstream sym(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "% comment\n"
      "3 3 4\n1 1 2.0\n2 1 -1.0\n3 3 5\n3 1 7\n");
  const auto s = bernq::read_matrix_market(sym);
  CHECK_FALSE(s.is_tridiagonal());
  CHECK(s.to_dense()(0, 2) == 7.0);
  CHECK(s.to_dense()(2, 0) == 7.0);
  CHECK(s.to_dense()(0, 1) == -1.0);

  std::istringstream bad("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(bernq::read_matrix_market(bad), std::invalid_argument);
  std::istringstream rect("%%MatrixMarket matrix coordinate real general\n2 3 0\n");
  CHECK_THROWS_AS(bernq::read_matrix_market(rect), std::invalid_argument);
}
