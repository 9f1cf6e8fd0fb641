#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

#include "bernq/bvp.hpp"
#include "oracles.hpp"

TEST_CASE("uniform grid") {
  const auto g = bernq::uniform_grid(24.0, 512);
  REQUIRE(g.nodes.size() == 514u);
  CHECK(g.interior_size() == 512);
  CHECK(g.kind == bernq::GridKind::uniform);
  CHECK(g.nodes[1] == doctest::Approx(24.0 / 513.0).epsilon(1e-15));
  CHECK(g.length() == 24.0);
  for (std::size_t i = 1; i < g.nodes.size(); ++i) {
    CHECK(g.nodes[i] - g.nodes[i - 1] == doctest::Approx(24.0 / 513.0).epsilon(1e-12));
  }
  const auto one = bernq::uniform_grid(1.0, 1);
  CHECK(one.nodes == std::vector<double>{0.0, 0.5, 1.0});
}

TEST_CASE("geometric grid") {
  const auto g = bernq::geometric_grid(0.01, 1.005, 512);
  CHECK(g.nodes[0] == 0.0);
  CHECK(g.nodes[1] == 0.01);
  CHECK(g.nodes[2] == doctest::Approx(0.02005).epsilon(1e-14));
  for (std::size_t i = 2; i < g.nodes.size(); ++i) {
    const double ratio = (g.nodes[i] - g.nodes[i - 1]) / (g.nodes[i - 1] - g.nodes[i - 2]);
    CHECK(ratio == doctest::Approx(1.005).epsilon(1e-9));
  }
  const auto flat = bernq::geometric_grid(0.5, 1.0, 6);
  for (std::size_t i = 0; i < flat.nodes.size(); ++i) CHECK(flat.nodes[i] == doctest::Approx(0.5 * i));
  CHECK_THROWS_AS(bernq::geometric_grid(0.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(bernq::uniform_grid(1.0, 0), std::invalid_argument);
}

TEST_CASE("three-point Laplacian") {
  const auto small = bernq::discretize_laplacian(bernq::uniform_grid(1.0, 2));
  Eigen::MatrixXd expected(2, 2);
  expected << -18.0, 9.0, 9.0, -18.0;
  CHECK((small.to_dense() - expected).norm() <= 1e-12);

  const int s = 20;
  const double h = 3.0 / (s + 1);
  const auto u = bernq::discretize_laplacian(bernq::uniform_grid(3.0, s));
  CHECK(u.is_tridiagonal());
  for (int i = 0; i < s; ++i) CHECK(u.diag()[i] == doctest::Approx(-2.0 / (h * h)));
  for (int i = 0; i + 1 < s; ++i) {
    CHECK(u.sub()[i] == doctest::Approx(1.0 / (h * h)));
    CHECK(u.super()[i] == doctest::Approx(1.0 / (h * h)));
  }

  const auto g = bernq::geometric_grid(0.1, 1.3, 5);
  const auto a = bernq::discretize_laplacian(g);
  const auto& x = g.nodes;
  const int i = 2;  // row for node x[3]
  const double hl = x[3] - x[2], hr = x[4] - x[3];
  CHECK(a.diag()[i] == doctest::Approx(-2.0 / (hl * hr)));
  CHECK(a.super()[i] == doctest::Approx(2.0 / (hr * (hl + hr))));
  CHECK(a.sub()[i - 1] == doctest::Approx(2.0 / (hl * (hl + hr))));
  CHECK_THROWS_AS(bernq::discretize_laplacian(bernq::uniform_grid(1.0, 1)), std::invalid_argument);
}

TEST_CASE("second-order consistency on a smooth function") {
  std::vector<double> err;
  std::vector<double> hs;
  for (int s : {20, 40, 80, 160}) {
    const auto g = bernq::geometric_grid(1.0 / s, 1.0 + 1.0 / s, s);
    const auto a = bernq::discretize_laplacian(g);
    Eigen::VectorXd u(s), d2(s);
    for (int i = 0; i < s; ++i) {
      u[i] = std::sin(g.nodes[i + 1]);
      d2[i] = -u[i];
    }
    // Boundary values enter through the first and last rows.
    Eigen::VectorXd au = a.apply(u);
    const double hl = g.nodes[1] - g.nodes[0], hr0 = g.nodes[2] - g.nodes[1];
    au[0] += 2.0 / (hl * (hl + hr0)) * std::sin(g.nodes[0]);
    const double hr = g.nodes[s + 1] - g.nodes[s], hl1 = g.nodes[s] - g.nodes[s - 1];
    au[s - 1] += 2.0 / (hr * (hl1 + hr)) * std::sin(g.nodes[s + 1]);
    err.push_back(oracle::max_abs(au - d2));
    hs.push_back(1.0 / s);
  }
  // Second order needs the spacing ratio to approach 1 as h shrinks.
  CHECK(oracle::loglog_slope(hs, err) > 1.8);
}

TEST_CASE("Laplacian spectra") {
  const auto geo = bernq::discretize_laplacian(bernq::geometric_grid(0.01, 1.005, 512));
  const oracle::TridiagonalEigen eg(geo);
  CHECK(eg.eigenvalues.maxCoeff() < 0.0);
  CHECK(eg.eigenvalues.minCoeff() == doctest::Approx(-3.7542e4).epsilon(1e-3));
  CHECK(eg.eigenvalues.maxCoeff() == doctest::Approx(-1.7372e-2).epsilon(1e-3));

  const auto uni = bernq::discretize_laplacian(bernq::uniform_grid(24.0, 512));
  const oracle::TridiagonalEigen eu(uni);
  const double h = 24.0 / 513.0;
  CHECK(eu.eigenvalues.minCoeff() == doctest::Approx(-4.0 / (h * h) * std::pow(std::sin(512 * M_PI / 1026.0), 2)).epsilon(1e-10));
  CHECK(eu.eigenvalues.maxCoeff() == doctest::Approx(-4.0 / (h * h) * std::pow(std::sin(M_PI / 1026.0), 2)).epsilon(1e-8));
}

TEST_CASE("circulant shift") {
  const auto c3 = bernq::circulant_shift(3, 1.0).to_dense();
  Eigen::MatrixXd p(3, 3);
  p << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  CHECK(c3 == p);
  CHECK(c3 * c3 * c3 == Eigen::MatrixXd::Identity(3, 3));

  const auto c = bernq::circulant_shift(16, 1e-8).to_dense();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(16, 16);
  for (int i = 0; i < 16; ++i) power = power * (c / 1e-8);
  CHECK((power - Eigen::MatrixXd::Identity(16, 16)).norm() <= 1e-12);
  const Eigen::VectorXcd ev = c.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) CHECK(std::abs(ev[i]) == doctest::Approx(1e-8).epsilon(1e-9));
}

TEST_CASE("grid files") {
  const auto g = bernq::geometric_grid(0.01, 1.005, 30);
  std::stringstream io;
  bernq::write_grid(io, g);
  const auto back = bernq::read_grid(io);
  CHECK(back.nodes == g.nodes);

  const auto u = bernq::uniform_grid(2.0, 9);
  std::stringstream io2;
  bernq::write_grid(io2, u);
  CHECK(bernq::read_grid(io2).kind == bernq::GridKind::uniform);

  std::istringstream bad("0\n1\n0.5\n2\n");
  CHECK_THROWS_AS(bernq::read_grid(bad), std::invalid_argument);
  CHECK_THROWS(bernq::read_grid(std::filesystem::path("/nonexistent/grid.txt")));
}
