#include "bernq/bvp.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bernq {

namespace {

void check_monotone(const std::vector<double>& nodes) {
  if (nodes.size() < 3) throw std::invalid_argument("grid needs at least one interior node");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i])) throw std::invalid_argument("grid nodes must be finite");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      throw std::invalid_argument("grid nodes must be strictly increasing");
    }
  }
}

bool constant_spacing(const std::vector<double>& nodes) {
  const double h = nodes[1] - nodes[0];
  for (std::size_t i = 2; i < nodes.size(); ++i) {
    if (std::abs((nodes[i] - nodes[i - 1]) - h) > 1e-14 * std::abs(h) * 8.0) return false;
  }
  return true;
}

}  // namespace

Grid uniform_grid(double a, int s) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("domain length must be positive");
  if (s < 1) throw std::invalid_argument("interior size s must be >= 1");
  Grid grid;
  grid.kind = GridKind::uniform;
  grid.nodes.resize(s + 2);
  for (int i = 0; i <= s + 1; ++i) grid.nodes[i] = a * i / (s + 1.0);
  grid.nodes.back() = a;
  return grid;
}

Grid geometric_grid(double x1, double sigma, int s) {
  if (!(x1 > 0.0) || !std::isfinite(x1)) throw std::invalid_argument("first spacing must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("ratio sigma must be positive");
  if (s < 1) throw std::invalid_argument("interior size s must be >= 1");
  Grid grid;
  grid.kind = GridKind::geometric;
  grid.nodes.resize(s + 2);
  grid.nodes[0] = 0.0;
  grid.nodes[1] = x1;
  for (int i = 1; i <= s; ++i) {
    grid.nodes[i + 1] = grid.nodes[i] + sigma * (grid.nodes[i] - grid.nodes[i - 1]);
  }
  return grid;
}

BandedOperator discretize_laplacian(const Grid& grid) {
  check_monotone(grid.nodes);
  const int s = grid.interior_size();
  if (s < 2) throw std::invalid_argument("discretization needs s >= 2 interior nodes");
  const auto& x = grid.nodes;
  Eigen::VectorXd sub(s - 1), diag(s), super(s - 1);
  for (int r = 0; r < s; ++r) {
    const int i = r + 1;  // node index of row r
    const double h_left = x[i] - x[i - 1];
    const double h_right = x[i + 1] - x[i];
    diag[r] = -2.0 / (h_right * h_left);
    if (r + 1 < s) super[r] = 2.0 / (h_right * (x[i + 1] - x[i - 1]));
    if (r > 0) sub[r - 1] = 2.0 / (h_left * (x[i + 1] - x[i - 1]));
  }
  return BandedOperator::tridiagonal(std::move(sub), std::move(diag), std::move(super));
}

BandedOperator circulant_shift(int s, double scale) {
  if (s < 2) throw std::invalid_argument("circulant dimension s must be >= 2");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(s, s);
  for (int i = 0; i + 1 < s; ++i) c(i + 1, i) = scale;
  c(0, s - 1) = scale;
  return BandedOperator::dense(std::move(c));
}

void write_grid(std::ostream& out, const Grid& grid) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  for (double x : grid.nodes) out << x << '\n';
  out.precision(old);
}

Grid read_grid(std::istream& in) {
  Grid grid;
  std::string token;
  while (in >> token) {
    if (token.front() == '#') {
      std::getline(in, token);
      continue;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw std::invalid_argument("malformed grid entry: " + token);
    grid.nodes.push_back(value);
  }
  check_monotone(grid.nodes);
  grid.kind = constant_spacing(grid.nodes) ? GridKind::uniform : GridKind::general;
  return grid;
}

Grid read_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open grid file " + path.string());
  return read_grid(in);
}

}  // namespace bernq
