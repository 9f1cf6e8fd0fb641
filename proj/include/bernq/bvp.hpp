#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "bernq/banded.hpp"

namespace bernq {

enum class GridKind { uniform, geometric, general };

// Nodes x_0 < x_1 < ... < x_{s+1}; the s interior nodes carry unknowns.
struct Grid {
  std::vector<double> nodes;
  GridKind kind = GridKind::general;

  int interior_size() const { return static_cast<int>(nodes.size()) - 2; }
  double length() const { return nodes.back() - nodes.front(); }
};

/// x_i = i a / (s + 1), i = 0 ... s + 1.
Grid uniform_grid(double a, int s);

/// x_0 = 0, x_1 = x1, x_{i+1} = x_i + sigma (x_i - x_{i-1}); stops after
/// exactly s interior nodes, so the domain length is whatever results.
Grid geometric_grid(double x1, double sigma, int s);

/// Three-point second-derivative stencil with homogeneous Dirichlet ends:
///   a_ii     = -2 / (h_{i-1} h_i)
///   a_i,i+1  =  2 / (h_i (h_{i-1} + h_i))
///   a_i,i-1  =  2 / (h_{i-1} (h_{i-1} + h_i))
/// with h_i = x_{i+1} - x_i.
BandedOperator discretize_laplacian(const Grid& grid);

/// scale * C, C the cyclic down-shift (C e_i = e_{i+1}, C e_s = e_1).
BandedOperator circulant_shift(int s, double scale);

/// Single-column text, one node per line. Reading checks monotonicity and
/// tags the grid uniform when the spacing is constant to 1e-14 relative.
void write_grid(std::ostream& out, const Grid& grid);
Grid read_grid(std::istream& in);
Grid read_grid(const std::filesystem::path& path);

}  // namespace bernq
