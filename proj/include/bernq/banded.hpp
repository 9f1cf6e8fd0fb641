#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

namespace bernq {

/**
 * A real square operator stored either as three diagonals or densely.
 *
 * Tridiagonal storage keeps sub (size s-1), diag (size s) and super
 * (size s-1). Immutable once built.
 */
class BandedOperator {
 public:
  static BandedOperator tridiagonal(Eigen::VectorXd sub, Eigen::VectorXd diag,
                                    Eigen::VectorXd super);
  static BandedOperator dense(Eigen::MatrixXd matrix);
  /// Diagonal matrix, stored tridiagonally.
  static BandedOperator diagonal(const Eigen::VectorXd& d);

  Eigen::Index size() const { return size_; }
  bool is_tridiagonal() const { return !dense_.has_value(); }
  bool is_symmetric() const { return symmetric_; }

  const Eigen::VectorXd& sub() const { return sub_; }
  const Eigen::VectorXd& diag() const { return diag_; }
  const Eigen::VectorXd& super() const { return super_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd to_dense() const;

  double norm1() const;
  double norm_inf() const;

  /// Recovers tridiagonal storage from a dense matrix whose entries
  /// outside the three central diagonals are zero; returns nullopt
  /// otherwise.
  static std::optional<BandedOperator> try_tridiagonal(const Eigen::MatrixXd& m);

 private:
  BandedOperator() = default;
  void detect_symmetry();

  Eigen::Index size_ = 0;
  Eigen::VectorXd sub_, diag_, super_;
  std::optional<Eigen::MatrixXd> dense_;
  bool symmetric_ = false;
};

/**
 * LU factorization with partial pivoting of A^2 + shift * I.
 *
 * For tridiagonal A the square is pentadiagonal and is factored in band
 * storage (two sub- and, after pivoting, up to four super-diagonals).
 * Dense A falls back to a dense LU.
 */
class ShiftedFactorization {
 public:
  ShiftedFactorization(const BandedOperator& a, double shift);

  double shift() const { return shift_; }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  static constexpr int kLower = 2;
  static constexpr int kUpper = 2;
  static constexpr int kWidth = 2 * kLower + kUpper + 1;

  double& band(Eigen::Index i, Eigen::Index j) {
    return band_[static_cast<std::size_t>(i * kWidth + (j - i + kLower))];
  }
  double band(Eigen::Index i, Eigen::Index j) const {
    return band_[static_cast<std::size_t>(i * kWidth + (j - i + kLower))];
  }

  double shift_;
  Eigen::Index n_;
  std::vector<double> band_;
  std::vector<double> multipliers_;
  std::vector<Eigen::Index> pivots_;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> dense_lu_;
};

/// Number of ShiftedFactorization objects constructed in this process.
std::size_t shifted_factorization_count();

/// Matrix Market coordinate format (real, general or symmetric).
BandedOperator read_matrix_market(std::istream& in);
BandedOperator read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(std::ostream& out, const BandedOperator& a);

/// One row per matrix row: sub, diag, super. The first row's sub and the
/// last row's super are ignored on input and written as 0.
BandedOperator read_tridiagonal_triplets(std::istream& in);
BandedOperator read_tridiagonal_triplets(const std::filesystem::path& path);
void write_tridiagonal_triplets(std::ostream& out, const BandedOperator& a);

}  // namespace bernq
