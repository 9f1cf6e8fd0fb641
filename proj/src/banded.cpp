#include "bernq/banded.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bernq/errors.hpp"

namespace bernq {

namespace {
std::atomic<std::size_t> g_factorizations{0};
}

BandedOperator BandedOperator::tridiagonal(Eigen::VectorXd sub,
                                           Eigen::VectorXd diag,
                                           Eigen::VectorXd super) {
  const Eigen::Index n = diag.size();
  if (n < 1) throw std::invalid_argument("operator dimension must be >= 1");
  if (sub.size() != n - 1 || super.size() != n - 1) {
    throw std::invalid_argument("off-diagonals must have size s - 1");
  }
  BandedOperator op;
  op.size_ = n;
  op.sub_ = std::move(sub);
  op.diag_ = std::move(diag);
  op.super_ = std::move(super);
  op.detect_symmetry();
  return op;
}

BandedOperator BandedOperator::dense(Eigen::MatrixXd matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 1) {
    throw std::invalid_argument("operator must be square and non-empty");
  }
  BandedOperator op;
  op.size_ = matrix.rows();
  op.dense_ = std::move(matrix);
  op.detect_symmetry();
  return op;
}

BandedOperator BandedOperator::diagonal(const Eigen::VectorXd& d) {
  const Eigen::Index n = d.size();
  return tridiagonal(Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 1, 0)), d,
                     Eigen::VectorXd::Zero(std::max<Eigen::Index>(n - 1, 0)));
}

std::optional<BandedOperator> BandedOperator::try_tridiagonal(
    const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols() || n < 1) return std::nullopt;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(i - j) > 1 && m(i, j) != 0.0) return std::nullopt;
    }
  }
  Eigen::VectorXd sub(n - 1), super(n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    sub[i] = m(i + 1, i);
    super[i] = m(i, i + 1);
  }
  return tridiagonal(std::move(sub), m.diagonal(), std::move(super));
}

void BandedOperator::detect_symmetry() {
  if (dense_) {
    symmetric_ = *dense_ == dense_->transpose();
  } else {
    symmetric_ = sub_ == super_;
  }
}

Eigen::VectorXd BandedOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != size_) throw std::invalid_argument("dimension mismatch in apply");
  if (dense_) return (*dense_) * x;
  Eigen::VectorXd y(size_);
  for (Eigen::Index i = 0; i < size_; ++i) {
    double acc = diag_[i] * x[i];
    if (i > 0) acc += sub_[i - 1] * x[i - 1];
    if (i + 1 < size_) acc += super_[i] * x[i + 1];
    y[i] = acc;
  }
  return y;
}

Eigen::MatrixXd BandedOperator::to_dense() const {
  if (dense_) return *dense_;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size_, size_);
  for (Eigen::Index i = 0; i < size_; ++i) {
    m(i, i) = diag_[i];
    if (i + 1 < size_) {
      m(i + 1, i) = sub_[i];
      m(i, i + 1) = super_[i];
    }
  }
  return m;
}

double BandedOperator::norm1() const {
  if (dense_) return dense_->cwiseAbs().colwise().sum().maxCoeff();
  double best = 0.0;
  for (Eigen::Index j = 0; j < size_; ++j) {
    double col = std::abs(diag_[j]);
    if (j > 0) col += std::abs(super_[j - 1]);
    if (j + 1 < size_) col += std::abs(sub_[j]);
    best = std::max(best, col);
  }
  return best;
}

double BandedOperator::norm_inf() const {
  if (dense_) return dense_->cwiseAbs().rowwise().sum().maxCoeff();
  double best = 0.0;
  for (Eigen::Index i = 0; i < size_; ++i) {
    double row = std::abs(diag_[i]);
    if (i > 0) row += std::abs(sub_[i - 1]);
    if (i + 1 < size_) row += std::abs(super_[i]);
    best = std::max(best, row);
  }
  return best;
}

ShiftedFactorization::ShiftedFactorization(const BandedOperator& a, double shift)
    : shift_(shift), n_(a.size()) {
  ++g_factorizations;
  if (!a.is_tridiagonal()) {
    const Eigen::MatrixXd m = a.to_dense();
    Eigen::MatrixXd sq = m * m;
    sq.diagonal().array() += shift;
    dense_lu_.emplace(sq);
    const double rc = dense_lu_->rcond();
    if (!(rc > std::numeric_limits<double>::epsilon())) {
      throw NumericalError("A^2 + shift I is numerically singular");
    }
    return;
  }

  const auto& sub = a.sub();
  const auto& dg = a.diag();
  const auto& sup = a.super();
  auto entry = [&](Eigen::Index i, Eigen::Index j) -> double {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) return 0.0;
    if (i == j) return dg[i];
    if (j == i + 1) return sup[i];
    if (i == j + 1) return sub[j];
    return 0.0;
  };

  band_.assign(static_cast<std::size_t>(n_ * kWidth), 0.0);
  for (Eigen::Index i = 0; i < n_; ++i) {
    for (Eigen::Index j = std::max<Eigen::Index>(0, i - 2);
         j <= std::min(n_ - 1, i + 2); ++j) {
      double v = 0.0;
      for (Eigen::Index k = std::max(i, j) - 1; k <= std::min(i, j) + 1; ++k) {
        v += entry(i, k) * entry(k, j);
      }
      if (i == j) v += shift;
      band(i, j) = v;
    }
  }

  multipliers_.assign(static_cast<std::size_t>(n_ * kLower), 0.0);
  pivots_.resize(static_cast<std::size_t>(n_));
  for (Eigen::Index c = 0; c < n_; ++c) {
    const Eigen::Index last_row = std::min(c + kLower, n_ - 1);
    const Eigen::Index last_col = std::min(c + kLower + kUpper, n_ - 1);
    Eigen::Index piv = c;
    for (Eigen::Index r = c + 1; r <= last_row; ++r) {
      if (std::abs(band(r, c)) > std::abs(band(piv, c))) piv = r;
    }
    const double pivot_value = band(piv, c);
    if (pivot_value == 0.0 || !std::isfinite(pivot_value)) {
      throw NumericalError("singular pivot in the banded factorization of A^2 + shift I");
    }
    pivots_[c] = piv;
    if (piv != c) {
      for (Eigen::Index j = c; j <= last_col; ++j) std::swap(band(c, j), band(piv, j));
    }
    for (Eigen::Index r = c + 1; r <= last_row; ++r) {
      const double l = band(r, c) / band(c, c);
      multipliers_[static_cast<std::size_t>(c * kLower + (r - c - 1))] = l;
      band(r, c) = 0.0;
      if (l == 0.0) continue;
      for (Eigen::Index j = c + 1; j <= last_col; ++j) band(r, j) -= l * band(c, j);
    }
  }
}

Eigen::VectorXd ShiftedFactorization::solve(const Eigen::VectorXd& b) const {
  if (b.size() != n_) throw std::invalid_argument("dimension mismatch in solve");
  if (dense_lu_) return dense_lu_->solve(b);
  Eigen::VectorXd y = b;
  for (Eigen::Index c = 0; c < n_; ++c) {
    const Eigen::Index piv = pivots_[c];
    if (piv != c) std::swap(y[c], y[piv]);
    const Eigen::Index last_row = std::min(c + kLower, n_ - 1);
    for (Eigen::Index r = c + 1; r <= last_row; ++r) {
      y[r] -= multipliers_[static_cast<std::size_t>(c * kLower + (r - c - 1))] * y[c];
    }
  }
  for (Eigen::Index i = n_ - 1; i >= 0; --i) {
    double acc = y[i];
    const Eigen::Index last_col = std::min(i + kLower + kUpper, n_ - 1);
    for (Eigen::Index j = i + 1; j <= last_col; ++j) acc -= band(i, j) * y[j];
    y[i] = acc / band(i, i);
  }
  return y;
}

std::size_t shifted_factorization_count() { return g_factorizations.load(); }

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

BandedOperator compact(Eigen::MatrixXd m) {
  if (auto tri = BandedOperator::try_tridiagonal(m)) return *std::move(tri);
  return BandedOperator::dense(std::move(m));
}

}  // namespace

BandedOperator read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("Matrix Market: empty input");
  std::istringstream header(lower(line));
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%matrixmarket" || object != "matrix" || format != "coordinate") {
    throw std::invalid_argument("Matrix Market: only 'matrix coordinate' is supported");
  }
  if (field != "real" && field != "integer") {
    throw std::invalid_argument("Matrix Market: field must be real or integer");
  }
  const bool symmetric = symmetry == "symmetric";
  if (!symmetric && symmetry != "general") {
    throw std::invalid_argument("Matrix Market: symmetry must be general or symmetric");
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream size_line(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols >> nnz) || rows < 1 || rows != cols || nnz < 0) {
    throw std::invalid_argument("Matrix Market: bad size line (square matrix required)");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (long e = 0; e < nnz; ++e) {
    long i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw std::invalid_argument("Matrix Market: truncated entries");
    if (i < 1 || j < 1 || i > rows || j > cols) {
      throw std::invalid_argument("Matrix Market: entry index out of range");
    }
    m(i - 1, j - 1) = v;
    if (symmetric) m(j - 1, i - 1) = v;
  }
  return compact(std::move(m));
}

BandedOperator read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const BandedOperator& a) {
  const Eigen::MatrixXd m = a.to_dense();
  long nnz = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0.0) ++nnz;
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  out << std::setprecision(17);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << m(i, j) << '\n';
}

BandedOperator read_tridiagonal_triplets(std::istream& in) {
  std::vector<double> lo, mid, hi;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream row(line);
    double a = 0.0, b = 0.0, c = 0.0;
    if (!(row >> a >> b >> c)) {
      throw std::invalid_argument("triplet format: each row needs sub, diag, super");
    }
    lo.push_back(a);
    mid.push_back(b);
    hi.push_back(c);
  }
  const Eigen::Index n = static_cast<Eigen::Index>(mid.size());
  if (n < 1) throw std::invalid_argument("triplet format: no rows");
  Eigen::VectorXd sub(n - 1), diag(n), super(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    diag[i] = mid[i];
    if (i > 0) sub[i - 1] = lo[i];
    if (i + 1 < n) super[i] = hi[i];
  }
  return BandedOperator::tridiagonal(std::move(sub), std::move(diag), std::move(super));
}

BandedOperator read_tridiagonal_triplets(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  return read_tridiagonal_triplets(in);
}

void write_tridiagonal_triplets(std::ostream& out, const BandedOperator& a) {
  if (!a.is_tridiagonal()) {
    throw std::invalid_argument("triplet format requires a tridiagonal operator");
  }
  out << std::setprecision(17);
  const Eigen::Index n = a.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lo = i > 0 ? a.sub()[i - 1] : 0.0;
    const double hi = i + 1 < n ? a.super()[i] : 0.0;
    out << lo << ' ' << a.diag()[i] << ' ' << hi << '\n';
  }
}

}  // namespace bernq
