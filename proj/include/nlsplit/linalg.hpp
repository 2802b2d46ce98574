#pragma once

#include <cstddef>
#include <vector>

#include "nlsplit/errors.hpp"

namespace nlsplit {

using Vec = std::vector<double>;

/// Dense row-major matrix. Sizes here stay small (at most a few thousand),
/// so everything below is direct dense arithmetic.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

namespace linalg {

// -- vector helpers ----------------------------------------------------------

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
Vec axpy(double alpha, const Vec& x, const Vec& y);  // alpha*x + y
Vec scale(double alpha, const Vec& x);
Vec sub(const Vec& a, const Vec& b);  // a - b
Vec add(const Vec& a, const Vec& b);
bool all_finite(const Vec& a);

Vec matvec(const Mat& A, const Vec& x);
Vec matvec_transpose(const Mat& A, const Vec& x);
Mat transpose(const Mat& A);
Mat matmul(const Mat& A, const Mat& B);

/// A^T A, optionally parallel over output rows (bit-identical to serial: each
/// entry is a fixed-order dot product).
Mat gram(const Mat& A, int threads = 1);
Mat gram_serial(const Mat& A);

// -- LU ----------------------------------------------------------------------

/// Partially pivoted LU factorization for reuse across solves.
class LuFactor {
 public:
  explicit LuFactor(const Mat& A);  // throws SingularMatrix
  Vec solve(const Vec& b) const;
  Vec solve_transpose(const Vec& b) const;
  int dim() const { return lu_.rows(); }

 private:
  Mat lu_;
  std::vector<int> piv_;
};

/// Solve Ax=b by partially pivoted LU. Throws SingularMatrix when a pivot
/// magnitude falls below 1e-14 * max|A|.
Vec lu_solve(const Mat& A, const Vec& b);

// -- updatable QR window -----------------------------------------------------

/// Thin QR factorization M = Q R of an n-by-k window, supporting column
/// append and first-column removal without refactoring.
struct QRFactorization {
  Mat Q;  // n x k, orthonormal columns
  Mat R;  // k x k, upper triangular
  int n = 0;

  int cols() const { return R.cols(); }
  int rows() const { return n; }
};

QRFactorization qr_empty(int n);
QRFactorization qr_from_columns(const std::vector<Vec>& cols, int n);

/// Widen the factorization by one column. Throws RankCollapse when the
/// column's residual after projection is below 1e-12 * ||col||.
QRFactorization qr_append_column(const QRFactorization& f, const Vec& col);

/// Factorization of the window with its first column removed (Givens
/// downdate). Throws EmptyWindow when there is no column to drop.
QRFactorization qr_drop_first_column(const QRFactorization& f);

/// Reassemble Q*R (test/diagnostic helper).
Mat qr_reconstruct(const QRFactorization& f);

/// Least-squares coefficients xi minimizing ||M xi - b|| for the factored M.
Vec least_squares(const QRFactorization& f, const Vec& b);

/// Minimize ||G eta|| subject to sum(eta) = 1, by eliminating the constraint
/// (eta_0 = 1 - sum of the rest) and solving the reduced least squares.
/// Columns of the reduced system that are numerically dependent get zero
/// weight, so exactly-duplicated columns of G are handled gracefully.
Vec sum_to_one_least_squares(const Mat& G);

}  // namespace linalg
}  // namespace nlsplit
