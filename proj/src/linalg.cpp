#include "nlsplit/linalg.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nlsplit::linalg {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

Vec axpy(double alpha, const Vec& x, const Vec& y) {
  Vec r(y);
  for (std::size_t i = 0; i < x.size(); ++i) r[i] += alpha * x[i];
  return r;
}

Vec scale(double alpha, const Vec& x) {
  Vec r(x);
  for (double& v : r) v *= alpha;
  return r;
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

bool all_finite(const Vec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

Vec matvec(const Mat& A, const Vec& x) {
  if (static_cast<int>(x.size()) != A.cols()) throw DimensionMismatch("matvec: size mismatch");
  Vec y(A.rows(), 0.0);
  for (int i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Vec matvec_transpose(const Mat& A, const Vec& x) {
  if (static_cast<int>(x.size()) != A.rows()) throw DimensionMismatch("matvec_transpose: size mismatch");
  Vec y(A.cols(), 0.0);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) y[j] += A(i, j) * x[i];
  return y;
}

Mat transpose(const Mat& A) {
  Mat T(A.cols(), A.rows());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
  return T;
}

Mat matmul(const Mat& A, const Mat& B) {
  if (A.cols() != B.rows()) throw DimensionMismatch("matmul: size mismatch");
  Mat C(A.rows(), B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) {
      const double a = A(i, k);
      for (int j = 0; j < B.cols(); ++j) C(i, j) += a * B(k, j);
    }
  return C;
}

Mat gram_serial(const Mat& A) {
  const int m = A.cols();
  Mat G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      double s = 0.0;
      for (int r = 0; r < A.rows(); ++r) s += A(r, i) * A(r, j);
      G(i, j) = s;
      G(j, i) = s;
    }
  return G;
}

Mat gram(const Mat& A, int threads) {
  if (threads <= 1) return gram_serial(A);
  const int m = A.cols();
  Mat G(m, m);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads)
#endif
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double s = 0.0;
      for (int r = 0; r < A.rows(); ++r) s += A(r, i) * A(r, j);
      G(i, j) = s;
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) G(j, i) = G(i, j);
  return G;
}

// -- LU ----------------------------------------------------------------------

LuFactor::LuFactor(const Mat& A) : lu_(A), piv_(A.rows()) {
  const int n = A.rows();
  if (A.cols() != n) throw DimensionMismatch("LuFactor: matrix not square");
  double amax = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) amax = std::max(amax, std::fabs(A(i, j)));
  const double pivot_floor = 1e-14 * amax;

  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::fabs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::fabs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best <= pivot_floor || !(best > 0.0))
      throw SingularMatrix("lu_solve: pivot below 1e-14 * max|A|");
    piv_[k] = p;
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
    const double inv = 1.0 / lu_(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = lu_(i, k) * inv;
      lu_(i, k) = f;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

Vec LuFactor::solve(const Vec& b) const {
  const int n = lu_.rows();
  if (static_cast<int>(b.size()) != n) throw DimensionMismatch("LuFactor::solve: size mismatch");
  Vec x(b);
  for (int k = 0; k < n; ++k) {
    std::swap(x[k], x[piv_[k]]);
    for (int i = k + 1; i < n; ++i) x[i] -= lu_(i, k) * x[k];
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

Vec LuFactor::solve_transpose(const Vec& b) const {
  // A = P^-1 L U  =>  A^T x = b  solved as U^T y = b, L^T w = y, x = P^T w.
  const int n = lu_.rows();
  if (static_cast<int>(b.size()) != n) throw DimensionMismatch("LuFactor::solve_transpose: size mismatch");
  Vec x(b);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) x[i] -= lu_(j, i) * x[j];
    x[i] /= lu_(i, i);
  }
  for (int i = n - 1; i >= 0; --i)
    for (int j = i + 1; j < n; ++j) x[i] -= lu_(j, i) * x[j];
  for (int k = n - 1; k >= 0; --k) std::swap(x[k], x[piv_[k]]);
  return x;
}

Vec lu_solve(const Mat& A, const Vec& b) { return LuFactor(A).solve(b); }

// -- updatable QR window -----------------------------------------------------

QRFactorization qr_empty(int n) {
  QRFactorization f;
  f.n = n;
  f.Q = Mat(n, 0);
  f.R = Mat(0, 0);
  return f;
}

QRFactorization qr_from_columns(const std::vector<Vec>& cols, int n) {
  QRFactorization f = qr_empty(n);
  for (const Vec& c : cols) f = qr_append_column(f, c);
  return f;
}

QRFactorization qr_append_column(const QRFactorization& f, const Vec& col) {
  const int n = f.n;
  const int k = f.cols();
  if (static_cast<int>(col.size()) != n) throw DimensionMismatch("qr_append_column: column length mismatch");

  const double cnorm = norm2(col);
  Vec w(k, 0.0);
  Vec r(col);
  // Two passes of classical Gram-Schmidt keep Q orthonormal to ~1e-15.
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += f.Q(i, j) * r[i];
      w[j] += s;
      for (int i = 0; i < n; ++i) r[i] -= s * f.Q(i, j);
    }
  }
  const double rho = norm2(r);
  if (!(rho > 1e-12 * cnorm) || cnorm == 0.0)
    throw RankCollapse("qr_append_column: new column numerically dependent");

  QRFactorization out;
  out.n = n;
  out.Q = Mat(n, k + 1);
  out.R = Mat(k + 1, k + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) out.Q(i, j) = f.Q(i, j);
    out.Q(i, k) = r[i] / rho;
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) out.R(i, j) = f.R(i, j);
    out.R(i, k) = w[i];
  }
  out.R(k, k) = rho;
  return out;
}

QRFactorization qr_drop_first_column(const QRFactorization& f) {
  const int k = f.cols();
  if (k == 0) throw EmptyWindow("qr_drop_first_column: no columns");
  const int n = f.n;

  // R without its first column is upper Hessenberg; restore triangularity
  // with Givens rotations applied to R's rows and Q's columns.
  Mat H(k, k - 1);
  for (int i = 0; i < k; ++i)
    for (int j = 1; j < k; ++j) H(i, j - 1) = f.R(i, j);
  Mat Q(f.Q);

  for (int j = 0; j < k - 1; ++j) {
    const double a = H(j, j);
    const double b = H(j + 1, j);
    const double r = std::hypot(a, b);
    if (r == 0.0) continue;
    const double c = a / r;
    const double s = b / r;
    for (int col = j; col < k - 1; ++col) {
      const double hj = H(j, col);
      const double hj1 = H(j + 1, col);
      H(j, col) = c * hj + s * hj1;
      H(j + 1, col) = -s * hj + c * hj1;
    }
    for (int i = 0; i < n; ++i) {
      const double qj = Q(i, j);
      const double qj1 = Q(i, j + 1);
      Q(i, j) = c * qj + s * qj1;
      Q(i, j + 1) = -s * qj + c * qj1;
    }
  }

  QRFactorization out;
  out.n = n;
  out.Q = Mat(n, k - 1);
  out.R = Mat(k - 1, k - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k - 1; ++j) out.Q(i, j) = Q(i, j);
  for (int i = 0; i < k - 1; ++i)
    for (int j = i; j < k - 1; ++j) out.R(i, j) = H(i, j);
  return out;
}

Mat qr_reconstruct(const QRFactorization& f) { return matmul(f.Q, f.R); }

Vec least_squares(const QRFactorization& f, const Vec& b) {
  const int k = f.cols();
  if (k == 0) throw EmptyWindow("least_squares: empty window");
  if (static_cast<int>(b.size()) != f.n) throw DimensionMismatch("least_squares: rhs length mismatch");

  Vec y(k, 0.0);
  for (int j = 0; j < k; ++j) {
    double s = 0.0;
    for (int i = 0; i < f.n; ++i) s += f.Q(i, j) * b[i];
    y[j] = s;
  }
  double rmax = 0.0;
  for (int i = 0; i < k; ++i) rmax = std::max(rmax, std::fabs(f.R(i, i)));
  Vec xi(k, 0.0);
  for (int i = k - 1; i >= 0; --i) {
    double s = y[i];
    for (int j = i + 1; j < k; ++j) s -= f.R(i, j) * xi[j];
    if (std::fabs(f.R(i, i)) <= 1e-13 * rmax)
      throw DegenerateWindow("least_squares: triangular factor singular");
    xi[i] = s / f.R(i, i);
  }
  return xi;
}

Vec sum_to_one_least_squares(const Mat& G) {
  const int k = G.cols();
  if (k < 1) throw DegenerateWindow("sum_to_one_least_squares: no columns");
  const int n = G.rows();
  if (k == 1) return Vec{1.0};

  Vec g0(n);
  for (int i = 0; i < n; ++i) g0[i] = G(i, 0);

  // Reduced problem: minimize ||g0 + D t|| with D's columns g_i - g0.
  // Dependent columns are skipped (zero weight) instead of failing, which
  // covers exactly-duplicated residual columns.
  QRFactorization qr = qr_empty(n);
  std::vector<int> kept;
  for (int j = 1; j < k; ++j) {
    Vec d(n);
    for (int i = 0; i < n; ++i) d[i] = G(i, j) - g0[i];
    try {
      qr = qr_append_column(qr, d);
      kept.push_back(j);
    } catch (const RankCollapse&) {
      // zero weight for this column
    }
  }

  Vec eta(k, 0.0);
  if (!kept.empty()) {
    Vec t = least_squares(qr, g0);
    for (std::size_t idx = 0; idx < kept.size(); ++idx) eta[kept[idx]] = -t[idx];
  }
  double tail = 0.0;
  for (int j = 1; j < k; ++j) tail += eta[j];
  eta[0] = 1.0 - tail;
  if (!all_finite(eta)) throw DegenerateWindow("sum_to_one_least_squares: non-finite solution");
  return eta;
}

}  // namespace nlsplit::linalg
