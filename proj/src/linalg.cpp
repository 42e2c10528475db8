#include "mmfs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "mmfs/error.hpp"
#include "mmfs/simd/kernels.hpp"

namespace mmfs {

namespace {

std::string shape(const DenseMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_square(const DenseMatrix& a, const char* op) {
  if (!a.square()) throw DimensionMismatch(std::string(op) + ": matrix is " + shape(a) + ", not square");
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), entries_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionMismatch("DenseMatrix: " + std::to_string(entries_.size()) + " entries for a " +
                            std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
  DenseMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<double> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("DenseMatrix::from_rows: ragged rows");
    e.insert(e.end(), row.begin(), row.end());
  }
  return DenseMatrix(r, c, std::move(e));
}

DenseMatrix DenseMatrix::generate(std::size_t rows, std::size_t cols,
                                  const std::function<double(std::size_t, std::size_t)>& entry) {
  DenseMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(i, j);
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DenseMatrix::max_abs() const {
  return entries_.empty() ? 0.0 : simd::active().max_abs(entries_.data(), entries_.size());
}

double DenseMatrix::frobenius_norm() const {
  return std::sqrt(simd::active().dot(entries_.data(), entries_.data(), entries_.size()));
}

bool DenseMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double v) { return std::isfinite(v); });
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product " + shape(a) + " * " + shape(b));
  const auto& k = simd::active();
  DenseMatrix c(a.rows(), b.cols());
  // Row-oriented i-k-j order so the inner loop is a contiguous axpy.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i).data();
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double aip = a(i, p);
      if (aip != 0.0) k.axpy(aip, b.row(p).data(), ci, b.cols());
    }
  }
  return c;
}

DenseMatrix operator*(double c, const DenseMatrix& a) {
  DenseMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (double& v : out.row(i)) v *= c;
  return out;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrix difference " + shape(a) + " - " + shape(b));
  }
  DenseMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) simd::active().axpy(-1.0, b.row(i).data(), out.row(i).data(), a.cols());
  return out;
}

std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw DimensionMismatch("matrix-vector product " + shape(a) + " * " + std::to_string(x.size()));
  }
  const auto& k = simd::active();
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = k.dot(a.row(i).data(), x.data(), x.size());
  return y;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).max_abs(); }

double norm2(std::span<const double> x) {
  // Scaled to stay finite for entries near the overflow threshold.
  const double scale = x.empty() ? 0.0 : simd::active().max_abs(x.data(), x.size());
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (double v : x) sum += (v / scale) * (v / scale);
  return scale * std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// LU

LuFactorization::LuFactorization(const DenseMatrix& a) : lu_(a), perm_(a.rows()) {
  require_square(a, "lu");
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  const double threshold = kSingularPivotRatio * a.max_abs();
  if (n > 0 && a.max_abs() == 0.0) {
    singular_ = true;
    return;
  }
  const auto& k = simd::active();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::fabs(lu_(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      const double v = std::fabs(lu_(i, col));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (!(best >= threshold) || best == 0.0) {
      singular_ = true;
      singular_column_ = col;
      return;
    }
    if (piv != col) {
      std::swap_ranges(lu_.row(col).begin(), lu_.row(col).end(), lu_.row(piv).begin());
      std::swap(perm_[col], perm_[piv]);
      sign_ = -sign_;
    }
    const double pivot = lu_(col, col);
    const double* urow = lu_.row(col).data() + col + 1;
    for (std::size_t i = col + 1; i < n; ++i) {
      const double l = lu_(i, col) / pivot;
      lu_(i, col) = l;
      if (l != 0.0) k.axpy(-l, urow, lu_.row(i).data() + col + 1, n - col - 1);
    }
  }
}

double LuFactorization::determinant() const {
  if (singular_) return 0.0;
  double det = sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
  return det;
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) {
    throw DimensionMismatch("lu_solve: right-hand side has " + std::to_string(b.size()) + " entries, matrix has " +
                            std::to_string(n) + " rows");
  }
  if (singular_) {
    throw SingularMatrix("lu_solve: pivot below " + std::to_string(kSingularPivotRatio) +
                         " * max|a_ij| in column " + std::to_string(singular_column_ + 1));
  }
  const auto& k = simd::active();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 1; i < n; ++i) x[i] -= k.dot(lu_.row(i).data(), x.data(), i);
  for (std::size_t i = n; i-- > 0;) {
    const double s = k.dot(lu_.row(i).data() + i + 1, x.data() + i + 1, n - i - 1);
    x[i] = (x[i] - s) / lu_(i, i);
  }
  return x;
}

std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b) {
  require_square(a, "lu_solve");
  if (b.size() != a.rows()) {
    throw DimensionMismatch("lu_solve: right-hand side has " + std::to_string(b.size()) + " entries, matrix is " +
                            shape(a));
  }
  return LuFactorization(a).solve(b);
}

double determinant(const DenseMatrix& a) {
  require_square(a, "determinant");
  return LuFactorization(a).determinant();
}

// ---------------------------------------------------------------------------
// One-sided Jacobi

std::vector<double> singular_values(const DenseMatrix& a, const JacobiOptions& opts) {
  if (a.empty()) throw InvalidArgument("singular_values: empty matrix");
  const bool by_columns = a.cols() <= a.rows();
  const std::size_t count = by_columns ? a.cols() : a.rows();
  const std::size_t len = by_columns ? a.rows() : a.cols();

  // The vectors being orthogonalized, stored contiguously: columns of A, or
  // rows of A for wide matrices (same singular values as A^T).
  std::vector<double> work(count * len);
  for (std::size_t v = 0; v < count; ++v)
    for (std::size_t i = 0; i < len; ++i) work[v * len + i] = by_columns ? a(i, v) : a(v, i);

  const auto& k = simd::active();
  auto vec = [&](std::size_t v) { return work.data() + v * len; };

  double residual = 0.0;
  bool converged = count < 2;
  for (int sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
    residual = 0.0;
    for (std::size_t p = 0; p + 1 < count; ++p) {
      for (std::size_t q = p + 1; q < count; ++q) {
        double* ap = vec(p);
        double* aq = vec(q);
        const double alpha = k.dot(ap, ap, len);
        const double beta = k.dot(aq, aq, len);
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = k.dot(ap, aq, len);
        const double off = std::fabs(gamma) / std::sqrt(alpha) / std::sqrt(beta);
        residual = std::max(residual, off);
        if (off <= opts.tolerance) continue;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::fabs(zeta) > 1e150
                             ? 0.5 / zeta
                             : std::copysign(1.0, zeta) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        k.rotate(ap, aq, len, c, c * t);
      }
    }
    converged = residual <= opts.tolerance;
  }
  if (!converged && residual > opts.failure_tolerance) {
    throw NoConvergence("singular_values: off-diagonal residual " + std::to_string(residual) + " after " +
                        std::to_string(opts.max_sweeps) + " sweeps");
  }

  std::vector<double> sigma(count);
  for (std::size_t v = 0; v < count; ++v) sigma[v] = norm2({vec(v), len});
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

double cond2(const DenseMatrix& a) {
  require_square(a, "cond2");
  const auto sigma = singular_values(a);
  if (sigma.back() == 0.0) return std::numeric_limits<double>::infinity();
  return sigma.front() / sigma.back();
}

}  // namespace mmfs
