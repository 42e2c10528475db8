#pragma once

// Dense real linear algebra: LU with partial pivoting, determinants,
// one-sided Jacobi singular values and 2-norm condition numbers.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mmfs {

class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // `entries` is row-major; throws DimensionMismatch if its size is not rows*cols.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix diagonal(std::span<const double> d);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static DenseMatrix generate(std::size_t rows, std::size_t cols,
                              const std::function<double(std::size_t, std::size_t)>& entry);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return entries_.empty(); }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  std::span<double> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const double> entries() const noexcept { return entries_; }

  DenseMatrix transpose() const;
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> entries_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double c, const DenseMatrix& a);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x);

// max_{i,j} |a_ij - b_ij|
double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b);

double norm2(std::span<const double> x);

// Partial-pivoting LU of a square matrix, P A = L U.
class LuFactorization {
 public:
  explicit LuFactorization(const DenseMatrix& a);

  // False when some pivot fell below 1e-30 * max|a_ij|.
  bool singular() const noexcept { return singular_; }
  double determinant() const;
  // Throws SingularMatrix if singular().
  std::vector<double> solve(std::span<const double> b) const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  bool singular_ = false;
  std::size_t singular_column_ = 0;
};

inline constexpr double kSingularPivotRatio = 1e-30;

std::vector<double> lu_solve(const DenseMatrix& a, std::span<const double> b);

// 0.0 for numerically singular input.
double determinant(const DenseMatrix& a);

struct JacobiOptions {
  double tolerance = 1e-14;        // stop once |<a_p,a_q>| <= tol * |a_p| |a_q| for every pair
  int max_sweeps = 60;
  double failure_tolerance = 1e-8; // NoConvergence if the residual is still above this
};

// Singular values in descending order, min(rows, cols) of them. Computed
// with one-sided (Hestenes) Jacobi rotations applied to A itself.
std::vector<double> singular_values(const DenseMatrix& a, const JacobiOptions& opts = {});

// Above this a computed 2-norm condition number is reported as unreliable.
inline constexpr double kUnreliableCond = 1e12;

// sigma_max / sigma_min of a square matrix; +inf when sigma_min == 0.
double cond2(const DenseMatrix& a);

inline bool cond_reliable(double cond) { return cond <= kUnreliableCond; }

}  // namespace mmfs
