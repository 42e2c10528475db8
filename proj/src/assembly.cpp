#include "mmfs/assembly.hpp"

#include <cmath>
#include <string>

#include "mmfs/error.hpp"

namespace mmfs {

namespace {

constexpr double kCoincidenceDistance = 1e-14;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidArgument(std::string(what) + " must be positive and finite, got " + std::to_string(v));
  }
}

void require_finite(const DenseMatrix& m, const char* what) {
  if (!m.all_finite()) throw InvalidArgument(std::string(what) + ": assembled matrix has non-finite entries");
}

void require_same_count(const CollocationSet& coll, const SourceSet& src, const char* op) {
  if (coll.size() != src.size()) {
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(coll.size()) + " collocation points but " +
                            std::to_string(src.size()) + " sources");
  }
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double checked_distance(const CollocationSet& coll, const SourceSet& src, std::size_t k, std::size_t j) {
  const double d = distance(coll.points[k], src.points[j]);
  if (d < kCoincidenceDistance) {
    throw CoincidentPoints("collocation point " + std::to_string(k + 1) + " coincides with source " +
                           std::to_string(j + 1));
  }
  return d;
}

// Diagonal (2M+1) matrix with entry `scale(k)` on both the cos and sin slot of mode k.
template <class F>
DenseMatrix modal_diagonal(std::size_t M, F scale) {
  DenseMatrix d(2 * M + 1, 2 * M + 1);
  d(0, 0) = 1.0;
  for (std::size_t k = 1; k <= M; ++k) {
    const double v = scale(k);
    d(2 * k - 1, 2 * k - 1) = v;
    d(2 * k, 2 * k) = v;
  }
  return d;
}

double ipow(double base, std::size_t k) { return std::pow(base, static_cast<double>(k)); }

}  // namespace

void TrefftzDims::require_square(const char* op) const {
  if (!square()) {
    throw DimensionMismatch(std::string(op) + ": needs N = 2M + 1, got N = " + std::to_string(N) +
                            ", M = " + std::to_string(M));
  }
}

TrefftzDims TrefftzDims::from_odd_n(std::size_t n) {
  if (n % 2 == 0) throw DimensionMismatch("N must be odd, got " + std::to_string(n));
  return {n, (n - 1) / 2};
}

MethodParams MethodParams::make(TrefftzDims dims, double R, double R0, const BoundaryCurve* curve) {
  require_positive(R, "source radius R");
  require_positive(R0, "characteristic length R0");
  MethodParams p{R, R0, dims, false};
  if (curve != nullptr) p.r0_exceeds_rho_min = R0 > rho_min(*curve);
  return p;
}

double grid_cos(std::size_t k, std::size_t j, std::size_t n) {
  return std::cos(kTwoPi * static_cast<double>((k * j) % n) / static_cast<double>(n));
}

double grid_sin(std::size_t k, std::size_t j, std::size_t n) {
  return std::sin(kTwoPi * static_cast<double>((k * j) % n) / static_cast<double>(n));
}

DenseMatrix build_A(const CollocationSet& coll, const SourceSet& src) {
  require_same_count(coll, src, "build_A");
  const std::size_t n = coll.size();
  DenseMatrix a(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) a(k, j) = std::log(checked_distance(coll, src, k, j));
  require_finite(a, "build_A");
  return a;
}

DenseMatrix build_A_hat(const CollocationSet& coll, const SourceSet& src) {
  require_same_count(coll, src, "build_A_hat");
  const std::size_t n = coll.size();
  DenseMatrix a(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double zk = std::hypot(coll.points[k].x, coll.points[k].y);
    if (!(zk > 0.0)) throw CoincidentPoints("collocation point " + std::to_string(k + 1) + " is at the origin");
    for (std::size_t j = 0; j < n; ++j) a(k, j) = std::log(checked_distance(coll, src, k, j) / zk);
  }
  require_finite(a, "build_A_hat");
  return a;
}

DenseMatrix build_S(const CollocationSet& coll, std::size_t M, double R0) {
  require_positive(R0, "characteristic length R0");
  const std::size_t n = coll.size();
  DenseMatrix s(n, 2 * M + 1);
  for (std::size_t j = 0; j < n; ++j) {
    s(j, 0) = 1.0;
    const double ratio = R0 / coll.radii[j];
    for (std::size_t k = 1; k <= M; ++k) {
      const double scale = ipow(ratio, k);
      s(j, 2 * k - 1) = scale * grid_cos(k, j, n);
      s(j, 2 * k) = scale * grid_sin(k, j, n);
    }
  }
  require_finite(s, "build_S");
  return s;
}

DenseMatrix build_T_theta(std::size_t N, std::size_t M) {
  DenseMatrix t(2 * M + 1, N);
  for (std::size_t j = 0; j < N; ++j) {
    t(0, j) = 1.0;
    for (std::size_t k = 1; k <= M; ++k) {
      t(2 * k - 1, j) = grid_cos(k, j, N);
      t(2 * k, j) = grid_sin(k, j, N);
    }
  }
  return t;
}

DenseMatrix build_T_R(std::size_t M, double R, double R0) {
  require_positive(R, "source radius R");
  require_positive(R0, "characteristic length R0");
  return modal_diagonal(M, [&](std::size_t k) { return -ipow(R / R0, k) / static_cast<double>(k); });
}

DenseMatrix build_S_R0(std::size_t M, double R0, double rho) {
  require_positive(R0, "characteristic length R0");
  require_positive(rho, "circle radius");
  return modal_diagonal(M, [&](std::size_t k) { return ipow(R0 / rho, k); });
}

DenseMatrix build_Lambda(std::size_t M, double R, double rho) {
  require_positive(R, "source radius R");
  require_positive(rho, "circle radius");
  return modal_diagonal(M, [&](std::size_t k) { return -ipow(R / rho, k) / static_cast<double>(k); });
}

DenseMatrix build_K(const MethodParams& params) {
  require_positive(params.R, "source radius R");
  require_positive(params.R0, "characteristic length R0");
  const std::size_t n = params.dims.N;
  const std::size_t m = params.dims.M;
  DenseMatrix k(2 * m + 1, n);
  for (std::size_t j = 0; j < n; ++j) k(0, j) = 1.0;
  for (std::size_t mode = 1; mode <= m; ++mode) {
    const double scale = -ipow(params.R / params.R0, mode) / static_cast<double>(mode);
    for (std::size_t j = 0; j < n; ++j) {
      k(2 * mode - 1, j) = scale * grid_cos(mode, j, n);
      k(2 * mode, j) = scale * grid_sin(mode, j, n);
    }
  }
  require_finite(k, "build_K");
  return k;
}

DenseMatrix explicit_T_theta_inverse(std::size_t N, std::size_t M) {
  TrefftzDims{N, M}.require_square("explicit_T_theta_inverse");
  const double n = static_cast<double>(N);
  DenseMatrix x(N, N);
  for (std::size_t j = 0; j < N; ++j) {
    x(j, 0) = 1.0 / n;
    for (std::size_t k = 1; k <= M; ++k) {
      x(j, 2 * k - 1) = 2.0 / n * grid_cos(k, j, N);
      x(j, 2 * k) = 2.0 / n * grid_sin(k, j, N);
    }
  }
  return x;
}

DenseMatrix explicit_K_inverse(const MethodParams& params) {
  params.dims.require_square("explicit_K_inverse");
  const std::size_t N = params.dims.N;
  const double n = static_cast<double>(N);
  DenseMatrix x(N, N);
  for (std::size_t j = 0; j < N; ++j) {
    x(j, 0) = 1.0 / n;
    for (std::size_t k = 1; k <= params.dims.M; ++k) {
      const double scale = -2.0 * static_cast<double>(k) / n * ipow(params.R0 / params.R, k);
      x(j, 2 * k - 1) = scale * grid_cos(k, j, N);
      x(j, 2 * k) = scale * grid_sin(k, j, N);
    }
  }
  require_finite(x, "explicit_K_inverse");
  return x;
}

DenseMatrix build_SK(const CollocationSet& coll, const MethodParams& params) {
  params.dims.require_square("build_SK");
  if (coll.size() != params.dims.N) {
    throw DimensionMismatch("build_SK: " + std::to_string(coll.size()) + " collocation points, N = " +
                            std::to_string(params.dims.N));
  }
  return build_S(coll, params.dims.M, params.R0) * build_K(params);
}

DenseMatrix build_D(std::size_t N, std::size_t M) {
  const double s = std::sqrt(static_cast<double>(N) / 2.0);
  DenseMatrix d = modal_diagonal(M, [s](std::size_t) { return s; });
  d(0, 0) = s * std::sqrt(2.0);
  return d;
}

DenseMatrix build_T_R_positive(std::size_t M, double R, double R0) {
  require_positive(R, "source radius R");
  require_positive(R0, "characteristic length R0");
  return modal_diagonal(M, [&](std::size_t k) { return ipow(R / R0, k) / static_cast<double>(k); });
}

DenseMatrix build_T_theta_negated(std::size_t N, std::size_t M) {
  DenseMatrix t = build_T_theta(N, M);
  for (std::size_t i = 1; i < t.rows(); ++i)
    for (double& v : t.row(i)) v = -v;
  return t;
}

DenseMatrix drop_first_column(const DenseMatrix& a) {
  if (a.cols() == 0) throw DimensionMismatch("drop_first_column: matrix has no columns");
  return DenseMatrix::generate(a.rows(), a.cols() - 1, [&](std::size_t i, std::size_t j) { return a(i, j + 1); });
}

namespace closed_form {

double det_T_R(std::size_t M, double R, double R0) {
  const double m = static_cast<double>(M);
  return std::exp(-2.0 * std::lgamma(m + 1.0)) * std::pow(R / R0, m * (m + 1.0));
}

double det_T_theta(std::size_t M) {
  const double m = static_cast<double>(M);
  return std::pow(2.0 * m + 1.0, m + 0.5) / std::pow(2.0, m);
}

double det_S_R0(std::size_t M, double R0, double rho) {
  const double m = static_cast<double>(M);
  return std::pow(R0 / rho, m * (m + 1.0));
}

double det_S_circle(std::size_t M, double R0, double rho) { return det_T_theta(M) * det_S_R0(M, R0, rho); }

}  // namespace closed_form

}  // namespace mmfs
