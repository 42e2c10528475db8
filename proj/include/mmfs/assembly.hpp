#pragma once

// Every matrix of the MFS / modified Trefftz / modified MFS family, built
// from its entrywise closed form, plus closed-form inverses, determinants
// and the diagonal factors used to check them.
//
// Trefftz-side index convention (0-based): index 0 is the constant mode;
// index 2k-1 is the cos k(.) mode and index 2k the sin k(.) mode, k = 1..M.

#include <cstddef>

#include "mmfs/geometry.hpp"
#include "mmfs/linalg.hpp"

namespace mmfs {

struct TrefftzDims {
  std::size_t N = 0;  // collocation / source count
  std::size_t M = 0;  // truncation order

  std::size_t modes() const noexcept { return 2 * M + 1; }
  bool square() const noexcept { return N == 2 * M + 1; }
  // Throws DimensionMismatch unless N = 2M + 1.
  void require_square(const char* op) const;

  static TrefftzDims from_odd_n(std::size_t n);  // M = (N - 1) / 2
};

struct MethodParams {
  double R = 1.0;   // source circle radius
  double R0 = 1.0;  // characteristic length
  TrefftzDims dims;
  // R0 > rho_min: allowed (sweeps go there) but flagged.
  bool r0_exceeds_rho_min = false;

  // Validates R, R0 > 0; sets the warning flag when a curve is supplied.
  static MethodParams make(TrefftzDims dims, double R, double R0, const BoundaryCurve* curve = nullptr);
};

// cos(k * theta_j) and sin(k * theta_j) on the grid theta_j = 2 pi j / N, with
// the product k*j reduced modulo N before the trig call.
double grid_cos(std::size_t k, std::size_t j, std::size_t n);
double grid_sin(std::size_t k, std::size_t j, std::size_t n);

// A_kj = ln|z_k - zeta_j|. Throws CoincidentPoints for |z_k - zeta_j| < 1e-14.
DenseMatrix build_A(const CollocationSet& coll, const SourceSet& src);

// A^_kj = ln(|z_k - zeta_j| / |z_k|)
DenseMatrix build_A_hat(const CollocationSet& coll, const SourceSet& src);

// N x (2M+1): S_j0 = 1, (R0/rho_j)^k cos k theta_j, (R0/rho_j)^k sin k theta_j
DenseMatrix build_S(const CollocationSet& coll, std::size_t M, double R0);

// (2M+1) x N: first row ones, then cos k theta_j / sin k theta_j rows.
DenseMatrix build_T_theta(std::size_t N, std::size_t M);

// diag(1, -(R/R0), -(R/R0), ..., -(1/M)(R/R0)^M, -(1/M)(R/R0)^M)
DenseMatrix build_T_R(std::size_t M, double R, double R0);

// diag(1, R0/rho, R0/rho, ..., (R0/rho)^M, (R0/rho)^M); circle boundaries only.
DenseMatrix build_S_R0(std::size_t M, double R0, double rho);

// diag(1, -(R/rho), ..., -(1/M)(R/rho)^M); the spectrum of SK on a circle.
DenseMatrix build_Lambda(std::size_t M, double R, double rho);

// (2M+1) x N: K_0j = 1, -(1/k)(R/R0)^k cos k theta_j, -(1/k)(R/R0)^k sin k theta_j
DenseMatrix build_K(const MethodParams& params);

// N x N closed-form inverses; require N = 2M + 1.
DenseMatrix explicit_T_theta_inverse(std::size_t N, std::size_t M);
DenseMatrix explicit_K_inverse(const MethodParams& params);

// build_S(coll, M, R0) * build_K(params); requires N = 2M + 1.
DenseMatrix build_SK(const CollocationSet& coll, const MethodParams& params);

// D = sqrt(N/2) diag(sqrt 2, 1, ..., 1), so that D^-1 T_theta has orthonormal rows.
DenseMatrix build_D(std::size_t N, std::size_t M);

// Sign-flipped factors: (T_R)_kk = +(1/k)(R/R0)^k and T_theta rows negated for
// k >= 1. Their product is still K, and K^T = (D^-1 T_theta)^T (T_R D) is then
// a polar decomposition.
DenseMatrix build_T_R_positive(std::size_t M, double R, double R0);
DenseMatrix build_T_theta_negated(std::size_t N, std::size_t M);

DenseMatrix drop_first_column(const DenseMatrix& a);

namespace closed_form {

// (1 / (M!)^2) (R/R0)^{M(M+1)}
double det_T_R(std::size_t M, double R, double R0);
// N^{M+1/2} / 2^M, N = 2M + 1
double det_T_theta(std::size_t M);
// (R0/rho)^{M(M+1)}
double det_S_R0(std::size_t M, double R0, double rho);
// det(T_theta) det(S_R0) on a circle of radius rho
double det_S_circle(std::size_t M, double R0, double rho);

}  // namespace closed_form

}  // namespace mmfs
