#pragma once

// Conditioning sweeps, closed-form condition numbers for the circle, error
// metrics against exact solutions, and exponential growth fits.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmfs/geometry.hpp"
#include "mmfs/solvers.hpp"

namespace mmfs {

// ---------------------------------------------------------------------------
// Closed forms (circle of radius rho, N = 2M + 1)

// Piecewise: sqrt2 (rho/R0)^M below rho, sqrt2 rho/R0 up to 2^{1/(2M)} rho,
// (R0/rho)^{M-1} up to sqrt2 rho, (R0/rho)^M / sqrt2 beyond.
double analytic_cond_S_circle(double rho, std::size_t M, double R0);

struct OptimalR0 {
  double R0 = 0.0;
  double cond = 0.0;
};

// R0 = 2^{1/(2M)} rho, cond = 2^{(M-1)/(2M)}
OptimalR0 analytic_optimal_R0(double rho, std::size_t M);

// ---------------------------------------------------------------------------
// Sweeps

struct CondProfile {
  std::string parameter;  // "R0", "R" or "N"
  std::vector<double> grid;
  std::vector<double> conds;
  std::vector<bool> reliable;
  // Smallest reliable value; ties go to the smaller parameter.
  std::optional<std::pair<double, double>> argmin;
};

struct SweepOptions {
  unsigned threads = 1;
};

// Uniform grid start, start+step, ... up to stop (inclusive within step/2).
std::vector<double> uniform_grid(double start, double stop, double step);

// Default R0 grid: 0.005, 0.010, ..., 15.
std::vector<double> default_R0_grid();

// cond2(S) for each R0 in the grid, N = 2M + 1.
CondProfile cond_sweep_S(const BoundaryCurve& curve, std::size_t N, std::size_t M, const std::vector<double>& R0_grid,
                         const SweepOptions& opts = {});

struct OptimalR0Point {
  std::size_t N = 0;
  double R0 = 0.0;
  double cond = 0.0;
};

// Per odd N >= 5, the argmin of cond_sweep_S.
std::vector<OptimalR0Point> optimal_R0_vs_N(const BoundaryCurve& curve, const std::vector<std::size_t>& N_list,
                                            const std::vector<double>& R0_grid, const SweepOptions& opts = {});

struct KComparison {
  CondProfile k1;  // R0 = 1
  CondProfile k2;  // R0 = R
};

KComparison cond_K_comparison(std::size_t N, const std::vector<double>& R_grid, const SweepOptions& opts = {});

struct AVersusSK {
  CondProfile a;   // conventional MFS matrix
  CondProfile sk;  // modified MFS matrix, S and K built with R0 = R
};

// Profiles over N (odd, M = (N-1)/2) at fixed source radius R.
AVersusSK cond_A_vs_SK(const BoundaryCurve& curve, double R, const std::vector<std::size_t>& N_list,
                       const SweepOptions& opts = {});

// ---------------------------------------------------------------------------
// Errors against an exact solution

class ExactSolution {
 public:
  using Field = std::function<double(double x, double y)>;

  ExactSolution(Field value, Field remainder = {}, double remainder_offset = 0.0);

  // exp(x/q) cos(y/q), q = x^2 + y^2; tends to 1 far away.
  static ExactSolution exp_inversion();
  static ExactSolution constant(double c);
  // a0 + sum (a_k cos k t + b_k sin k t)(rho/r)^k outside a circle of radius rho.
  static ExactSolution circle_fourier(double rho, double a0, std::vector<double> a, std::vector<double> b);

  double value(double x, double y) const { return value_(x, y); }
  // value(x, y) - c, without cancellation for the far-field constant the
  // solution was built with.
  double minus(double x, double y, double c) const;

 private:
  Field value_;
  Field remainder_;  // value - remainder_offset, computed accurately
  double remainder_offset_ = 0.0;
};

// |u_h(r, theta) - u(r, theta)|; throws PointInsideObstacle if r < rho(theta).
double error_pointwise(const SolveReport& report, const ExactSolution& exact, double r, double theta);

inline constexpr std::size_t kDefaultThetaSamples = 1024;

// max over a uniform theta grid of error_pointwise; theta_samples >= 360.
double error_max_on_circle(const SolveReport& report, const ExactSolution& exact, double r,
                           std::size_t theta_samples = kDefaultThetaSamples);

struct ErrorCurve {
  std::vector<double> radii;
  std::vector<double> errors;
  std::size_t theta_samples = kDefaultThetaSamples;
};

ErrorCurve error_curve(const SolveReport& report, const ExactSolution& exact, const std::vector<double>& radii,
                       std::size_t theta_samples = kDefaultThetaSamples);

// ---------------------------------------------------------------------------
// SK as an approximation of A

struct SkGap {
  std::size_t M = 0;
  double gap = 0.0;           // |A - SK|_max
  double gap_zero_sum = 0.0;  // |(A - SK) P|_max, P the projector onto sum(w) = 0
};

// N fixed, S and K rectangular (N x (2M+1), (2M+1) x N) for each M.
std::vector<SkGap> sk_convergence(const BoundaryCurve& curve, std::size_t N, double R, double R0,
                                  const std::vector<std::size_t>& M_ladder);

// ---------------------------------------------------------------------------

struct GrowthFit {
  double amplitude = 0.0;
  double base = 0.0;
};

// Least squares on ln(cond) = ln(amplitude) + N ln(base).
GrowthFit growth_fit(const std::vector<double>& N_list, const std::vector<double>& cond_list);

// Runs fn(i) for i in [0, n) on up to `threads` workers; results are written
// by index so output does not depend on the thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace mmfs
