#include "mmfs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "mmfs/assembly.hpp"
#include "mmfs/error.hpp"

namespace mmfs {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

void record(CondProfile& p, std::size_t i, double cond) {
  p.conds[i] = cond;
  p.reliable[i] = std::isfinite(cond) && cond_reliable(cond);
}

void finish_argmin(CondProfile& p) {
  p.argmin.reset();
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (!p.reliable[i]) continue;
    if (!p.argmin || p.conds[i] < p.argmin->second) p.argmin = std::make_pair(p.grid[i], p.conds[i]);
  }
}

CondProfile make_profile(std::string name, std::vector<double> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidArgument(name + " grid must be strictly increasing");
  }
  CondProfile p;
  p.parameter = std::move(name);
  p.conds.assign(grid.size(), std::numeric_limits<double>::infinity());
  p.reliable.assign(grid.size(), false);
  p.grid = std::move(grid);
  return p;
}

// cond2 of a matrix, with NoConvergence mapped to an unreliable +inf.
double guarded_cond(const std::function<DenseMatrix()>& build) {
  try {
    return cond2(build());
  } catch (const NoConvergence&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::vector<double> to_double(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      // Strided assignment; every index is owned by exactly one worker.
      for (std::size_t i = t; i < n; i += workers) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

double analytic_cond_S_circle(double rho, std::size_t M, double R0) {
  if (!(rho > 0.0) || !(R0 > 0.0)) throw InvalidArgument("analytic_cond_S_circle: rho and R0 must be positive");
  if (M < 1) throw InvalidArgument("analytic_cond_S_circle: M must be at least 1");
  const double m = static_cast<double>(M);
  const double q = R0 / rho;
  if (R0 < rho) return kSqrt2 * std::pow(1.0 / q, m);
  if (R0 < std::pow(2.0, 1.0 / (2.0 * m)) * rho) return kSqrt2 / q;
  if (R0 < kSqrt2 * rho) return std::pow(q, m - 1.0);
  return std::pow(q, m) / kSqrt2;
}

OptimalR0 analytic_optimal_R0(double rho, std::size_t M) {
  if (!(rho > 0.0)) throw InvalidArgument("analytic_optimal_R0: rho must be positive");
  if (M < 1) throw InvalidArgument("analytic_optimal_R0: M must be at least 1");
  const double m = static_cast<double>(M);
  return {std::pow(2.0, 1.0 / (2.0 * m)) * rho, std::pow(2.0, (m - 1.0) / (2.0 * m))};
}

std::vector<double> uniform_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw InvalidArgument("uniform_grid: need step > 0 and stop >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  std::vector<double> g(count);
  // Index-based so grid points do not accumulate rounding.
  for (std::size_t i = 0; i < count; ++i) g[i] = start + static_cast<double>(i) * step;
  return g;
}

std::vector<double> default_R0_grid() { return uniform_grid(0.005, 15.0, 0.005); }

CondProfile cond_sweep_S(const BoundaryCurve& curve, std::size_t N, std::size_t M, const std::vector<double>& R0_grid,
                         const SweepOptions& opts) {
  TrefftzDims{N, M}.require_square("cond_sweep_S");
  if (R0_grid.empty()) throw InvalidArgument("cond_sweep_S: empty R0 grid");
  for (double r0 : R0_grid)
    if (!(r0 > 0.0)) throw InvalidArgument("cond_sweep_S: R0 grid values must be positive");
  const auto coll = collocation_points(curve, N);
  auto p = make_profile("R0", R0_grid);
  parallel_for(p.grid.size(), opts.threads,
               [&](std::size_t i) { record(p, i, guarded_cond([&] { return build_S(coll, M, p.grid[i]); })); });
  finish_argmin(p);
  return p;
}

std::vector<OptimalR0Point> optimal_R0_vs_N(const BoundaryCurve& curve, const std::vector<std::size_t>& N_list,
                                            const std::vector<double>& R0_grid, const SweepOptions& opts) {
  std::vector<OptimalR0Point> out;
  out.reserve(N_list.size());
  for (std::size_t n : N_list) {
    if (n < 5 || n % 2 == 0) throw InvalidArgument("optimal_R0_vs_N: N must be odd and >= 5, got " + std::to_string(n));
    const auto prof = cond_sweep_S(curve, n, (n - 1) / 2, R0_grid, opts);
    if (!prof.argmin) throw NoConvergence("optimal_R0_vs_N: no reliable condition number for N = " + std::to_string(n));
    out.push_back({n, prof.argmin->first, prof.argmin->second});
  }
  return out;
}

KComparison cond_K_comparison(std::size_t N, const std::vector<double>& R_grid, const SweepOptions& opts) {
  const auto dims = TrefftzDims::from_odd_n(N);
  if (R_grid.empty()) throw InvalidArgument("cond_K_comparison: empty R grid");
  for (double r : R_grid)
    if (!(r > 0.0)) throw InvalidArgument("cond_K_comparison: R grid values must be positive");
  KComparison out{make_profile("R", R_grid), make_profile("R", R_grid)};
  parallel_for(R_grid.size(), opts.threads, [&](std::size_t i) {
    const double R = R_grid[i];
    record(out.k1, i, guarded_cond([&] { return build_K(MethodParams::make(dims, R, 1.0)); }));
    record(out.k2, i, guarded_cond([&] { return build_K(MethodParams::make(dims, R, R)); }));
  });
  finish_argmin(out.k1);
  finish_argmin(out.k2);
  return out;
}

AVersusSK cond_A_vs_SK(const BoundaryCurve& curve, double R, const std::vector<std::size_t>& N_list,
                       const SweepOptions& opts) {
  if (!(R < rho_min(curve))) throw SourceOutsideObstacle("cond_A_vs_SK: R must be below rho_min");
  AVersusSK out{make_profile("N", to_double(N_list)), make_profile("N", to_double(N_list))};
  parallel_for(N_list.size(), opts.threads, [&](std::size_t i) {
    const auto dims = TrefftzDims::from_odd_n(N_list[i]);
    const auto coll = collocation_points(curve, dims.N);
    const auto src = source_points(R, dims.N);
    record(out.a, i, guarded_cond([&] { return build_A(coll, src); }));
    record(out.sk, i, guarded_cond([&] { return build_SK(coll, MethodParams::make(dims, R, R)); }));
  });
  finish_argmin(out.a);
  finish_argmin(out.sk);
  return out;
}

ExactSolution::ExactSolution(Field value, Field remainder, double remainder_offset)
    : value_(std::move(value)), remainder_(std::move(remainder)), remainder_offset_(remainder_offset) {}

ExactSolution ExactSolution::exp_inversion() {
  auto value = [](double x, double y) {
    const double q = x * x + y * y;
    return std::exp(x / q) * std::cos(y / q);
  };
  // e^s cos t - 1 = expm1(s) cos t - 2 sin^2(t/2)
  auto remainder = [](double x, double y) {
    const double q = x * x + y * y;
    const double s = x / q;
    const double t = y / q;
    const double h = std::sin(0.5 * t);
    return std::expm1(s) * std::cos(t) - 2.0 * h * h;
  };
  return ExactSolution(value, remainder, 1.0);
}

ExactSolution ExactSolution::constant(double c) {
  return ExactSolution([c](double, double) { return c; }, [](double, double) { return 0.0; }, c);
}

ExactSolution ExactSolution::circle_fourier(double rho, double a0, std::vector<double> a, std::vector<double> b) {
  if (a.size() != b.size()) throw DimensionMismatch("circle_fourier: cosine and sine lists differ in length");
  auto series = [rho, a, b](double x, double y) {
    const double r = std::hypot(x, y);
    const double t = std::atan2(y, x);
    double v = 0.0;
    for (std::size_t k = 1; k <= a.size(); ++k) {
      const double s = std::pow(rho / r, static_cast<double>(k));
      v += (a[k - 1] * std::cos(static_cast<double>(k) * t) + b[k - 1] * std::sin(static_cast<double>(k) * t)) * s;
    }
    return v;
  };
  return ExactSolution([series, a0](double x, double y) { return a0 + series(x, y); }, series, a0);
}

double ExactSolution::minus(double x, double y, double c) const {
  if (remainder_ && c == remainder_offset_) return remainder_(x, y);
  return value_(x, y) - c;
}

double error_pointwise(const SolveReport& report, const ExactSolution& exact, double r, double theta) {
  const double boundary = rho(report.curve, theta);
  if (r < boundary * (1.0 - 1e-12)) {
    throw PointInsideObstacle("point r = " + std::to_string(r) + ", theta = " + std::to_string(theta) +
                              " lies inside the obstacle (rho = " + std::to_string(boundary) + ")");
  }
  const double x = r * std::cos(theta);
  const double y = r * std::sin(theta);
  return std::fabs(report.evaluate_shifted(r, theta) - exact.minus(x, y, report.far_field));
}

double error_max_on_circle(const SolveReport& report, const ExactSolution& exact, double r, std::size_t theta_samples) {
  if (theta_samples < 360) throw InvalidArgument("error_max_on_circle: need at least 360 angle samples");
  double e = 0.0;
  for (double t : angle_grid(theta_samples)) e = std::max(e, error_pointwise(report, exact, r, t));
  return e;
}

ErrorCurve error_curve(const SolveReport& report, const ExactSolution& exact, const std::vector<double>& radii,
                       std::size_t theta_samples) {
  ErrorCurve c{radii, {}, theta_samples};
  c.errors.reserve(radii.size());
  for (double r : radii) c.errors.push_back(error_max_on_circle(report, exact, r, theta_samples));
  return c;
}

std::vector<SkGap> sk_convergence(const BoundaryCurve& curve, std::size_t N, double R, double R0,
                                  const std::vector<std::size_t>& M_ladder) {
  const auto coll = collocation_points(curve, N);
  const auto a = build_A(coll, source_points(R, N));
  // P = I - (1/N) 1 1^T
  const auto proj = DenseMatrix::generate(N, N, [N](std::size_t i, std::size_t j) {
    return (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(N);
  });
  std::vector<SkGap> out;
  out.reserve(M_ladder.size());
  for (std::size_t m : M_ladder) {
    const auto params = MethodParams::make({N, m}, R, R0, &curve);
    const auto diff = a - build_S(coll, m, R0) * build_K(params);
    out.push_back({m, diff.max_abs(), (diff * proj).max_abs()});
  }
  return out;
}

GrowthFit growth_fit(const std::vector<double>& N_list, const std::vector<double>& cond_list) {
  if (N_list.size() != cond_list.size()) throw DimensionMismatch("growth_fit: N and cond lists differ in length");
  if (N_list.size() < 4) throw InvalidArgument("growth_fit: need at least 4 points");
  for (double c : cond_list) {
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("growth_fit: condition numbers must be finite and > 0");
  }
  const double n = static_cast<double>(N_list.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    mx += N_list[i];
    my += std::log(cond_list[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    const double dx = N_list[i] - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(cond_list[i]) - my);
  }
  if (sxx == 0.0) throw DegenerateFit("growth_fit: all N values are equal");
  const double slope = sxy / sxx;
  return {std::exp(my - slope * mx), std::exp(slope)};
}

}  // namespace mmfs
