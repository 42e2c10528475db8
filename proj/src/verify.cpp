#include "mmfs/verify.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "mmfs/analysis.hpp"
#include "mmfs/assembly.hpp"
#include "mmfs/csv.hpp"
#include "mmfs/error.hpp"
#include "mmfs/simd/kernels.hpp"
#include "mmfs/solvers.hpp"

namespace mmfs {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult bound(std::string name, double worst, double tol) {
  const bool ok = std::isfinite(worst) && worst <= tol;
  return {std::move(name), ok, "worst " + sci(worst) + " (tol " + sci(tol) + ")"};
}

double rel(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

DenseMatrix T_theta_gram_expected(std::size_t N, std::size_t M) {
  std::vector<double> d(2 * M + 1, static_cast<double>(N) / 2.0);
  d[0] = static_cast<double>(N);
  return DenseMatrix::diagonal(d);
}

template <class F>
CheckResult guarded(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

VerifyHooks VerifyHooks::defaults() {
  return {[](std::size_t M, double R, double R0) { return mmfs::build_T_R(M, R, R0); },
          [](std::size_t N, std::size_t M) { return mmfs::build_T_theta(N, M); }};
}

std::vector<CheckResult> run_verification(const VerifyHooks& h) {
  std::vector<CheckResult> out;
  const std::size_t square_sizes[] = {3, 7, 21};
  const double ratios[] = {0.5, 1.0, 2.0};

  out.push_back(guarded("K = T_R T_theta", [&] {
    double worst = 0.0;
    for (std::size_t N : {3, 7, 21, 20}) {
      const std::size_t M = N == 20 ? 6 : (N - 1) / 2;
      for (double q : ratios) {
        const auto p = MethodParams::make({N, M}, q * 1.3, 1.3);
        const auto K = build_K(p);
        worst = std::max(worst, max_abs_diff(K, h.build_T_R(M, p.R, p.R0) * h.build_T_theta(N, M)) / K.max_abs());
      }
    }
    return bound("K = T_R T_theta", worst, 1e-14);
  }));

  out.push_back(guarded("T_theta T_theta^T = (N/2) diag(2,1,...,1)", [&] {
    double worst = 0.0;
    for (std::size_t N = 3; N <= 201; N += 2) {
      const std::size_t M = (N - 1) / 2;
      const auto T = h.build_T_theta(N, M);
      worst = std::max(worst, max_abs_diff(T * T.transpose(), T_theta_gram_expected(N, M)) / static_cast<double>(N));
    }
    for (std::size_t N : {16, 40}) {
      const std::size_t M = N / 4;
      const auto T = h.build_T_theta(N, M);
      worst = std::max(worst, max_abs_diff(T * T.transpose(), T_theta_gram_expected(N, M)) / static_cast<double>(N));
    }
    return bound("T_theta T_theta^T = (N/2) diag(2,1,...,1)", worst, 1e-11);
  }));

  out.push_back(guarded("explicit T_theta inverse", [&] {
    double worst = 0.0;
    for (std::size_t N : square_sizes) {
      const std::size_t M = (N - 1) / 2;
      worst = std::max(worst, max_abs_diff(h.build_T_theta(N, M) * explicit_T_theta_inverse(N, M),
                                           DenseMatrix::identity(N)));
    }
    return bound("explicit T_theta inverse", worst, 1e-12);
  }));

  out.push_back(guarded("explicit K inverse", [&] {
    double worst = 0.0;
    for (std::size_t N : square_sizes) {
      for (double q : ratios) {
        const auto p = MethodParams::make(TrefftzDims::from_odd_n(N), q, 1.0);
        worst = std::max(worst, max_abs_diff(build_K(p) * explicit_K_inverse(p), DenseMatrix::identity(N)));
      }
    }
    return bound("explicit K inverse", worst, 1e-10);
  }));

  out.push_back(guarded("det T_R, det T_theta, det K = det T_R det T_theta", [&] {
    double worst = 0.0;
    for (std::size_t M = 1; M <= 8; ++M) {
      const std::size_t N = 2 * M + 1;
      for (double q : {0.8, 1.0, 1.25}) {
        const double dR = determinant(h.build_T_R(M, q, 1.0));
        const double dT = determinant(h.build_T_theta(N, M));
        const double dK = determinant(build_K(MethodParams::make({N, M}, q, 1.0)));
        worst = std::max({worst, rel(dR, closed_form::det_T_R(M, q, 1.0)), rel(dT, closed_form::det_T_theta(M)),
                          rel(dR * dT, dK)});
      }
    }
    return bound("det T_R, det T_theta, det K = det T_R det T_theta", worst, 1e-8);
  }));

  out.push_back(guarded("cond2(T_R) = M, cond2(T_theta) = sqrt2, cond2(K_2) = sqrt2 M", [&] {
    double worst = 0.0;
    for (std::size_t M = 1; M <= 10; ++M) {
      const std::size_t N = 2 * M + 1;
      const double m = static_cast<double>(M);
      for (double R : {0.3, 1.0, 2.5}) {
        worst = std::max(worst, rel(cond2(h.build_T_R(M, R, R)), m));
        worst = std::max(worst, rel(cond2(build_K(MethodParams::make({N, M}, R, R))), kSqrt2 * m));
      }
      worst = std::max(worst, rel(cond2(h.build_T_theta(N, M)), kSqrt2));
    }
    return bound("cond2(T_R) = M, cond2(T_theta) = sqrt2, cond2(K_2) = sqrt2 M", worst, 1e-10);
  }));

  out.push_back(guarded("S = T_theta^T S_R0 on a circle", [&] {
    double worst = 0.0;
    for (double rho : {1.0, 2.0}) {
      for (double R0 : {0.5, 1.0, 2.5}) {
        for (std::size_t N : {5, 21}) {
          const std::size_t M = (N - 1) / 2;
          const auto coll = collocation_points(BoundaryCurve::circle(rho), N);
          worst = std::max(worst, max_abs_diff(build_S(coll, M, R0),
                                               h.build_T_theta(N, M).transpose() * build_S_R0(M, R0, rho)));
        }
      }
    }
    return bound("S = T_theta^T S_R0 on a circle", worst, 1e-13);
  }));

  out.push_back(guarded("det S_R0, det S on a circle", [&] {
    double worst = 0.0;
    for (std::size_t M = 1; M <= 8; ++M) {
      for (double q : {0.8, 1.0, 1.2}) {
        const double rho = 2.0;
        const double R0 = q * rho;
        const auto coll = collocation_points(BoundaryCurve::circle(rho), 2 * M + 1);
        worst = std::max(worst, rel(determinant(build_S_R0(M, R0, rho)), closed_form::det_S_R0(M, R0, rho)));
        worst = std::max(worst, rel(determinant(build_S(coll, M, R0)), closed_form::det_S_circle(M, R0, rho)));
      }
    }
    return bound("det S_R0, det S on a circle", worst, 1e-8);
  }));

  out.push_back(guarded("cond2(S) matches the four-branch closed form", [&] {
    double worst = 0.0;
    for (std::size_t M : {1, 4, 10}) {
      const std::size_t N = 2 * M + 1;
      for (double rho : {1.0, 2.0}) {
        const auto coll = collocation_points(BoundaryCurve::circle(rho), N);
        const double b2 = std::pow(2.0, 1.0 / (2.0 * static_cast<double>(M))) * rho;
        for (double R0 : {0.2 * rho, 0.7 * rho, rho, 0.5 * (rho + b2), b2, 1.3 * rho, kSqrt2 * rho, 3.0 * rho,
                          7.5 * rho}) {
          worst = std::max(worst, rel(cond2(build_S(coll, M, R0)), analytic_cond_S_circle(rho, M, R0)));
        }
      }
    }
    return bound("cond2(S) matches the four-branch closed form", worst, 1e-6);
  }));

  out.push_back(guarded("optimal R0 on the unit circle (N = 21)", [&] {
    const auto prof = cond_sweep_S(BoundaryCurve::circle(1.0), 21, 10, uniform_grid(0.9, 1.2, 0.005));
    const auto opt = analytic_optimal_R0(1.0, 10);
    if (!prof.argmin) return CheckResult{"optimal R0 on the unit circle (N = 21)", false, "no reliable point"};
    const double dR = std::fabs(prof.argmin->first - opt.R0);
    const double dc = std::fabs(prof.argmin->second - opt.cond);
    CheckResult r{"optimal R0 on the unit circle (N = 21)", dR <= 0.005 && dc <= 1e-3,
                  "argmin R0 " + format_double(prof.argmin->first) + ", cond " + sci(prof.argmin->second)};
    return r;
  }));

  out.push_back(guarded("SK = T_theta^T Lambda T_theta on a circle", [&] {
    double worst = 0.0;
    const std::size_t N = 21;
    const std::size_t M = 10;
    const double rho = 2.0;
    for (double q : {0.3, 0.9}) {
      const double R = q * rho;
      const auto coll = collocation_points(BoundaryCurve::circle(rho), N);
      const auto SK = build_SK(coll, MethodParams::make({N, M}, R, R));
      const auto T = h.build_T_theta(N, M);
      worst = std::max(worst, max_abs_diff(SK, T.transpose() * build_Lambda(M, R, rho) * T));
    }
    return bound("SK = T_theta^T Lambda T_theta on a circle", worst, 1e-11 * static_cast<double>(N));
  }));

  out.push_back(guarded("S' and K' (N = 2M, first column / row dropped) are singular", [&] {
    double worst = 0.0;
    for (std::size_t M : {2, 5, 10}) {
      const std::size_t N = 2 * M;
      const auto coll = collocation_points(BoundaryCurve::epitrochoid(3.0, 1.0), N);
      const auto s = singular_values(drop_first_column(build_S(coll, M, 3.0)));
      worst = std::max(worst, s.back() / s.front());
      const auto K = build_K(MethodParams::make({N, M}, 1.0, 1.0)).transpose();
      const auto k = singular_values(drop_first_column(K));
      worst = std::max(worst, k.back() / k.front());
    }
    return bound("S' and K' (N = 2M, first column / row dropped) are singular", worst, 1e-12);
  }));

  out.push_back(guarded("sign-flipped factors: D^-1 T_theta orthogonal, K = (T_R D)(D^-1 T_theta)", [&] {
    double worst = 0.0;
    for (std::size_t N : square_sizes) {
      const std::size_t M = (N - 1) / 2;
      const auto D = build_D(N, M);
      std::vector<double> dinv(N);
      for (std::size_t i = 0; i < N; ++i) dinv[i] = 1.0 / D(i, i);
      const auto U = DenseMatrix::diagonal(dinv) * build_T_theta_negated(N, M);
      worst = std::max(worst, max_abs_diff(U * U.transpose(), DenseMatrix::identity(N)));
      worst = std::max(worst, max_abs_diff(U.transpose() * U, DenseMatrix::identity(N)));
      const auto p = MethodParams::make({N, M}, 0.7, 1.0);
      const auto P = build_T_R_positive(M, p.R, p.R0) * D;
      for (std::size_t i = 0; i < N; ++i)
        if (!(P(i, i) > 0.0)) worst = 1.0;
      worst = std::max(worst, max_abs_diff(build_K(p), P * U));
    }
    return bound("sign-flipped factors: D^-1 T_theta orthogonal, K = (T_R D)(D^-1 T_theta)", worst, 1e-12);
  }));

  out.push_back(guarded("MTM on a circle recovers Fourier coefficients", [&] {
    double worst = 0.0;
    for (double rho : {1.0, 2.0}) {
      for (double R0 : {1.0, 1.5}) {
        const auto f = BoundaryData([](double t) { return 2.0 + 3.0 * std::cos(2.0 * t) - std::sin(t); });
        const auto rep = solve_mtm(BoundaryCurve::circle(rho), f, 21, 10, R0);
        auto y = std::get<TrefftzCoefficients>(rep.solution).to_vector();
        const double q = rho / R0;
        worst = std::max({worst, std::fabs(y[0] - 2.0), std::fabs(y[3] - 3.0 * q * q), std::fabs(y[2] + q)});
        y[0] = y[2] = y[3] = 0.0;
        for (double v : y) worst = std::max(worst, std::fabs(v));
      }
    }
    return bound("MTM on a circle recovers Fourier coefficients", worst, 1e-10);
  }));

  out.push_back(guarded("SK approaches A on sum(w) = 0 (circle rho = 2, R = 1, N = 9)", [&] {
    const auto gaps = sk_convergence(BoundaryCurve::circle(2.0), 9, 1.0, 1.0, {4, 8, 16, 32});
    bool monotone = true;
    for (std::size_t i = 1; i < gaps.size(); ++i) monotone = monotone && gaps[i].gap_zero_sum < gaps[i - 1].gap_zero_sum;
    const double last = gaps.back().gap_zero_sum;
    return CheckResult{"SK approaches A on sum(w) = 0 (circle rho = 2, R = 1, N = 9)", monotone && last <= 1e-9,
                       "gap at M = 32: " + sci(last) + (monotone ? ", monotone" : ", not monotone")};
  }));

  out.push_back(guarded("singular values of A and A^T agree; cond2 is scale invariant", [&] {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (std::size_t n : {2, 5, 12, 30}) {
      const auto a = DenseMatrix::generate(n, n, [&](std::size_t, std::size_t) { return u(rng); });
      const auto s1 = singular_values(a);
      const auto s2 = singular_values(a.transpose());
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(s1[i] - s2[i]) / s1[0]);
      worst = std::max(worst, rel(cond2(-3.7 * a), cond2(a)));
    }
    return bound("singular values of A and A^T agree; cond2 is scale invariant", worst, 1e-10);
  }));

  out.push_back(guarded("kernel variants agree with the scalar reference", [&] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto& ref = simd::scalar::table();
    double worst = 0.0;
    std::string names;
    for (simd::Isa isa : simd::available()) {
      names += (names.empty() ? "" : ",") + std::string(simd::to_string(isa));
      const auto& k = simd::table_for(isa);
      for (std::size_t n : {0, 1, 3, 4, 7, 8, 9, 31, 64, 1001}) {
        std::vector<double> x(n), y(n);
        for (auto& v : x) v = u(rng);
        for (auto& v : y) v = u(rng);
        double scale = 1.0;
        for (std::size_t i = 0; i < n; ++i) scale += std::fabs(x[i] * y[i]);
        worst = std::max(worst, std::fabs(k.dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) / scale);
        worst = std::max(worst, std::fabs(k.max_abs(x.data(), n) - ref.max_abs(x.data(), n)));
        auto y1 = y, y2 = y;
        k.axpy(0.37, x.data(), y1.data(), n);
        ref.axpy(0.37, x.data(), y2.data(), n);
        auto x1 = x, x2 = x;
        k.rotate(x1.data(), y1.data(), n, 0.6, 0.8);
        ref.rotate(x2.data(), y2.data(), n, 0.6, 0.8);
        for (std::size_t i = 0; i < n; ++i) {
          worst = std::max({worst, std::fabs(y1[i] - y2[i]), std::fabs(x1[i] - x2[i])});
        }
      }
    }
    auto r = bound("kernel variants agree with the scalar reference", worst, 1e-13);
    r.detail += " [" + names + "]";
    return r;
  }));

  return out;
}

bool print_verification(const std::vector<CheckResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  --  " << r.detail << '\n';
    all = all && r.passed;
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed ? 1 : 0;
  out << passed << "/" << results.size() << " checks passed\n";
  return all;
}

}  // namespace mmfs
