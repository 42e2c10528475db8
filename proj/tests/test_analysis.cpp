#include <doctest.h>

#include <cmath>

#include "mmfs/analysis.hpp"
#include "mmfs/error.hpp"

using namespace mmfs;

TEST_SUITE("analysis") {
  TEST_CASE("closed-form cond(S) on a circle") {
    CHECK(analytic_cond_S_circle(1.0, 10, 1.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(analytic_cond_S_circle(3.0, 7, 3.0) == doctest::Approx(std::sqrt(2.0)));
    const double r0 = std::pow(2.0, 1.0 / 20);
    CHECK(analytic_cond_S_circle(1.0, 10, r0) == doctest::Approx(std::pow(2.0, 9.0 / 20)));
    CHECK(analytic_cond_S_circle(1.0, 10, r0) == doctest::Approx(1.36604).epsilon(1e-5));
    CHECK(analytic_cond_S_circle(2.0, 5, 1.0) == doctest::Approx(std::sqrt(2.0) * 32));
  }

  TEST_CASE("optimal R0") {
    auto o = analytic_optimal_R0(1.0, 10);
    CHECK(o.R0 == doctest::Approx(1.03526).epsilon(1e-5));
    CHECK(o.cond == doctest::Approx(1.36604).epsilon(1e-5));
    o = analytic_optimal_R0(2.0, 1);
    CHECK(o.R0 == doctest::Approx(std::sqrt(2.0) * 2));
    CHECK(o.cond == doctest::Approx(1.0));
    double prev = 0.0;
    for (std::size_t M : {1, 2, 5, 20, 100, 1000}) {
      const double c = analytic_optimal_R0(1.0, M).cond;
      CHECK(c < std::sqrt(2.0));
      CHECK(c > prev);
      prev = c;
    }
  }

  TEST_CASE("sweep agrees with the closed form on all branches") {
    const auto grid = uniform_grid(0.2, 15.0, 0.05);
    for (std::size_t M : {1, 4, 10}) {
      const auto p = cond_sweep_S(BoundaryCurve::circle(1.0), 2 * M + 1, M, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!p.reliable[i]) continue;
        const double a = analytic_cond_S_circle(1.0, M, grid[i]);
        CHECK(std::abs(p.conds[i] - a) / a <= 1e-6);
      }
    }
  }

  TEST_CASE("argmin on the circle is within one grid step of the optimum") {
    for (std::size_t M : {2, 5, 10}) {
      const double rho = 1.7;
      const auto p = cond_sweep_S(BoundaryCurve::circle(rho), 2 * M + 1, M, uniform_grid(0.005, 5.0, 0.005));
      REQUIRE(p.argmin);
      CHECK(std::abs(p.argmin->first - analytic_optimal_R0(rho, M).R0) <= 0.005 + 1e-12);
    }
  }

  TEST_CASE("sweeps are identical across thread counts") {
    const auto grid = uniform_grid(0.5, 8.0, 0.25);
    const auto curve = BoundaryCurve::ellipse(10, 5);
    const auto one = cond_sweep_S(curve, 11, 5, grid, {1});
    const auto four = cond_sweep_S(curve, 11, 5, grid, {4});
    CHECK(one.conds == four.conds);
    CHECK(one.reliable == four.reliable);
  }

  TEST_CASE("unreliable points are kept but flagged") {
    const auto p = cond_sweep_S(BoundaryCurve::ellipse(10, 5), 21, 10, {0.05, 5.85});
    REQUIRE(p.conds.size() == 2);
    CHECK_FALSE(p.reliable[0]);
    CHECK(p.reliable[1]);
    REQUIRE(p.argmin);
    CHECK(p.argmin->first == 5.85);
  }

  TEST_CASE("optimal R0 against N") {
    const auto grid = uniform_grid(0.005, 3.0, 0.005);
    const auto pts = optimal_R0_vs_N(BoundaryCurve::circle(1.0), {5, 9, 21}, grid);
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) CHECK(std::abs(p.R0 - std::pow(2.0, 1.0 / (p.N - 1.0))) <= 0.005);
    CHECK(pts[2].R0 == doctest::Approx(1.035).epsilon(1e-3));
    CHECK(pts[0].R0 > pts[1].R0);

    const auto ep = optimal_R0_vs_N(BoundaryCurve::epitrochoid(3, 1), {5, 9, 13}, uniform_grid(0.5, 6.0, 0.01));
    for (const auto& p : ep) CHECK(p.R0 >= 3.0);
  }

  TEST_CASE("K comparison") {
    const auto c = cond_K_comparison(21, uniform_grid(0.1, 2.0, 0.1));
    for (double v : c.k2.conds) CHECK(std::abs(v - std::sqrt(2.0) * 10) <= 1e-9);
    const auto c3 = cond_K_comparison(3, {0.4, 1.7});
    for (double v : c3.k2.conds) CHECK(v == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(cond_K_comparison(20, {1.0}), DimensionMismatch);
  }

  TEST_CASE("A versus SK") {
    const auto c = cond_A_vs_SK(BoundaryCurve::epitrochoid(3, 1), 1.2, {5, 7, 9, 11, 13, 15, 17, 19});
    for (std::size_t i = 0; i < c.a.conds.size(); ++i) CHECK(c.sk.conds[i] <= c.a.conds[i]);
  }

  TEST_CASE("exact solutions") {
    const auto u = ExactSolution::exp_inversion();
    CHECK(u.value(10, 0) == doctest::Approx(std::exp(0.1)));
    CHECK(u.value(10, 0) == doctest::Approx(1.10517).epsilon(1e-5));
    CHECK(u.minus(1e10, 0, 1.0) == doctest::Approx(1e-10).epsilon(1e-9));
    CHECK(ExactSolution::constant(3).value(4, 5) == 3.0);
    const auto f = ExactSolution::circle_fourier(2.0, 1.0, {0.5}, {0.0});
    CHECK(f.value(4.0, 0.0) == doctest::Approx(1.0 + 0.5 * 0.5));
  }

  TEST_CASE("error metrics") {
    const auto circle = BoundaryCurve::circle(1);
    auto rep = solve_mtm(circle, BoundaryFunction([](double) { return 0.0; }), 9, 4, 1.0);
    CHECK(error_max_on_circle(rep, ExactSolution::constant(0), 5.0) == 0.0);
    CHECK_THROWS_AS(error_pointwise(rep, ExactSolution::constant(0), 0.5, 0.0), PointInsideObstacle);

    rep = solve_mtm(circle, BoundaryFunction([](double t) { return std::cos(2 * t); }), 9, 4, 1.0);
    const ExactSolution self([&](double x, double y) { return rep.evaluate(std::hypot(x, y), std::atan2(y, x)); });
    CHECK(error_max_on_circle(rep, self, 3.0) <= 1e-15);
    CHECK_THROWS_AS(error_max_on_circle(rep, self, 3.0, 100), InvalidArgument);
    const auto ec = error_curve(rep, ExactSolution::circle_fourier(1.0, 0.0, {0.0, 1.0}, {0.0, 0.0}), {2.0, 20.0});
    for (double e : ec.errors) CHECK(e <= 1e-14);
  }

  TEST_CASE("error ladders follow the basis") {
    SolveRequest req;
    req.curve = BoundaryCurve::epitrochoid(3, 1);
    const auto exact = ExactSolution::exp_inversion();
    req.data = BoundaryData([exact, c = req.curve](double t) {
      const double r = rho(c, t);
      return exact.value(r * std::cos(t), r * std::sin(t));
    });
    req.N = 19;
    req.M = 9;
    req.R = 1.0;
    req.R0_mtm = 3.0;
    req.R0_mmfs = 1.0;
    req.far_field = 1.0;
    std::vector<double> radii;
    for (int k = 1; k <= 10; ++k) radii.push_back(std::pow(10.0, k));
    for (auto kind : {MethodKind::CMFS_CBF, MethodKind::MMFS_CBF}) {
      const auto e = error_curve(solve(kind, req), exact, radii).errors;
      for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] >= e[i - 1]);
    }
    for (auto kind : {MethodKind::CMFS_MBF, MethodKind::MMFS_MBF}) {
      const auto e = error_curve(solve(kind, req), exact, radii).errors;
      for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] <= e[i - 1]);
    }
  }

  TEST_CASE("SK approaches A") {
    const auto curve = BoundaryCurve::circle(2);
    const auto g = sk_convergence(curve, 9, 1.0, 1.0, {4, 40});
    CHECK(g[1].gap < g[0].gap);
    CHECK(g[1].gap_zero_sum < 1e-12);

    const auto near = sk_convergence(curve, 9, 1.5, 1.0, {6});
    const auto far = sk_convergence(curve, 9, 0.5, 1.0, {6});
    CHECK(far[0].gap_zero_sum < near[0].gap_zero_sum);

    const auto floor = sk_convergence(curve, 9, 0.2, 1.0, {30});
    CHECK(floor[0].gap_zero_sum < 1e-13);
  }

  TEST_CASE("growth fit") {
    std::vector<double> n{5, 7, 9, 11}, c;
    for (double x : n) c.push_back(2.0 * std::pow(3.0, x));
    auto f = growth_fit(n, c);
    CHECK(f.amplitude == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(f.base == doctest::Approx(3.0).epsilon(1e-12));

    std::vector<double> noisy{54.1, 261.0, 1017.3, 4895.7, 22363.6};
    std::vector<double> nn{5, 7, 9, 11, 13};
    const auto g = growth_fit(nn, noisy);
    for (double s : {1e-3, 7.0, 1e5}) {
      std::vector<double> scaled;
      for (double v : noisy) scaled.push_back(s * v);
      const auto h = growth_fit(nn, scaled);
      CHECK(h.amplitude == doctest::Approx(s * g.amplitude).epsilon(1e-10));
      CHECK(h.base == doctest::Approx(g.base).epsilon(1e-10));
    }

    CHECK_THROWS_AS(growth_fit({1, 2, 3}, {1, 2, 3}), InvalidArgument);
    CHECK_THROWS_AS(growth_fit({5, 5, 5, 5}, {1, 2, 3, 4}), DegenerateFit);
    CHECK_THROWS_AS(growth_fit({1, 2, 3, 4}, {1, -2, 3, 4}), InvalidArgument);
  }

  TEST_CASE("uniform grid") {
    const auto g = uniform_grid(0.005, 15.0, 0.005);
    CHECK(g.size() == 3000);
    CHECK(g.back() == doctest::Approx(15.0));
    CHECK(default_R0_grid() == g);
  }

  TEST_CASE("parallel_for propagates exceptions") {
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                      if (i == 7) throw InvalidArgument("boom");
                    }),
                    InvalidArgument);
  }
}
