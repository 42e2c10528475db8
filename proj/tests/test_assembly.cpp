#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mmfs/assembly.hpp"
#include "mmfs/error.hpp"

using namespace mmfs;
using std::numbers::pi;

TEST_SUITE("assembly") {
  TEST_CASE("build_A entries") {
    const auto coll = collocation_points(BoundaryCurve::circle(1), 3);
    const auto src = source_points(0.5, 3);
    const auto a = build_A(coll, src);
    CHECK(a(0, 0) == doctest::Approx(std::log(0.5)));
    CHECK(a(0, 0) == doctest::Approx(-0.693147).epsilon(1e-6));
    const double d = std::hypot(std::cos(2 * pi / 3) - 0.5, std::sin(2 * pi / 3));
    CHECK(a(1, 0) == doctest::Approx(std::log(d)));
  }

  TEST_CASE("build_A is zero at unit distance and rejects coincident points") {
    const auto coll = collocation_points(BoundaryCurve::circle(2), 4);
    const auto src = source_points(1.0, 4);
    CHECK(build_A(coll, src)(0, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS_AS(build_A(coll, source_points(2.0, 4)), CoincidentPoints);
    CHECK_THROWS_AS(build_A(coll, source_points(1.0, 5)), DimensionMismatch);
  }

  TEST_CASE("build_A_hat") {
    const auto c1 = collocation_points(BoundaryCurve::circle(1), 5);
    const auto s = source_points(0.4, 5);
    CHECK(max_abs_diff(build_A_hat(c1, s), build_A(c1, s)) <= 1e-15);

    const auto c2 = collocation_points(BoundaryCurve::circle(2), 3);
    CHECK(build_A_hat(c2, source_points(1.0, 3))(0, 0) == doctest::Approx(-std::log(2.0)));

    const auto ce = collocation_points(BoundaryCurve::epitrochoid(3, 1), 7);
    const auto s7 = source_points(1.0, 7);
    const auto a = build_A(ce, s7), ah = build_A_hat(ce, s7);
    for (std::size_t k = 0; k < 7; ++k)
      for (std::size_t j = 0; j < 7; ++j) CHECK(ah(k, j) - a(k, j) == doctest::Approx(-std::log(ce.radii[k])));
  }

  TEST_CASE("build_S") {
    const auto curve = BoundaryCurve::epitrochoid(3, 1);
    const auto coll = collocation_points(curve, 21);
    const auto s = build_S(coll, 10, 2.5);
    REQUIRE(s.rows() == 21);
    REQUIRE(s.cols() == 21);
    for (std::size_t j = 0; j < 21; ++j) CHECK(s(j, 0) == 1.0);
    const auto sr = build_S(coll, 10, rho_min(curve));
    CHECK(sr.max_abs() <= 1.0 + 1e-15);

    const auto circ = collocation_points(BoundaryCurve::circle(1.5), 9);
    CHECK(max_abs_diff(build_S(circ, 4, 1.5), build_T_theta(9, 4).transpose()) <= 1e-15);
  }

  TEST_CASE("build_T_theta") {
    const auto t = build_T_theta(3, 1);
    for (std::size_t j = 0; j < 3; ++j) CHECK(t(0, j) == 1.0);
    CHECK(t(1, 0) == 1.0);
    CHECK(t(1, 1) == doctest::Approx(-0.5));
    CHECK(t(1, 2) == doctest::Approx(-0.5));
    CHECK(t(2, 0) == 0.0);
    CHECK(t(2, 1) == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(t(2, 2) == doctest::Approx(-std::sqrt(3.0) / 2));

    const auto t0 = build_T_theta(5, 0);
    REQUIRE(t0.rows() == 1);
    for (std::size_t j = 0; j < 5; ++j) CHECK(t0(0, j) == 1.0);
  }

  TEST_CASE("T_theta orthogonality up to N = 201") {
    for (std::size_t N = 3; N <= 201; N += 2) {
      const auto t = build_T_theta(N, (N - 1) / 2);
      auto expected = DenseMatrix::identity(N);
      expected = (N / 2.0) * expected;
      expected(0, 0) = double(N);
      CHECK(max_abs_diff(t * t.transpose(), expected) <= 1e-11 * N);
    }
  }

  TEST_CASE("build_T_R") {
    const auto t = build_T_R(2, 1.0, 1.0);
    const double expected[] = {1, -1, -1, -0.5, -0.5};
    for (std::size_t i = 0; i < 5; ++i) CHECK(t(i, i) == doctest::Approx(expected[i]));
    CHECK(determinant(build_T_R(2, 2.0, 1.0)) == doctest::Approx(16.0));
    CHECK(closed_form::det_T_R(2, 2.0, 1.0) == doctest::Approx(16.0));
  }

  TEST_CASE("build_S_R0") {
    CHECK(build_S_R0(3, 2.0, 2.0) == DenseMatrix::identity(7));
    const auto s = build_S_R0(1, 0.5, 1.0);
    CHECK(s(0, 0) == 1.0);
    CHECK(s(1, 1) == doctest::Approx(0.5));
    CHECK(s(2, 2) == doctest::Approx(0.5));
    CHECK(determinant(build_S_R0(2, 0.5, 1.0)) == doctest::Approx(std::pow(0.5, 6)));
    CHECK(closed_form::det_S_R0(2, 0.5, 1.0) == doctest::Approx(std::pow(0.5, 6)));
  }

  TEST_CASE("build_K") {
    const auto p2 = MethodParams::make(TrefftzDims{7, 3}, 0.8, 0.8);
    const auto k2 = build_K(p2);
    const auto th = angle_grid(7);
    for (std::size_t j = 0; j < 7; ++j) {
      CHECK(k2(0, j) == 1.0);
      CHECK(k2(1, j) == doctest::Approx(-std::cos(th[j])));
      CHECK(k2(3, j) == doctest::Approx(-std::cos(2 * th[j]) / 2));
    }
    CHECK(build_K(MethodParams::make(TrefftzDims{7, 3}, 0.3, 0.3)) == k2);

    const auto k1 = build_K(MethodParams::make(TrefftzDims{7, 3}, 0.8, 1.0));
    for (std::size_t j = 0; j < 7; ++j) CHECK(k1(3, j) == doctest::Approx(-0.64 * std::cos(2 * th[j]) / 2));
  }

  TEST_CASE("K = T_R T_theta") {
    for (std::size_t M : {1, 3, 10}) {
      const auto p = MethodParams::make(TrefftzDims{2 * M + 1, M}, 1.7, 0.6);
      CHECK(max_abs_diff(build_K(p), build_T_R(M, 1.7, 0.6) * build_T_theta(2 * M + 1, M)) <=
            1e-14 * build_K(p).max_abs());
    }
  }

  TEST_CASE("explicit inverses") {
    const auto ti = explicit_T_theta_inverse(3, 1);
    for (std::size_t j = 0; j < 3; ++j) CHECK(ti(j, 0) == doctest::Approx(1.0 / 3));
    CHECK(max_abs_diff(build_T_theta(3, 1) * ti, DenseMatrix::identity(3)) <= 1e-14);
    CHECK_THROWS_AS(explicit_T_theta_inverse(4, 1), DimensionMismatch);

    for (std::size_t N : {3, 7, 21}) {
      for (double ratio : {0.5, 1.0, 2.0}) {
        const auto p = MethodParams::make(TrefftzDims::from_odd_n(N), ratio, 1.0);
        const auto ki = explicit_K_inverse(p);
        for (std::size_t j = 0; j < N; ++j) CHECK(ki(j, 0) == doctest::Approx(1.0 / N));
        CHECK(max_abs_diff(build_K(p) * ki, DenseMatrix::identity(N)) <= 1e-10);
        CHECK(max_abs_diff(build_T_theta(N, (N - 1) / 2) * explicit_T_theta_inverse(N, (N - 1) / 2),
                           DenseMatrix::identity(N)) <= 1e-12);
      }
    }
    const auto p = MethodParams::make(TrefftzDims{7, 3}, 1.5, 1.0);
    CHECK(max_abs_diff(build_K(p) * explicit_K_inverse(p), DenseMatrix::identity(7)) <= 1e-12);

    const auto q = MethodParams::make(TrefftzDims{3, 1}, 1.0, 1.0);
    const auto kq = explicit_K_inverse(q);
    const auto th = angle_grid(3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(kq(j, 1) == doctest::Approx(-2.0 / 3 * std::cos(th[j])));
  }

  TEST_CASE("SK on a circle diagonalizes") {
    const double rho = 2.0;
    const auto coll = collocation_points(BoundaryCurve::circle(rho), 21);
    for (double ratio : {0.3, 0.9}) {
      const double R = ratio * rho;
      const auto p = MethodParams::make(TrefftzDims{21, 10}, R, 1.3);
      const auto lam = build_Lambda(10, R, rho);
      CHECK(lam(0, 0) == 1.0);
      CHECK(lam(1, 1) == doctest::Approx(-ratio));
      const auto t = build_T_theta(21, 10);
      CHECK(max_abs_diff(build_SK(coll, p), t.transpose() * lam * t) <= 1e-11 * 21);
      const auto p2 = MethodParams::make(TrefftzDims{21, 10}, R, 0.4);
      CHECK(max_abs_diff(build_SK(coll, p), build_SK(coll, p2)) <= 1e-12);
    }
  }

  TEST_CASE("SK requires a square system") {
    const auto coll = collocation_points(BoundaryCurve::circle(2), 8);
    CHECK_THROWS_AS(build_SK(coll, MethodParams::make(TrefftzDims{8, 3}, 1.0, 1.0)), DimensionMismatch);
  }

  TEST_CASE("S and K with N = 2M lose rank") {
    for (std::size_t M : {2, 5, 10}) {
      const std::size_t N = 2 * M;
      const auto sp = drop_first_column(build_S(collocation_points(BoundaryCurve::circle(1.3), N), M, 1.0));
      auto s = singular_values(sp);
      CHECK(s.back() / s.front() <= 1e-12);
      const auto kp = drop_first_column(build_K(MethodParams::make(TrefftzDims{N, M}, 0.9, 1.0)).transpose());
      s = singular_values(kp);
      CHECK(s.back() / s.front() <= 1e-12);
    }
  }

  TEST_CASE("sign-flipped polar variant") {
    for (std::size_t M : {1, 4, 10}) {
      const std::size_t N = 2 * M + 1;
      const auto q = build_T_theta_negated(N, M);
      const auto d = build_D(N, M);
      auto dinv = d;
      for (std::size_t i = 0; i < N; ++i) dinv(i, i) = 1.0 / d(i, i);
      const auto u = dinv * q;
      CHECK(max_abs_diff(u * u.transpose(), DenseMatrix::identity(N)) <= 1e-12);
      CHECK(max_abs_diff(build_T_R_positive(M, 1.4, 1.0) * q, build_K(MethodParams::make(TrefftzDims{N, M}, 1.4, 1.0))) <=
            1e-12);
    }
  }

  TEST_CASE("closed-form determinants") {
    for (std::size_t M = 1; M <= 8; ++M) {
      const std::size_t N = 2 * M + 1;
      CHECK(std::abs(determinant(build_T_theta(N, M))) == doctest::Approx(closed_form::det_T_theta(M)).epsilon(1e-8));
      CHECK(determinant(build_T_R(M, 1.2, 0.8)) == doctest::Approx(closed_form::det_T_R(M, 1.2, 0.8)).epsilon(1e-8));
      const auto s = build_S(collocation_points(BoundaryCurve::circle(1.1), N), M, 0.9);
      CHECK(std::abs(determinant(s)) == doctest::Approx(std::abs(closed_form::det_S_circle(M, 0.9, 1.1))).epsilon(1e-8));
    }
    CHECK(closed_form::det_T_theta(1) == doctest::Approx(std::pow(3.0, 1.5) / 2));
  }

  TEST_CASE("grid trig reduction") {
    CHECK(grid_cos(0, 5, 7) == 1.0);
    CHECK(grid_sin(7, 1, 7) == 0.0);
    CHECK(grid_cos(3, 5, 11) == doctest::Approx(std::cos(kTwoPi * 15 / 11)));
    CHECK(grid_sin(3, 5, 11) == doctest::Approx(std::sin(kTwoPi * 15 / 11)));
  }
}
