#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mmfs/error.hpp"
#include "mmfs/linalg.hpp"
#include "mmfs/simd/kernels.hpp"

using namespace mmfs;
namespace sv = mmfs::simd;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference is always available") {
    CHECK(sv::is_available(sv::Isa::Scalar));
    CHECK(sv::available().front() == sv::Isa::Scalar);
    CHECK(sv::table_for(sv::Isa::Scalar).isa == sv::Isa::Scalar);
  }

  TEST_CASE("unavailable variants are rejected") {
    for (auto isa : {sv::Isa::Avx2, sv::Isa::Neon}) {
      if (!sv::is_available(isa)) CHECK_THROWS_AS(sv::table_for(isa), InvalidArgument);
    }
  }

  TEST_CASE("every variant matches the scalar reference") {
    const auto& ref = sv::table_for(sv::Isa::Scalar);
    std::mt19937_64 rng(3);
    for (auto isa : sv::available()) {
      CAPTURE(sv::to_string(isa));
      const auto& k = sv::table_for(isa);
      for (std::size_t n : {0, 1, 3, 4, 7, 8, 15, 16, 33, 257}) {
        CAPTURE(n);
        const auto x = random_vector(n, rng);
        const auto y = random_vector(n, rng);
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i] * y[i]);
        CHECK(std::abs(k.dot(x.data(), y.data(), n) - ref.dot(x.data(), y.data(), n)) <= 1e-13 * (scale + 1));
        CHECK(k.max_abs(x.data(), n) == ref.max_abs(x.data(), n));

        auto y1 = y, y2 = y;
        k.axpy(0.37, x.data(), y1.data(), n);
        ref.axpy(0.37, x.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

        auto xa = x, ya = y, xb = x, yb = y;
        const double c = std::cos(0.3), s = std::sin(0.3);
        k.rotate(xa.data(), ya.data(), n, c, s);
        ref.rotate(xb.data(), yb.data(), n, c, s);
        for (std::size_t i = 0; i < n; ++i) {
          CHECK(std::abs(xa[i] - xb[i]) <= 1e-15 * 4);
          CHECK(std::abs(ya[i] - yb[i]) <= 1e-15 * 4);
        }
      }
    }
  }

  TEST_CASE("numerics agree under every forced variant") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto a = DenseMatrix::generate(23, 23, [&](std::size_t, std::size_t) { return u(rng); });
    std::vector<double> ref_sv;
    DenseMatrix ref_prod;
    {
      sv::ScopedIsa guard(sv::Isa::Scalar);
      CHECK(sv::active().isa == sv::Isa::Scalar);
      ref_sv = singular_values(a);
      ref_prod = a * a;
    }
    for (auto isa : sv::available()) {
      sv::ScopedIsa guard(isa);
      const auto s = singular_values(a);
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == doctest::Approx(ref_sv[i]).epsilon(1e-12));
      CHECK(max_abs_diff(a * a, ref_prod) <= 1e-13);
    }
  }
}
