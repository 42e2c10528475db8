#include <doctest.h>

#include <filesystem>

#include "mmfs/config.hpp"
#include "mmfs/error.hpp"

using namespace mmfs;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_config_string(text);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("defaults") {
    const auto c = parse_config_string("");
    CHECK(c.curve == BoundaryCurve::circle(1));
    CHECK_FALSE(c.method.has_value());
    CHECK(c.N == 21);
    CHECK(c.order() == 10);
    CHECK(c.r0_mtm() == 1.0);
    CHECK(c.r0_mmfs() == c.R);
  }

  TEST_CASE("full config") {
    const auto c = parse_config_string(R"(
# comment
[curve]
kind = epitrochoid
a = 3
b = 1

[method]
name = MMFS-MBF
N = 19
M = 9
R = 1

[data]
kind = paper-exterior
far_field = 1

[evaluation]
radii = 10, 100, 1e3
theta_samples = 2048

[output]
path = out.csv
)");
    CHECK(c.curve == BoundaryCurve::epitrochoid(3, 1));
    CHECK(c.method == MethodKind::MMFS_MBF);
    CHECK(c.N == 19);
    CHECK(c.r0_mtm() == doctest::Approx(3.0));
    CHECK(c.far_field == 1.0);
    CHECK(c.radii == std::vector<double>{10, 100, 1000});
    CHECK(c.theta_samples == 2048);
    CHECK(c.output == "out.csv");
    CHECK_NOTHROW(c.validate_for_solve());
  }

  TEST_CASE("round trip") {
    for (const char* text : {
             "",
             "[curve]\nkind = ellipse\na = 10\nb = 5\n[sweep]\nkind = R0\nstart = 0.1\nstop = 9\nstep = 0.1\n",
             "[curve]\nkind = custom\nsamples = 1, 1.5, 2, 1.25\n[method]\nname = MTM\nN = 7\nR0 = 0.9\n"
             "[data]\nkind = fourier\na0 = 2\ncos = 0, 3\nsin = -1\n",
             "[method]\nname = CMFS_CBF\nN = 12\nR = 0.3\n[data]\nkind = constant\nvalue = 3.25\n"
             "[evaluation]\ncompare_exact = false\nradii = 0.1, 1e10\n[output]\npath = a/b.csv\n",
             "[curve]\nkind = circle\nradius = 2\n[method]\nN = 9\nR = 1\nR0_mmfs = 0.5\n"
             "[sweep]\nkind = sk-convergence\nM_ladder = 4, 8, 16\nN_list = 5, 7, 9, 11\n",
         }) {
      CAPTURE(text);
      const auto a = parse_config_string(text);
      const auto b = parse_config_string(serialize_config(a));
      CHECK(a == b);
    }
  }

  TEST_CASE("parse errors carry line numbers or fields") {
    try {
      parse_config_string("[curve]\nkind = circle\nthis line is broken\n");
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
    CHECK(field_of("[curve]\nkind = square\n") == "curve.kind");
    CHECK(field_of("[curve]\nkind = circle\ncolour = red\n") == "curve.colour");
    CHECK(field_of("[shape]\nkind = circle\n") == "shape");
    CHECK(field_of("[method]\nN = ten\n") == "method.N");
    CHECK(field_of("[method]\nname = FEM\n") == "method.name");
    CHECK(field_of("[curve]\nkind = ellipse\na = 1\n") == "curve.b");
    CHECK(field_of("[curve]\nkind = circle\nradius = -1\n") == "curve");
  }

  TEST_CASE("solve validation") {
    auto c = parse_config_string("[method]\nname = MMFS_MBF\nN = 10\n");
    try {
      c.validate_for_solve();
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "method.N");
    }
    c = parse_config_string("[method]\nname = CMFS_CBF\nN = 10\nR = 0.5\n");
    CHECK_NOTHROW(c.validate_for_solve());
    c = parse_config_string("[method]\nname = CMFS_CBF\nR = 1.5\n");
    CHECK_THROWS_AS(c.validate_for_solve(), ConfigError);
    c = parse_config_string("[method]\nname = MTM\nN = 9\nM = 3\n");
    CHECK_THROWS_AS(c.validate_for_solve(), ConfigError);
  }

  TEST_CASE("sweep validation") {
    CHECK_THROWS_AS(parse_config_string("").validate_for_sweep(), ConfigError);
    CHECK_THROWS_AS(parse_config_string("[sweep]\nkind = A-vs-SK\nN_list = 5, 7\n").validate_for_sweep(), ConfigError);
    CHECK_NOTHROW(parse_config_string("[sweep]\nkind = R0\n").validate_for_sweep());
  }

  TEST_CASE("boundary data and exact solutions") {
    auto c = parse_config_string("[data]\nkind = constant\nvalue = 3\n");
    const auto coll = collocation_points(c.curve, 5);
    for (double v : make_boundary_data(c).sample(coll)) CHECK(v == 3.0);
    CHECK(make_exact_solution(c)->value(7, 1) == 3.0);

    c = parse_config_string("[curve]\nkind = ellipse\na = 2\nb = 1\n[data]\nkind = fourier\ncos = 1\n");
    CHECK_FALSE(make_exact_solution(c).has_value());
    c = parse_config_string("[evaluation]\ncompare_exact = false\n");
    CHECK_FALSE(make_exact_solution(c).has_value());
  }

  TEST_CASE("shipped configs load") {
    const std::filesystem::path dir = MMFS_CONFIG_DIR;
    std::size_t n = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.path().extension() != ".ini") continue;
      CAPTURE(entry.path().string());
      const auto c = load_config(entry.path().string());
      if (c.sweep.kind == SweepKind::None) {
        CHECK_NOTHROW(c.validate_for_solve());
      } else {
        CHECK_NOTHROW(c.validate_for_sweep());
      }
      ++n;
    }
    CHECK(n >= 10);
    CHECK_THROWS_AS(load_config((dir / "missing.ini").string()), ConfigError);
  }
}
