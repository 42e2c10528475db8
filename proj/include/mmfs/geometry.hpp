#pragma once

// Star-shaped obstacle boundaries r = rho(theta) and the equally spaced
// collocation / source point sets built on them.

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

namespace mmfs {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

namespace curves {

struct Circle {
  double radius = 1.0;
};

// rho = ab / sqrt(a^2 sin^2 t + b^2 cos^2 t); `a` is the semi-axis along x.
struct Ellipse {
  double a = 1.0;
  double b = 1.0;
};

// rho = sqrt((a+b)^2 + 1 - 2(a+b) cos(a t / b))
struct Epitrochoid {
  double a = 3.0;
  double b = 1.0;
};

// Samples of rho on the uniform grid t_i = 2 pi i / n, linearly interpolated
// and wrapped periodically.
struct CustomRadial {
  std::vector<double> samples;
};

}  // namespace curves

class BoundaryCurve {
 public:
  using Kind = std::variant<curves::Circle, curves::Ellipse, curves::Epitrochoid, curves::CustomRadial>;

  // Validates parameters; throws NonPositiveRadius / InvalidArgument.
  explicit BoundaryCurve(Kind kind);

  static BoundaryCurve circle(double radius) { return BoundaryCurve(curves::Circle{radius}); }
  static BoundaryCurve ellipse(double a, double b) { return BoundaryCurve(curves::Ellipse{a, b}); }
  static BoundaryCurve epitrochoid(double a, double b) { return BoundaryCurve(curves::Epitrochoid{a, b}); }
  static BoundaryCurve custom(std::vector<double> samples) {
    return BoundaryCurve(curves::CustomRadial{std::move(samples)});
  }

  const Kind& kind() const noexcept { return kind_; }
  bool is_circle() const noexcept { return std::holds_alternative<curves::Circle>(kind_); }

  friend bool operator==(const BoundaryCurve& a, const BoundaryCurve& b);

 private:
  Kind kind_;
};

// Radius of the boundary at angle theta (reduced modulo 2 pi).
double rho(const BoundaryCurve& curve, double theta);

inline constexpr std::size_t kDefaultExtremaGrid = 4096;

// (rho_min, rho_max) over a uniform grid; exact for circles.
std::pair<double, double> rho_extrema(const BoundaryCurve& curve, std::size_t grid_size = kDefaultExtremaGrid);

inline double rho_min(const BoundaryCurve& curve) { return rho_extrema(curve).first; }

// theta_j = 2 pi j / n, j = 0..n-1
std::vector<double> angle_grid(std::size_t n);

struct CollocationSet {
  std::vector<double> angles;
  std::vector<double> radii;
  std::vector<Point> points;

  std::size_t size() const noexcept { return points.size(); }
};

struct SourceSet {
  double radius = 0.0;
  std::vector<double> angles;
  std::vector<Point> points;

  std::size_t size() const noexcept { return points.size(); }
};

// N >= 3 points z_j = rho(theta_j) e^{i theta_j}.
CollocationSet collocation_points(const BoundaryCurve& curve, std::size_t n);

// N >= 3 points zeta_j = R e^{i theta_j}, R > 0.
SourceSet source_points(double radius, std::size_t n);

}  // namespace mmfs
