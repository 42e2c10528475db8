#include "mmfs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mmfs/error.hpp"

namespace mmfs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double reduce_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw NonPositiveRadius(std::string(what) + " must be positive and finite, got " + std::to_string(v));
  }
}

}  // namespace

BoundaryCurve::BoundaryCurve(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const curves::Circle& c) { require_positive(c.radius, "circle radius"); },
                 [](const curves::Ellipse& e) {
                   require_positive(e.a, "ellipse semi-axis a");
                   require_positive(e.b, "ellipse semi-axis b");
                 },
                 [](const curves::Epitrochoid& e) {
                   if (!(e.b != 0.0) || !std::isfinite(e.a) || !std::isfinite(e.b)) {
                     throw InvalidArgument("epitrochoid parameter b must be nonzero and finite");
                   }
                   // rho >= |a + b| - 1 > 0 keeps the origin strictly inside.
                   if (!(std::fabs(e.a + e.b) > 1.0)) {
                     throw NonPositiveRadius("epitrochoid needs |a + b| > 1 for a positive radius");
                   }
                 },
                 [](const curves::CustomRadial& c) {
                   if (c.samples.size() < 3) throw InvalidArgument("custom radial curve needs at least 3 samples");
                   for (double s : c.samples) require_positive(s, "custom radial sample");
                 },
             },
             kind_);
}

bool operator==(const BoundaryCurve& a, const BoundaryCurve& b) {
  return std::visit(
      overloaded{
          [](const curves::Circle& x, const curves::Circle& y) { return x.radius == y.radius; },
          [](const curves::Ellipse& x, const curves::Ellipse& y) { return x.a == y.a && x.b == y.b; },
          [](const curves::Epitrochoid& x, const curves::Epitrochoid& y) { return x.a == y.a && x.b == y.b; },
          [](const curves::CustomRadial& x, const curves::CustomRadial& y) { return x.samples == y.samples; },
          [](const auto&, const auto&) { return false; },
      },
      a.kind_, b.kind_);
}

double rho(const BoundaryCurve& curve, double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("rho: angle must be finite");
  const double t = reduce_angle(theta);
  return std::visit(overloaded{
                        [](const curves::Circle& c) { return c.radius; },
                        [t](const curves::Ellipse& e) {
                          const double s = std::sin(t);
                          const double c = std::cos(t);
                          return e.a * e.b / std::sqrt(e.a * e.a * s * s + e.b * e.b * c * c);
                        },
                        [t](const curves::Epitrochoid& e) {
                          const double ab = e.a + e.b;
                          return std::sqrt(ab * ab + 1.0 - 2.0 * ab * std::cos(e.a * t / e.b));
                        },
                        [t](const curves::CustomRadial& c) {
                          const std::size_t n = c.samples.size();
                          const double u = t / kTwoPi * static_cast<double>(n);
                          const auto i = std::min(static_cast<std::size_t>(u), n - 1);
                          const double frac = u - static_cast<double>(i);
                          return (1.0 - frac) * c.samples[i] + frac * c.samples[(i + 1) % n];
                        },
                    },
                    curve.kind());
}

std::pair<double, double> rho_extrema(const BoundaryCurve& curve, std::size_t grid_size) {
  if (const auto* c = std::get_if<curves::Circle>(&curve.kind())) return {c->radius, c->radius};
  if (const auto* c = std::get_if<curves::CustomRadial>(&curve.kind())) {
    // Piecewise linear: extrema sit on the samples.
    const auto [lo, hi] = std::minmax_element(c->samples.begin(), c->samples.end());
    return {*lo, *hi};
  }
  if (grid_size < 360) throw InvalidArgument("rho_extrema: grid size must be at least 360");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double r = rho(curve, kTwoPi * static_cast<double>(i) / static_cast<double>(grid_size));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

std::vector<double> angle_grid(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
  return t;
}

CollocationSet collocation_points(const BoundaryCurve& curve, std::size_t n) {
  if (n < 3) throw InvalidArgument("collocation_points: need N >= 3, got " + std::to_string(n));
  CollocationSet set;
  set.angles = angle_grid(n);
  set.radii.reserve(n);
  set.points.reserve(n);
  for (double t : set.angles) {
    const double r = rho(curve, t);
    set.radii.push_back(r);
    set.points.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return set;
}

SourceSet source_points(double radius, std::size_t n) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw NonPositiveRadius("source_points: radius must be positive, got " + std::to_string(radius));
  }
  if (n < 3) throw InvalidArgument("source_points: need N >= 3, got " + std::to_string(n));
  SourceSet set;
  set.radius = radius;
  set.angles = angle_grid(n);
  set.points.reserve(n);
  for (double t : set.angles) set.points.push_back({radius * std::cos(t), radius * std::sin(t)});
  return set;
}

}  // namespace mmfs
