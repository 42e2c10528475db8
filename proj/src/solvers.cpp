#include "mmfs/solvers.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mmfs/error.hpp"

namespace mmfs {

namespace {

constexpr double kCoincidenceDistance = 1e-14;

void require_sources_inside(const BoundaryCurve& curve, double R) {
  const double rmin = rho_min(curve);
  if (!(R < rmin)) {
    throw SourceOutsideObstacle("source radius R = " + std::to_string(R) + " must be below rho_min = " +
                                std::to_string(rmin));
  }
}

double residual(const DenseMatrix& a, std::span<const double> x, std::span<const double> b) {
  auto ax = a * x;
  for (std::size_t i = 0; i < ax.size(); ++i) ax[i] -= b[i];
  return norm2(ax);
}

// 0.5 ln(|z - zeta|^2 / |z|^2), kept accurate when |zeta| << |z|.
double log_ratio(Point z, Point zeta) {
  const double dx = z.x - zeta.x;
  const double dy = z.y - zeta.y;
  const double dist = std::hypot(dx, dy);
  if (dist < kCoincidenceDistance) throw CoincidentPoints("evaluation point coincides with a source point");
  const double z2 = z.x * z.x + z.y * z.y;
  const double zeta2 = zeta.x * zeta.x + zeta.y * zeta.y;
  if (4.0 * zeta2 < z2) {
    return 0.5 * std::log1p((zeta2 - 2.0 * (z.x * zeta.x + z.y * zeta.y)) / z2);
  }
  return std::log(dist) - 0.5 * std::log(z2);
}

}  // namespace

std::string_view to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::MTM:
      return "MTM";
    case MethodKind::CMFS_CBF:
      return "CMFS_CBF";
    case MethodKind::CMFS_MBF:
      return "CMFS_MBF";
    case MethodKind::MMFS_CBF:
      return "MMFS_CBF";
    case MethodKind::MMFS_MBF:
      return "MMFS_MBF";
  }
  return "?";
}

std::optional<MethodKind> parse_method(std::string_view name) {
  for (MethodKind k : kAllMethods) {
    if (to_string(k) == name) return k;
  }
  // Accept the hyphenated spelling as well (CMFS-CBF).
  for (MethodKind k : kAllMethods) {
    std::string s(to_string(k));
    for (char& c : s)
      if (c == '_') c = '-';
    if (s == name) return k;
  }
  return std::nullopt;
}

BoundaryData::BoundaryData(BoundaryFunction f) : data_(std::move(f)) {}

BoundaryData::BoundaryData(std::vector<double> samples) : data_(std::move(samples)) {}

std::vector<double> BoundaryData::sample(const CollocationSet& coll) const {
  if (const auto* f = std::get_if<BoundaryFunction>(&data_)) {
    std::vector<double> g(coll.size());
    for (std::size_t j = 0; j < coll.size(); ++j) g[j] = (*f)(coll.angles[j]);
    return g;
  }
  const auto& s = std::get<std::vector<double>>(data_);
  if (s.size() != coll.size()) {
    throw DimensionMismatch("boundary data has " + std::to_string(s.size()) + " samples for " +
                            std::to_string(coll.size()) + " collocation points");
  }
  return s;
}

BoundaryFunction shift_far_field(BoundaryFunction f, double c) {
  if (c == 0.0) return f;
  return [f = std::move(f), c](double theta) { return f(theta) - c; };
}

std::vector<double> TrefftzCoefficients::to_vector() const {
  std::vector<double> y(2 * a.size() + 1);
  y[0] = a0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    y[2 * k + 1] = a[k];
    y[2 * k + 2] = b[k];
  }
  return y;
}

TrefftzCoefficients TrefftzCoefficients::from_vector(double R0, std::span<const double> y) {
  if (y.size() % 2 == 0) throw DimensionMismatch("Trefftz coefficient vector must have odd length 2M+1");
  TrefftzCoefficients c;
  c.R0 = R0;
  c.a0 = y[0];
  const std::size_t m = (y.size() - 1) / 2;
  c.a.resize(m);
  c.b.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    c.a[k] = y[2 * k + 1];
    c.b[k] = y[2 * k + 2];
  }
  return c;
}

double MfsWeights::sum() const { return std::accumulate(w.begin(), w.end(), 0.0); }

double MfsWeights::l1_norm() const {
  double s = 0.0;
  for (double v : w) s += std::fabs(v);
  return s;
}

bool MfsWeights::sum_flagged() const { return std::fabs(sum()) > kSumWeightsFlagRatio * l1_norm(); }

double evaluate_trefftz(const TrefftzCoefficients& c, double r, double theta) {
  if (!(r > 0.0)) throw InvalidArgument("evaluate_trefftz: r must be positive");
  const double q = c.R0 / r;
  double value = 0.0;
  double scale = 1.0;
  for (std::size_t k = 1; k <= c.order(); ++k) {
    scale *= q;
    const double kt = static_cast<double>(k) * theta;
    value += (c.a[k - 1] * std::cos(kt) + c.b[k - 1] * std::sin(kt)) * scale;
  }
  return c.a0 + value;
}

double evaluate_mfs(const MfsWeights& wts, Point z) {
  if (wts.w.size() != wts.src.size()) throw DimensionMismatch("evaluate_mfs: weight count differs from sources");
  const double rz = std::hypot(z.x, z.y);
  if (wts.basis == Basis::Modified && !(rz > 0.0)) {
    throw CoincidentPoints("evaluate_mfs: modified basis is undefined at the origin");
  }
  double value = 0.0;
  for (std::size_t j = 0; j < wts.w.size(); ++j) {
    if (wts.basis == Basis::Modified) {
      value += wts.w[j] * log_ratio(z, wts.src.points[j]);
    } else if (rz > 0.0) {
      value += wts.w[j] * (std::log(rz) + log_ratio(z, wts.src.points[j]));
    } else {
      value += wts.w[j] * std::log(wts.src.radius);
    }
  }
  return value;
}

TrefftzCoefficients to_trefftz(const MfsWeights& wts, std::size_t M, double R0) {
  const auto params = MethodParams::make({wts.src.size(), M}, wts.src.radius, R0);
  const auto y = build_K(params) * std::span<const double>(wts.w);
  return TrefftzCoefficients::from_vector(R0, y);
}

double SolveReport::relative_residual() const {
  const double fn = norm2(boundary_data);
  return fn == 0.0 ? residual_norm : residual_norm / fn;
}

double SolveReport::evaluate_shifted(double r, double theta) const {
  if (const auto* c = std::get_if<TrefftzCoefficients>(&solution)) return evaluate_trefftz(*c, r, theta);
  return evaluate_mfs(std::get<MfsWeights>(solution), {r * std::cos(theta), r * std::sin(theta)});
}

double SolveReport::evaluate(double r, double theta) const { return evaluate_shifted(r, theta) + far_field; }

SolveReport solve_mtm(const BoundaryCurve& curve, const BoundaryData& f, std::size_t N, std::size_t M, double R0,
                      double far_field) {
  TrefftzDims{N, M}.require_square("solve_mtm");
  const auto coll = collocation_points(curve, N);
  SolveReport rep;
  rep.method = MethodKind::MTM;
  rep.curve = curve;
  rep.far_field = far_field;
  rep.boundary_data = f.sample(coll);
  rep.system = build_S(coll, M, R0);
  const auto y = lu_solve(rep.system, rep.boundary_data);
  rep.residual_norm = residual(rep.system, y, rep.boundary_data);
  rep.cond2 = cond2(rep.system);
  rep.solution = TrefftzCoefficients::from_vector(R0, y);
  return rep;
}

SolveReport solve_mfs(const BoundaryCurve& curve, const BoundaryData& f, std::size_t N, double R, Basis basis,
                      double far_field) {
  require_sources_inside(curve, R);
  const auto coll = collocation_points(curve, N);
  auto src = source_points(R, N);
  SolveReport rep;
  rep.method = basis == Basis::Conventional ? MethodKind::CMFS_CBF : MethodKind::CMFS_MBF;
  rep.curve = curve;
  rep.far_field = far_field;
  rep.boundary_data = f.sample(coll);
  rep.system = basis == Basis::Conventional ? build_A(coll, src) : build_A_hat(coll, src);
  auto w = lu_solve(rep.system, rep.boundary_data);
  rep.residual_norm = residual(rep.system, w, rep.boundary_data);
  rep.cond2 = cond2(rep.system);
  rep.solution = MfsWeights{std::move(src), std::move(w), basis};
  return rep;
}

SolveReport solve_mmfs(const BoundaryCurve& curve, const BoundaryData& f, std::size_t N, std::size_t M, double R,
                       double R0, Basis eval_basis, double far_field) {
  TrefftzDims dims{N, M};
  dims.require_square("solve_mmfs");
  require_sources_inside(curve, R);
  const auto coll = collocation_points(curve, N);
  const auto params = MethodParams::make(dims, R, R0, &curve);
  SolveReport rep;
  rep.method = eval_basis == Basis::Conventional ? MethodKind::MMFS_CBF : MethodKind::MMFS_MBF;
  rep.curve = curve;
  rep.far_field = far_field;
  rep.boundary_data = f.sample(coll);
  rep.system = build_SK(coll, params);
  auto w = lu_solve(rep.system, rep.boundary_data);
  rep.residual_norm = residual(rep.system, w, rep.boundary_data);
  rep.cond2 = cond2(rep.system);
  rep.solution = MfsWeights{source_points(R, N), std::move(w), eval_basis};
  return rep;
}

SolveReport solve(MethodKind kind, const SolveRequest& req) {
  // Sample first so that sampled data is shifted too.
  const auto coll = collocation_points(req.curve, req.N);
  auto g = req.data.sample(coll);
  for (double& v : g) v -= req.far_field;
  const BoundaryData shifted(std::move(g));
  switch (kind) {
    case MethodKind::MTM:
      return solve_mtm(req.curve, shifted, req.N, req.M, req.R0_mtm, req.far_field);
    case MethodKind::CMFS_CBF:
      return solve_mfs(req.curve, shifted, req.N, req.R, Basis::Conventional, req.far_field);
    case MethodKind::CMFS_MBF:
      return solve_mfs(req.curve, shifted, req.N, req.R, Basis::Modified, req.far_field);
    case MethodKind::MMFS_CBF:
      return solve_mmfs(req.curve, shifted, req.N, req.M, req.R, req.R0_mmfs, Basis::Conventional, req.far_field);
    case MethodKind::MMFS_MBF:
      return solve_mmfs(req.curve, shifted, req.N, req.M, req.R, req.R0_mmfs, Basis::Modified, req.far_field);
  }
  throw InvalidArgument("unknown method");
}

}  // namespace mmfs
