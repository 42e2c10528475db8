#pragma once

// The five exterior-problem methods (modified Trefftz, conventional MFS with
// conventional / modified basis, modified MFS with conventional / modified
// basis) and point evaluation of their solutions.

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "mmfs/assembly.hpp"
#include "mmfs/geometry.hpp"
#include "mmfs/linalg.hpp"

namespace mmfs {

enum class MethodKind { MTM, CMFS_CBF, CMFS_MBF, MMFS_CBF, MMFS_MBF };

inline constexpr MethodKind kAllMethods[] = {MethodKind::MTM, MethodKind::CMFS_CBF, MethodKind::CMFS_MBF,
                                             MethodKind::MMFS_CBF, MethodKind::MMFS_MBF};

std::string_view to_string(MethodKind kind);
std::optional<MethodKind> parse_method(std::string_view name);

// Conventional: ln|z - zeta|. Modified: ln(|z - zeta| / |z|), decays like 1/r.
enum class Basis { Conventional, Modified };

using BoundaryFunction = std::function<double(double theta)>;

// Dirichlet data either as a closed form in theta or as samples at the N
// collocation angles.
class BoundaryData {
 public:
  BoundaryData(BoundaryFunction f);  // NOLINT(google-explicit-constructor)
  explicit BoundaryData(std::vector<double> samples);

  // Values at the collocation angles; throws DimensionMismatch for a sample
  // vector of the wrong length.
  std::vector<double> sample(const CollocationSet& coll) const;

 private:
  std::variant<BoundaryFunction, std::vector<double>> data_;
};

// theta -> f(theta) - c
BoundaryFunction shift_far_field(BoundaryFunction f, double c);

struct TrefftzCoefficients {
  double R0 = 1.0;
  double a0 = 0.0;
  std::vector<double> a;  // a_1..a_M
  std::vector<double> b;  // b_1..b_M

  std::size_t order() const noexcept { return a.size(); }
  // y = (a0, a1, b1, ..., aM, bM)
  std::vector<double> to_vector() const;
  static TrefftzCoefficients from_vector(double R0, std::span<const double> y);
};

inline constexpr double kSumWeightsFlagRatio = 1e-6;

struct MfsWeights {
  SourceSet src;
  std::vector<double> w;
  Basis basis = Basis::Conventional;

  double sum() const;
  double l1_norm() const;
  // |sum w| > 1e-6 |w|_1: the weights do not satisfy the zero-sum condition
  // that makes the two bases agree far away.
  bool sum_flagged() const;
};

// a0 + sum_k (a_k cos k theta + b_k sin k theta) (R0 / r)^k
double evaluate_trefftz(const TrefftzCoefficients& c, double r, double theta);

// sum_j w_j G_j(z) in the weights' basis. Throws CoincidentPoints when z
// coincides with a source (or, for the modified basis, with the origin).
double evaluate_mfs(const MfsWeights& wts, Point z);

// y = K w: the truncated Trefftz series equivalent of MFS weights on a source circle.
TrefftzCoefficients to_trefftz(const MfsWeights& wts, std::size_t M, double R0);

struct SolveReport {
  MethodKind method = MethodKind::MTM;
  BoundaryCurve curve = BoundaryCurve::circle(1.0);
  std::variant<TrefftzCoefficients, MfsWeights> solution;
  DenseMatrix system;                // the matrix that was solved
  std::vector<double> boundary_data; // right-hand side, after any far-field shift
  double residual_norm = 0.0;        // |system * solution - boundary_data|_2
  double cond2 = 0.0;
  double far_field = 0.0;            // constant c added back on evaluation

  double relative_residual() const;
  // Value of the computed solution of the shifted problem at (r, theta).
  double evaluate_shifted(double r, double theta) const;
  // evaluate_shifted + far_field
  double evaluate(double r, double theta) const;
};

// Sy = g, N = 2M + 1.
SolveReport solve_mtm(const BoundaryCurve& curve, const BoundaryData& f, std::size_t N, std::size_t M, double R0,
                      double far_field = 0.0);

// A w = f (Conventional) or A^ w = f (Modified); R < rho_min.
SolveReport solve_mfs(const BoundaryCurve& curve, const BoundaryData& f, std::size_t N, double R, Basis basis,
                      double far_field = 0.0);

// SK w = f, N = 2M + 1, R < rho_min; the weights are evaluated with `eval_basis`
// as point sums, never through the truncated series.
SolveReport solve_mmfs(const BoundaryCurve& curve, const BoundaryData& f, std::size_t N, std::size_t M, double R,
                       double R0, Basis eval_basis, double far_field = 0.0);

struct SolveRequest {
  BoundaryCurve curve = BoundaryCurve::circle(1.0);
  BoundaryData data = BoundaryData(BoundaryFunction([](double) { return 0.0; }));
  std::size_t N = 0;
  std::size_t M = 0;
  double R = 1.0;
  double R0_mtm = 1.0;   // characteristic length of the modified Trefftz method
  double R0_mmfs = 1.0;  // characteristic length used to build S and K for the modified MFS
  double far_field = 0.0;
};

// Shifts the data by far_field and dispatches to the matching solver.
SolveReport solve(MethodKind kind, const SolveRequest& request);

}  // namespace mmfs
