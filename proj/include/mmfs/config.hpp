#pragma once

// Run configuration for the command-line front end: an INI-style file with
// sections [curve], [method], [data], [evaluation], [sweep] and [output].

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mmfs/analysis.hpp"
#include "mmfs/geometry.hpp"
#include "mmfs/solvers.hpp"

namespace mmfs {

enum class DataKind { ExpInversion, Constant, Fourier };

struct DataSpec {
  DataKind kind = DataKind::ExpInversion;
  double value = 0.0;         // constant
  double a0 = 0.0;            // fourier: a0 + sum a_k cos k t + b_k sin k t
  std::vector<double> cos;    // a_1, a_2, ...
  std::vector<double> sin;    // b_1, b_2, ...

  friend bool operator==(const DataSpec&, const DataSpec&) = default;
};

enum class SweepKind { None, R0, K, AVersusSK, OptimalR0VsN, SkConvergence };

struct SweepSpec {
  SweepKind kind = SweepKind::None;
  double start = 0.005;
  double stop = 15.0;
  double step = 0.005;
  std::vector<std::size_t> N_list;
  std::vector<std::size_t> M_ladder;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

struct RunConfig {
  BoundaryCurve curve = BoundaryCurve::circle(1.0);
  std::optional<MethodKind> method;  // empty: all five
  std::size_t N = 21;
  std::optional<std::size_t> M;      // default (N - 1) / 2
  double R = 0.5;
  std::optional<double> R0;          // modified Trefftz; default rho_min
  std::optional<double> R0_mmfs;     // modified MFS; default R
  DataSpec data;
  double far_field = 0.0;
  bool compare_exact = true;
  std::vector<double> radii{10.0};
  std::size_t theta_samples = kDefaultThetaSamples;
  std::size_t points_per_circle = 16;
  SweepSpec sweep;
  std::string output;

  std::size_t order() const { return M.value_or((N - 1) / 2); }
  double r0_mtm() const;
  double r0_mmfs() const { return R0_mmfs.value_or(R); }
  bool uses_trefftz() const;  // MTM or MMFS involved
  bool uses_sources() const;  // any MFS variant involved

  // Solve-time invariants: N odd with N = 2M + 1 when S or K is involved,
  // R < rho_min for MFS runs. Throws ConfigError naming the field.
  void validate_for_solve() const;
  void validate_for_sweep() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError; parse errors carry the line number.
RunConfig parse_config(std::istream& in, const std::string& source_name = "<config>");
RunConfig parse_config_string(const std::string& text);
RunConfig load_config(const std::string& path);

// Writes a config that parse_config reads back to an equal RunConfig.
std::string serialize_config(const RunConfig& cfg);

BoundaryData make_boundary_data(const RunConfig& cfg);
// Exact exterior solution matching the data, when one is known.
std::optional<ExactSolution> make_exact_solution(const RunConfig& cfg);

}  // namespace mmfs
