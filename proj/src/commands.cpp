#include "mmfs/commands.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>

#include "mmfs/analysis.hpp"
#include "mmfs/csv.hpp"
#include "mmfs/error.hpp"

namespace mmfs {

namespace {

std::string output_path(const RunConfig& cfg, const CommandOptions& opts) {
  if (!opts.out.empty()) return opts.out;
  if (!cfg.output.empty()) return cfg.output;
  throw ConfigError("output.path", "no output path (use --out or [output] path)");
}

std::vector<MethodKind> selected_methods(const RunConfig& cfg) {
  if (cfg.method) return {*cfg.method};
  return {std::begin(kAllMethods), std::end(kAllMethods)};
}

void write_profile(CsvWriter& w, const CondProfile& p) {
  w.header({p.parameter, "cond2", "reliable"});
  for (std::size_t i = 0; i < p.grid.size(); ++i) w.field(p.grid[i]).field(p.conds[i]).field(bool(p.reliable[i])).end_row();
}

std::string argmin_text(const CondProfile& p, int digits = 3) {
  if (!p.argmin) return "no reliable point";
  char buf[96];
  std::snprintf(buf, sizeof buf, "min %.*f at %s=%.*f", digits, p.argmin->second, p.parameter.c_str(), digits,
                p.argmin->first);
  return buf;
}

}  // namespace

std::string sibling_path(const std::string& path, const std::string& suffix) {
  const std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + suffix)).string();
}

int cmd_solve(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
  std::string path;
  try {
    cfg.validate_for_solve();
    path = output_path(cfg, opts);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  SolveRequest req;
  req.curve = cfg.curve;
  req.data = make_boundary_data(cfg);
  req.N = cfg.N;
  req.M = cfg.order();
  req.R = cfg.R;
  req.R0_mtm = cfg.r0_mtm();
  req.R0_mmfs = cfg.r0_mmfs();
  req.far_field = cfg.far_field;
  const auto exact = make_exact_solution(cfg);
  const auto methods = selected_methods(cfg);

  std::vector<SolveReport> reports;
  for (MethodKind m : methods) {
    try {
      reports.push_back(solve(m, req));
    } catch (const Error& e) {
      log << to_string(m) << ": " << e.what() << '\n';
      return kExitFailure;
    }
    const auto& r = reports.back();
    log << to_string(m) << ": cond2 " << format_double(r.cond2) << (cond_reliable(r.cond2) ? "" : " (unreliable)")
        << ", relative residual " << format_double(r.relative_residual());
    if (const auto* w = std::get_if<MfsWeights>(&r.solution)) {
      log << ", sum w " << format_double(w->sum()) << (w->sum_flagged() ? " (nonzero)" : "");
    } else {
      log << ", a0 " << format_double(std::get<TrefftzCoefficients>(r.solution).a0);
    }
    log << '\n';
    if (opts.dump_matrices) write_matrix_csv(sibling_path(path, "_" + std::string(to_string(m)) + "_system.csv"), r.system);
  }

  try {
    CsvWriter w(path);
    w.header({"method", "r", "theta", "value", "exact", "error"});
    const auto thetas = angle_grid(cfg.points_per_circle);
    for (const auto& rep : reports) {
      for (double r : cfg.radii) {
        for (double t : thetas) {
          const double rb = rho(cfg.curve, t);
          if (r < rb) continue;  // inside the obstacle along this ray
          w.field(to_string(rep.method)).field(r).field(t).field(rep.evaluate(r, t));
          if (exact) {
            w.field(exact->value(r * std::cos(t), r * std::sin(t))).field(error_pointwise(rep, *exact, r, t));
          } else {
            w.field(std::nan("")).field(std::nan(""));
          }
          w.end_row();
        }
      }
    }

    if (exact) {
      const auto emax_path = sibling_path(path, "_emax.csv");
      CsvWriter e(emax_path);
      std::vector<std::string> head{"r"};
      for (const auto& rep : reports) head.push_back("error_" + std::string(to_string(rep.method)));
      e.header(head);
      std::vector<std::vector<double>> errs(reports.size());
      parallel_for(reports.size(), opts.threads, [&](std::size_t i) {
        std::vector<double> ok_radii;
        for (double r : cfg.radii) {
          double m = 0.0;
          for (double t : angle_grid(cfg.theta_samples)) {
            if (r < rho(cfg.curve, t)) {
              m = std::nan("");
              break;
            }
            m = std::max(m, error_pointwise(reports[i], *exact, r, t));
          }
          errs[i].push_back(m);
        }
      });
      for (std::size_t k = 0; k < cfg.radii.size(); ++k) {
        e.field(cfg.radii[k]);
        for (const auto& col : errs) e.field(col[k]);
        e.end_row();
      }
      log << "wrote " << path << " and " << emax_path << '\n';
    } else {
      log << "wrote " << path << '\n';
    }
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log) {
  std::string path;
  try {
    cfg.validate_for_sweep();
    path = output_path(cfg, opts);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  const SweepOptions so{opts.threads};
  const auto& s = cfg.sweep;
  try {
    CsvWriter w(path);
    switch (s.kind) {
      case SweepKind::R0: {
        const auto p = cond_sweep_S(cfg.curve, cfg.N, cfg.order(), uniform_grid(s.start, s.stop, s.step), so);
        write_profile(w, p);
        log << argmin_text(p) << '\n';
        break;
      }
      case SweepKind::K: {
        const auto c = cond_K_comparison(cfg.N, uniform_grid(s.start, s.stop, s.step), so);
        w.header({"R", "cond2_K1", "reliable_K1", "cond2_K2", "reliable_K2"});
        double k2_lo = INFINITY, k2_hi = 0.0;
        for (std::size_t i = 0; i < c.k1.grid.size(); ++i) {
          w.field(c.k1.grid[i]).field(c.k1.conds[i]).field(bool(c.k1.reliable[i]));
          w.field(c.k2.conds[i]).field(bool(c.k2.reliable[i])).end_row();
          k2_lo = std::min(k2_lo, c.k2.conds[i]);
          k2_hi = std::max(k2_hi, c.k2.conds[i]);
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "K1: %s; K2: constant %.4f (spread %.2e)", argmin_text(c.k1, 3).c_str(), k2_lo,
                      k2_hi - k2_lo);
        log << buf << '\n';
        break;
      }
      case SweepKind::AVersusSK: {
        const auto c = cond_A_vs_SK(cfg.curve, cfg.R, s.N_list, so);
        w.header({"N", "cond2_A", "reliable_A", "cond2_SK", "reliable_SK"});
        for (std::size_t i = 0; i < c.a.grid.size(); ++i) {
          w.field(c.a.grid[i]).field(c.a.conds[i]).field(bool(c.a.reliable[i]));
          w.field(c.sk.conds[i]).field(bool(c.sk.reliable[i])).end_row();
        }
        const auto fa = growth_fit(c.a.grid, c.a.conds);
        const auto fs = growth_fit(c.sk.grid, c.sk.conds);
        char buf[160];
        std::snprintf(buf, sizeof buf, "cond2(A) ~ %.3f x %.3f^N; cond2(SK) ~ %.3f x %.3f^N", fa.amplitude, fa.base,
                      fs.amplitude, fs.base);
        log << buf << '\n';
        break;
      }
      case SweepKind::OptimalR0VsN: {
        const auto pts = optimal_R0_vs_N(cfg.curve, s.N_list, uniform_grid(s.start, s.stop, s.step), so);
        w.header({"N", "R0_opt", "cond2"});
        for (const auto& p : pts) w.field(p.N).field(p.R0).field(p.cond).end_row();
        log << "optimal R0 for " << pts.size() << " values of N\n";
        break;
      }
      case SweepKind::SkConvergence: {
        const auto gaps = sk_convergence(cfg.curve, cfg.N, cfg.R, cfg.R0.value_or(cfg.R), s.M_ladder);
        w.header({"M", "gap_max", "gap_zero_sum"});
        for (const auto& g : gaps) w.field(g.M).field(g.gap).field(g.gap_zero_sum).end_row();
        log << "|A - SK|_max at M = " << gaps.back().M << ": " << format_double(gaps.back().gap)
            << " (on sum(w) = 0: " << format_double(gaps.back().gap_zero_sum) << ")\n";
        break;
      }
      case SweepKind::None:
        break;
    }
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  log << "wrote " << path << '\n';
  return kExitOk;
}

int cmd_verify(std::ostream& log, const VerifyHooks& hooks) {
  return print_verification(run_verification(hooks), log) ? kExitOk : kExitFailure;
}

}  // namespace mmfs
