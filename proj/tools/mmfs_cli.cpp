#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mmfs/commands.hpp"
#include "mmfs/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exterior Dirichlet Laplace problems with MFS, modified Trefftz and modified MFS"};
  app.require_subcommand(1);

  std::string config_path;
  mmfs::CommandOptions opts;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "configuration file");
    if (needs_config) c->required();
    sub->add_option("--out", opts.out, "output CSV path (overrides [output] path)");
    sub->add_option("--threads", opts.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  };

  auto* solve = app.add_subcommand("solve", "solve the boundary value problem and write point values");
  add_common(solve, true);
  solve->add_flag("--dump-matrices", opts.dump_matrices, "also write each system matrix as CSV");

  auto* sweep = app.add_subcommand("sweep", "condition-number sweeps");
  add_common(sweep, true);

  auto* verify = app.add_subcommand("verify", "check the closed-form identities");
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : mmfs::kExitConfig;
  }

  if (verify->parsed()) return mmfs::cmd_verify(std::cout);

  mmfs::RunConfig cfg;
  try {
    cfg = mmfs::load_config(config_path);
  } catch (const mmfs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return mmfs::kExitConfig;
  }
  try {
    return solve->parsed() ? mmfs::cmd_solve(cfg, opts, std::cout) : mmfs::cmd_sweep(cfg, opts, std::cout);
  } catch (const mmfs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return mmfs::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mmfs::kExitFailure;
  }
}
