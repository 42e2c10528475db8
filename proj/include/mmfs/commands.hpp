#pragma once

// The `solve`, `sweep` and `verify` subcommands. Each returns a process exit
// status: 0 success, 1 solve or verification failure, 2 configuration error.

#include <iosfwd>
#include <string>

#include "mmfs/config.hpp"
#include "mmfs/verify.hpp"

namespace mmfs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;

struct CommandOptions {
  std::string out;  // overrides [output] path
  unsigned threads = 1;
  bool dump_matrices = false;
};

// Per-point CSV `method,r,theta,value,exact,error`; when an exact solution is
// known also `<stem>_emax.csv` with `r,error_<method>...` (max over theta).
int cmd_solve(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);

// CondProfile CSV (`param,cond2,reliable` and variants) plus a summary line.
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opts, std::ostream& log);

int cmd_verify(std::ostream& log, const VerifyHooks& hooks = VerifyHooks::defaults());

// "<dir>/<stem><suffix>" next to `path`, e.g. out.csv -> out_emax.csv
std::string sibling_path(const std::string& path, const std::string& suffix);

}  // namespace mmfs
