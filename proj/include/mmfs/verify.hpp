#pragma once

// Closed-form oracle checks for the matrix identities the solvers rely on:
// factorizations of K, S and SK, explicit inverses, determinants, condition
// numbers, the optimal characteristic length and the singular square
// variants. Run by `mmfs verify`.

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmfs/linalg.hpp"

namespace mmfs {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Builders the checks call; replaceable so tests can inject a defect and
// confirm the suite catches it.
struct VerifyHooks {
  std::function<DenseMatrix(std::size_t M, double R, double R0)> build_T_R;
  std::function<DenseMatrix(std::size_t N, std::size_t M)> build_T_theta;

  static VerifyHooks defaults();
};

std::vector<CheckResult> run_verification(const VerifyHooks& hooks = VerifyHooks::defaults());

// Prints one line per check; returns true when all passed.
bool print_verification(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace mmfs
