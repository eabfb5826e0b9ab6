//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_TOOLS_ORACLE_SUITE_HPP
#define CTMG_TOOLS_ORACLE_SUITE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ctmg::cli {

struct OracleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Cross-module consistency checks at small shapes: dense Einstein product
/// against the convolution path, the unfolding homomorphism, direct-solve
/// residuals, prolongation stencil exactness, and schedule arithmetic.
/// `kernel_perturbation` is a debug hook that perturbs the truncated kernel
/// used by the equivalence check; any nonzero value must make it fail.
std::vector<OracleCheck> run_oracle_checks(double kernel_perturbation = 0.0);

/// Prints one line per check; returns the number of failures.
int report_oracle_checks(const std::vector<OracleCheck>& checks, std::ostream& os);

}  // namespace ctmg::cli

#endif  // CTMG_TOOLS_ORACLE_SUITE_HPP
