//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_KRYLOV_HPP
#define CTMG_KRYLOV_HPP

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctmg/blur.hpp"
#include "ctmg/tensor.hpp"

namespace ctmg {

/// Tensor-format Krylov recurrences available as smoothers and baselines.
enum class SmootherKind { bicg, cgs, cr };

std::string_view to_string(SmootherKind kind);
std::optional<SmootherKind> parse_smoother(std::string_view name);

/// Linear, shape-preserving action of the blur operator.
using OperatorAction = std::function<ImageTensor(const ImageTensor&)>;

/// Binds apply_blur as the operator action so solvers never materialize the
/// order-6 tensor.
OperatorAction make_operator_action(const GaussianPsf& psf);

struct SolveControl {
  int max_iters = 1000;
  double rel_tol = 1e-6;  // stop when ||G - T*F||_F / ||G||_F <= rel_tol
  bool record_history = false;

  /// Fixed-iteration-count smoothing: rel_tol 0 so only the count binds.
  static SolveControl fixed_count(int iters, bool record = false) {
    return SolveControl{iters, 0.0, record};
  }
};

struct SolveOutcome {
  ImageTensor solution;
  int iters_done = 0;
  double final_rel_residual = 0.0;        // recomputed from scratch on return
  std::vector<double> residual_history;   // [initial, after iter 1, ...] when recorded
  std::optional<std::string> breakdown;   // set when a recurrence denominator vanished
  int operator_applies = 0;
};

/// Runs the selected recurrence from f0 against the action of T. Stops at
/// rel_tol, max_iters, or breakdown; on breakdown returns the best iterate
/// seen so far instead of raising. The recurrence residual is recomputed
/// from scratch every 25 iterations to curb drift, and once more on return.
///
/// BiCG uses the same action for the transpose product, which is exact for
/// the symmetric operators built from an even PSF; on such systems BiCG
/// reproduces CG. CR assumes a symmetric operator and keeps its residual
/// norms non-increasing.
SolveOutcome smooth(SmootherKind kind, const OperatorAction& apply, const ImageTensor& g,
                    const ImageTensor& f0, const SolveControl& control);

}  // namespace ctmg

#endif  // CTMG_KRYLOV_HPP
