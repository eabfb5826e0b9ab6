//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_METRICS_HPP
#define CTMG_METRICS_HPP

#include "ctmg/tensor.hpp"

namespace ctmg {

struct QualityScore {
  double psnr = 0.0;   // dB; +infinity when the images are identical
  double re = 0.0;     // relative Frobenius error, dimensionless
  double f_max = 0.0;  // peak value of the reference image
};

/// ||candidate - reference||_F / ||reference||_F. The reference must have a
/// nonzero norm.
double relative_error(const ImageTensor& reference, const ImageTensor& candidate);

/// 10 log10(n1 n2 n3 Fmax^2 / ||candidate - reference||_F^2) with Fmax the
/// largest entry of the reference. Identical images give +infinity.
double psnr(const ImageTensor& reference, const ImageTensor& candidate);

QualityScore quality_score(const ImageTensor& reference, const ImageTensor& candidate);

}  // namespace ctmg

#endif  // CTMG_METRICS_HPP
