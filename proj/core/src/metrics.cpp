//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ctmg/metrics.hpp"

#include <cmath>
#include <limits>

namespace ctmg {

double relative_error(const ImageTensor& reference, const ImageTensor& candidate) {
  const double rn = fro_norm(reference);
  if (rn == 0.0) throw parameter_error("relative_error: reference has zero norm");
  return fro_norm(subtract(candidate, reference)) / rn;
}

double psnr(const ImageTensor& reference, const ImageTensor& candidate) {
  if (!(reference.dims() == candidate.dims()))
    throw dimension_error("psnr: dims " + to_string(reference.dims()) + " vs " +
                          to_string(candidate.dims()));
  const ImageTensor diff = subtract(candidate, reference);
  const double err2 = inner(diff, diff);
  if (err2 == 0.0) return std::numeric_limits<double>::infinity();
  const double fmax = max_value(reference);
  const double num = static_cast<double>(reference.size()) * fmax * fmax;
  return 10.0 * std::log10(num / err2);
}

QualityScore quality_score(const ImageTensor& reference, const ImageTensor& candidate) {
  QualityScore q;
  q.psnr = psnr(reference, candidate);
  q.re = relative_error(reference, candidate);
  q.f_max = max_value(reference);
  return q;
}

}  // namespace ctmg
