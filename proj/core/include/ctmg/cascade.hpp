//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_CASCADE_HPP
#define CTMG_CASCADE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ctmg/blur.hpp"
#include "ctmg/krylov.hpp"
#include "ctmg/metrics.hpp"
#include "ctmg/tensor.hpp"

namespace ctmg {

// ---------------------------------------------------------------------------
// Iteration schedules
// ---------------------------------------------------------------------------

/// Per-level smoothing counts. Level 1 is the coarsest (solved directly);
/// counts are defined for levels 2..L.
///
/// classic:   m_l = ceil(m_star * l^2)
/// economic:  m_l = ceil(m0 * (L - L0)^2 * beta^(L-l))            for l > L0
///            m_l = ceil(c * (L - (2 - eps0) * l) * h_l^-2)       for l <= L0
/// with L0 = L/2 (kept real, no rounding), h_l = (1/2)^(l-1), and every count
/// clamped to the smallest positive integer not less than the formula value.
/// `coarse_multiplier` c defaults to 1 (the published constants make the two
/// printed variants of the coarse-regime prefactor coincide at 1).
struct IterationSchedule {
  enum class Kind { classic, economic };

  Kind kind = Kind::classic;
  int m_star = 1;
  int m0 = 1;
  double beta = 4.0;
  double eps0 = 0.5;
  double level_split = 0.0;        // L0 override; <= 0 means L/2
  double coarse_multiplier = 1.0;

  static IterationSchedule classic(int m_star = 1);
  static IterationSchedule economic(int m0 = 1, double beta = 4.0, double eps0 = 0.5);

  /// Smoothing count for `level` in [2, total_levels].
  int counts(int level, int total_levels) const;

  /// Counts for levels 2..total_levels, in level order.
  std::vector<int> counts_all(int total_levels) const;
};

/// Cost of one cascade under the operator-application work model: each
/// smoothing iteration at level l costs the number of unknowns at that
/// level. `finest` is the level-L shape.
double schedule_work(const IterationSchedule& sched, int total_levels, Dims3 finest);

// ---------------------------------------------------------------------------
// Grid transfer
// ---------------------------------------------------------------------------

/// Per-channel 2x2 block average; spatial dims must be even.
ImageTensor restrict_half(const ImageTensor& x);

/// Coarse-to-fine hierarchy of the data tensor. Level 1 is the coarsest.
/// The finest level carries the exact PSF; each coarser level carries its
/// Galerkin coarsening (coarsen_psf), so every coarse system stays
/// consistent with its block-averaged data.
struct GridHierarchy {
  int levels = 0;
  std::vector<GaussianPsf> psfs;  // psfs[l-1] belongs to level l
  std::vector<ImageTensor> data;  // data[l-1] holds level l

  Dims3 dims_at(int level) const { return data.at(static_cast<std::size_t>(level - 1)).dims(); }
  const ImageTensor& data_at(int level) const { return data.at(static_cast<std::size_t>(level - 1)); }
  const GaussianPsf& psf_at(int level) const { return psfs.at(static_cast<std::size_t>(level - 1)); }
};

GridHierarchy build_hierarchy(const ImageTensor& g, double sigma, int levels,
                              int psf_radius = 0,  // 0 -> default_psf_radius(sigma)
                              index_t coarse_cap = kDefaultOperatorCap);

/// Doubles the spatial dims by quadratic interpolation of a single coarse
/// level: coinciding nodes are injected, the remaining quarter-offset nodes
/// use the one-dimensional {3/8, 3/4, -1/8} stencils (columns first, then
/// rows). Exact for constants, ramps and quadratics away from the clamped
/// boundary.
ImageTensor prolong_first(const ImageTensor& coarse);

/// Two-level quadratic prolongation: `coarse` is the level l-1 solution,
/// `coarser` the level l-2 solution at half its spatial resolution. Fine
/// nodes on level l-2 grid lines use the extrapolation-corrected stencils
///   f( +1/4) = [ (9 f1(0) + 12 f1(1/2) - f1(1)) - (3 f2(0) + f2(1)) ] / 16
///   f(+3/4) = [ (9 f1(1) + 12 f1(1/2) - f1(0)) - (3 f2(1) + f2(0)) ] / 16
/// along both axes; all remaining quarter nodes fall back to the
/// one-dimensional stencils on already-computed values (columns first, then
/// rows). Stencil indices beyond the grid are clamped (replicate boundary).
ImageTensor prolong_quadratic(const ImageTensor& coarse, const ImageTensor& coarser);

// ---------------------------------------------------------------------------
// Preserving-edge denoising (Perona-Malik)
// ---------------------------------------------------------------------------

/// Edge-stopping function g(s) = 1 / (1 + (s/k)^2).
double pm_diffusion_coefficient(double gradient, double k);

struct PmParams {
  double tau = 0.25;                        // explicit step; stability needs tau <= 1/4
  std::optional<double> k_threshold;        // fixed threshold; empty -> auto per channel
  int iters = 10;
  double k_auto_scale = 0.1;                // auto k = scale * max |one-sided difference|
};

/// `iters` explicit 4-neighbour Perona-Malik steps per channel with
/// replicate boundary. With the auto threshold, k is computed once per call
/// (per channel) from the input; a constant channel is returned unchanged.
ImageTensor pm_denoise(const ImageTensor& x, const PmParams& params);

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

struct LevelStats {
  int level = 0;
  Dims3 dims;
  int iterations = 0;  // smoothing count; 0 for the direct coarsest solve
  double rel_residual = 0.0;
  int operator_applies = 0;
  double seconds = 0.0;
  std::optional<std::string> breakdown;
};

struct RestorationReport {
  ImageTensor restored;
  std::string method;  // "baseline" | "ctmg" | "ectmg"
  SmootherKind smoother = SmootherKind::cr;
  double sigma = 0.0;
  int levels = 0;
  IterationSchedule schedule;
  PmParams pm;
  std::vector<LevelStats> level_stats;
  // residual_histories[l-1] is the recorded history at level l (empty for
  // the direct solve and when recording is off).
  std::vector<std::vector<double>> residual_histories;
  double wall_seconds = 0.0;
  std::optional<QualityScore> quality;  // filled by callers holding a reference

  /// Semicolon-joined per-level iteration counts (levels 2..L for cascades,
  /// the single solve for baselines), as used in benchmark CSV rows.
  std::string iters_per_level() const;
};

struct CascadeOptions {
  bool record_history = false;
  int psf_radius = 0;  // 0 -> default_psf_radius(sigma)
  index_t coarse_cap = kDefaultOperatorCap;
};

/// Cascadic tensor multigrid: direct solve on level 1, then per level
/// prolong (two most recent coarse solutions), denoise, and smooth with the
/// fixed per-level count from the classic schedule.
RestorationReport ctmg_restore(const ImageTensor& g, double sigma, int levels, SmootherKind smoother,
                       const PmParams& pm = {},
                       const IterationSchedule& schedule = IterationSchedule::classic(),
                       const CascadeOptions& opts = {});

/// Same driver with the economic two-regime schedule.
RestorationReport ectmg_restore(const ImageTensor& g, double sigma, int levels, SmootherKind smoother,
                        const PmParams& pm = {},
                        const IterationSchedule& schedule = IterationSchedule::economic(),
                        const CascadeOptions& opts = {});

/// Single-level Krylov solve on the finest grid from F0 = G; the BTF
/// baseline the cascades are compared against.
RestorationReport baseline_restore(const ImageTensor& g, double sigma, SmootherKind smoother,
                                   const SolveControl& control, const CascadeOptions& opts = {});

}  // namespace ctmg

#endif  // CTMG_CASCADE_HPP
