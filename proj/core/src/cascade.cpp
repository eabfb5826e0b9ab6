//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ctmg/cascade.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <utility>

namespace ctmg {

namespace {

double int_pow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Smallest positive integer not less than t.
int positive_ceil(double t) {
  const double c = std::ceil(t);
  return c < 1.0 ? 1 : static_cast<int>(c);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

// ---------------------------------------------------------------------------
// Iteration schedules
// ---------------------------------------------------------------------------

IterationSchedule IterationSchedule::classic(int m_star) {
  IterationSchedule s;
  s.kind = Kind::classic;
  s.m_star = m_star;
  return s;
}

IterationSchedule IterationSchedule::economic(int m0, double beta, double eps0) {
  IterationSchedule s;
  s.kind = Kind::economic;
  s.m0 = m0;
  s.beta = beta;
  s.eps0 = eps0;
  return s;
}

int IterationSchedule::counts(int level, int total_levels) const {
  if (total_levels < 2) throw parameter_error("IterationSchedule: need at least 2 levels");
  if (level < 2 || level > total_levels)
    throw parameter_error("IterationSchedule: level " + std::to_string(level) + " outside [2, " +
                          std::to_string(total_levels) + "]");
  if (kind == Kind::classic) {
    if (m_star < 1) throw parameter_error("IterationSchedule: m_star must be >= 1");
    return positive_ceil(static_cast<double>(m_star) * level * level);
  }
  if (m0 < 1) throw parameter_error("IterationSchedule: m0 must be >= 1");
  if (!(beta > 0.0)) throw parameter_error("IterationSchedule: beta must be positive");
  const double l0 = level_split > 0.0 ? level_split : 0.5 * total_levels;
  if (level > l0) {
    const double span = total_levels - l0;
    return positive_ceil(m0 * span * span * int_pow(beta, total_levels - level));
  }
  const double h_inv_sq = int_pow(4.0, level - 1);  // h_l = (1/2)^(l-1)
  return positive_ceil(coarse_multiplier * (total_levels - (2.0 - eps0) * level) * h_inv_sq);
}

std::vector<int> IterationSchedule::counts_all(int total_levels) const {
  std::vector<int> out;
  for (int l = 2; l <= total_levels; ++l) out.push_back(counts(l, total_levels));
  return out;
}

double schedule_work(const IterationSchedule& sched, int total_levels, Dims3 finest) {
  double work = 0.0;
  for (int l = 2; l <= total_levels; ++l) {
    const int shift = total_levels - l;
    const double unknowns = (static_cast<double>(finest.n1) / (1 << shift)) *
                            (static_cast<double>(finest.n2) / (1 << shift)) * finest.n3;
    work += sched.counts(l, total_levels) * unknowns;
  }
  return work;
}

// ---------------------------------------------------------------------------
// Grid transfer
// ---------------------------------------------------------------------------

ImageTensor restrict_half(const ImageTensor& x) {
  const Dims3 d = x.dims();
  if (d.n1 % 2 != 0 || d.n2 % 2 != 0)
    throw dimension_error("restrict_half: spatial dims must be even, got " + to_string(d));
  ImageTensor y({d.n1 / 2, d.n2 / 2, d.n3});
  for (int i = 0; i < d.n1 / 2; ++i)
    for (int j = 0; j < d.n2 / 2; ++j)
      for (int k = 0; k < d.n3; ++k)
        y(i, j, k) = 0.25 * (x(2 * i, 2 * j, k) + x(2 * i + 1, 2 * j, k) + x(2 * i, 2 * j + 1, k) +
                             x(2 * i + 1, 2 * j + 1, k));
  return y;
}

GridHierarchy build_hierarchy(const ImageTensor& g, double sigma, int levels, int psf_radius,
                              index_t coarse_cap) {
  if (levels < 2) throw parameter_error("build_hierarchy: need at least 2 levels");
  if (levels > 30) throw parameter_error("build_hierarchy: implausible level count");
  const Dims3 d = g.dims();
  const int factor = 1 << (levels - 1);
  if (d.n1 % factor != 0 || d.n2 % factor != 0)
    throw dimension_error("build_hierarchy: dims " + to_string(d) + " not divisible by 2^" +
                          std::to_string(levels - 1));
  const index_t coarsest = (static_cast<index_t>(d.n1) / factor) * (d.n2 / factor) * d.n3;
  if (coarsest > coarse_cap)
    throw parameter_error("build_hierarchy: coarsest level has " + std::to_string(coarsest) +
                          " unknowns, above the dense cap " + std::to_string(coarse_cap) +
                          "; increase the level count");

  GridHierarchy h;
  h.levels = levels;
  h.data.resize(static_cast<std::size_t>(levels));
  h.psfs.resize(static_cast<std::size_t>(levels));
  h.data[static_cast<std::size_t>(levels - 1)] = g;
  h.psfs[static_cast<std::size_t>(levels - 1)] =
      psf_radius > 0 ? gaussian_psf(sigma, psf_radius) : gaussian_psf(sigma);
  for (int l = levels - 1; l >= 1; --l) {
    h.data[static_cast<std::size_t>(l - 1)] = restrict_half(h.data[static_cast<std::size_t>(l)]);
    h.psfs[static_cast<std::size_t>(l - 1)] = coarsen_psf(h.psfs[static_cast<std::size_t>(l)]);
  }
  return h;
}

namespace {

// 1D quadratic interpolation through samples at 0, 1/2, 1 evaluated at the
// quarter points.
inline double quarter(double f0, double fh, double f1) {
  return 0.375 * f0 + 0.75 * fh - 0.125 * f1;
}
inline double three_quarter(double f0, double fh, double f1) {
  return -0.125 * f0 + 0.75 * fh + 0.375 * f1;
}

// Extrapolation-corrected quarter-point stencils combining the level l-1
// samples (c0, ch, c1 at 0, 1/2, 1) with the level l-2 samples (q0, q1 at
// 0, 1).
inline double quarter2(double c0, double ch, double c1, double q0, double q1) {
  return (9.0 * c0 + 12.0 * ch - c1 - 3.0 * q0 - q1) / 16.0;
}

}  // namespace

ImageTensor prolong_first(const ImageTensor& coarse) {
  const Dims3 cd = coarse.dims();
  const Dims3 fd{2 * cd.n1, 2 * cd.n2, cd.n3};
  ImageTensor fine(fd);
  const int last_even_row = fd.n1 - 2;
  const int last_even_col = fd.n2 - 2;

  for (int k = 0; k < fd.n3; ++k) {
    // inject coinciding nodes
    for (int p = 0; p < cd.n1; ++p)
      for (int q = 0; q < cd.n2; ++q) fine(2 * p, 2 * q, k) = coarse(p, q, k);

    // vertical quarter interpolation on every even column
    for (int b = 0; b < fd.n2; b += 2) {
      for (int a = 1; a < fd.n1; a += 4) {
        const int r4 = a - 1;
        const double e0 = fine(r4, b, k);
        const double e1 = fine(std::min(r4 + 2, last_even_row), b, k);
        const double e2 = fine(std::min(r4 + 4, last_even_row), b, k);
        fine(a, b, k) = quarter(e0, e1, e2);
        if (a + 2 < fd.n1) fine(a + 2, b, k) = three_quarter(e0, e1, e2);
      }
    }

    // horizontal quarter interpolation on every row
    for (int a = 0; a < fd.n1; ++a) {
      for (int b = 1; b < fd.n2; b += 4) {
        const int c4 = b - 1;
        const double u0 = fine(a, c4, k);
        const double u1 = fine(a, std::min(c4 + 2, last_even_col), k);
        const double u2 = fine(a, std::min(c4 + 4, last_even_col), k);
        fine(a, b, k) = quarter(u0, u1, u2);
        if (b + 2 < fd.n2) fine(a, b + 2, k) = three_quarter(u0, u1, u2);
      }
    }
  }
  return fine;
}

ImageTensor prolong_quadratic(const ImageTensor& coarse, const ImageTensor& coarser) {
  const Dims3 cd = coarse.dims();
  const Dims3 qd = coarser.dims();
  if (cd.n3 != qd.n3 || cd.n1 != 2 * qd.n1 || cd.n2 != 2 * qd.n2)
    throw dimension_error("prolong_quadratic: coarse dims " + to_string(cd) +
                          " are not twice coarser dims " + to_string(qd));

  const Dims3 fd{2 * cd.n1, 2 * cd.n2, cd.n3};
  ImageTensor fine(fd);
  const int last_even_row = fd.n1 - 2;
  const int last_even_col = fd.n2 - 2;

  for (int k = 0; k < fd.n3; ++k) {
    // (a) inject nodes coinciding with level l-1 nodes
    for (int p = 0; p < cd.n1; ++p)
      for (int q = 0; q < cd.n2; ++q) fine(2 * p, 2 * q, k) = coarse(p, q, k);

    // (b) two-level row stencils on level l-2 grid rows (fine rows 4r)
    for (int r = 0; 4 * r < fd.n1; ++r) {
      const int a = 4 * r;
      for (int s = 0; 4 * s + 1 < fd.n2; ++s) {
        const double c0 = coarse(2 * r, 2 * s, k);
        const double ch = coarse(2 * r, 2 * s + 1, k);
        const double c1 = coarse(2 * r, std::min(2 * s + 2, cd.n2 - 1), k);
        const double q0 = coarser(r, s, k);
        const double q1 = coarser(r, std::min(s + 1, qd.n2 - 1), k);
        fine(a, 4 * s + 1, k) = quarter2(c0, ch, c1, q0, q1);
        if (4 * s + 3 < fd.n2) fine(a, 4 * s + 3, k) = quarter2(c1, ch, c0, q1, q0);
      }
    }

    // (b) two-level column stencils on level l-2 grid columns (fine cols 4s)
    for (int s = 0; 4 * s < fd.n2; ++s) {
      const int b = 4 * s;
      for (int r = 0; 4 * r + 1 < fd.n1; ++r) {
        const double c0 = coarse(2 * r, 2 * s, k);
        const double ch = coarse(2 * r + 1, 2 * s, k);
        const double c1 = coarse(std::min(2 * r + 2, cd.n1 - 1), 2 * s, k);
        const double q0 = coarser(r, s, k);
        const double q1 = coarser(std::min(r + 1, qd.n1 - 1), s, k);
        fine(4 * r + 1, b, k) = quarter2(c0, ch, c1, q0, q1);
        if (4 * r + 3 < fd.n1) fine(4 * r + 3, b, k) = quarter2(c1, ch, c0, q1, q0);
      }
    }

    // (c) vertical quarter interpolation on the remaining even columns
    for (int b = 2; b < fd.n2; b += 4) {
      for (int a = 1; a < fd.n1; a += 4) {
        const int r4 = a - 1;
        const double e0 = fine(r4, b, k);
        const double e1 = fine(std::min(r4 + 2, last_even_row), b, k);
        const double e2 = fine(std::min(r4 + 4, last_even_row), b, k);
        fine(a, b, k) = quarter(e0, e1, e2);
        if (a + 2 < fd.n1) fine(a + 2, b, k) = three_quarter(e0, e1, e2);
      }
    }

    // (c) horizontal quarter interpolation on rows off the l-2 grid
    for (int a = 0; a < fd.n1; ++a) {
      if (a % 4 == 0) continue;
      for (int b = 1; b < fd.n2; b += 4) {
        const int c4 = b - 1;
        const double u0 = fine(a, c4, k);
        const double u1 = fine(a, std::min(c4 + 2, last_even_col), k);
        const double u2 = fine(a, std::min(c4 + 4, last_even_col), k);
        fine(a, b, k) = quarter(u0, u1, u2);
        if (b + 2 < fd.n2) fine(a, b + 2, k) = three_quarter(u0, u1, u2);
      }
    }
  }
  return fine;
}

// ---------------------------------------------------------------------------
// Preserving-edge denoising
// ---------------------------------------------------------------------------

double pm_diffusion_coefficient(double gradient, double k) {
  const double t = gradient / k;
  return 1.0 / (1.0 + t * t);
}

ImageTensor pm_denoise(const ImageTensor& x, const PmParams& params) {
  if (!(params.tau > 0.0) || params.tau > 0.25)
    throw parameter_error("pm_denoise: tau must lie in (0, 1/4]");
  if (params.iters < 0) throw parameter_error("pm_denoise: iters must be >= 0");
  if (params.k_threshold && !(*params.k_threshold > 0.0))
    throw parameter_error("pm_denoise: k_threshold must be positive");
  if (!(params.k_auto_scale > 0.0)) throw parameter_error("pm_denoise: k_auto_scale must be positive");

  const Dims3 d = x.dims();
  ImageTensor out = x;
  if (params.iters == 0) return out;

  const int n1 = d.n1, n2 = d.n2;
  std::vector<double> cur(static_cast<std::size_t>(n1) * n2);
  std::vector<double> next(cur.size());

  for (int ch = 0; ch < d.n3; ++ch) {
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) cur[static_cast<std::size_t>(i) * n2 + j] = x(i, j, ch);

    double k = 0.0;
    if (params.k_threshold) {
      k = *params.k_threshold;
    } else {
      // auto threshold: fraction of the largest one-sided difference
      double max_grad = 0.0;
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          const double u = cur[static_cast<std::size_t>(i) * n2 + j];
          if (i + 1 < n1)
            max_grad = std::max(max_grad, std::abs(cur[static_cast<std::size_t>(i + 1) * n2 + j] - u));
          if (j + 1 < n2)
            max_grad = std::max(max_grad, std::abs(cur[static_cast<std::size_t>(i) * n2 + j + 1] - u));
        }
      if (max_grad == 0.0) continue;  // constant channel is a fixed point
      k = params.k_auto_scale * max_grad;
    }

    for (int step = 0; step < params.iters; ++step) {
      for (int i = 0; i < n1; ++i) {
        for (int j = 0; j < n2; ++j) {
          const std::size_t at = static_cast<std::size_t>(i) * n2 + j;
          const double u = cur[at];
          const double dn = (i > 0) ? cur[at - static_cast<std::size_t>(n2)] - u : 0.0;
          const double ds = (i + 1 < n1) ? cur[at + static_cast<std::size_t>(n2)] - u : 0.0;
          const double dw = (j > 0) ? cur[at - 1] - u : 0.0;
          const double de = (j + 1 < n2) ? cur[at + 1] - u : 0.0;
          const double flux = pm_diffusion_coefficient(std::abs(dn), k) * dn +
                              pm_diffusion_coefficient(std::abs(ds), k) * ds +
                              pm_diffusion_coefficient(std::abs(dw), k) * dw +
                              pm_diffusion_coefficient(std::abs(de), k) * de;
          next[at] = u + params.tau * flux;
        }
      }
      std::swap(cur, next);
    }

    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) out(i, j, ch) = cur[static_cast<std::size_t>(i) * n2 + j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------------

std::string RestorationReport::iters_per_level() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& ls : level_stats) {
    if (level_stats.size() > 1 && ls.level == 1) continue;
    if (!first) os << ";";
    os << ls.iterations;
    first = false;
  }
  return os.str();
}

namespace {

RestorationReport run_cascade(const ImageTensor& g, double sigma, int levels,
                              SmootherKind smoother, const PmParams& pm,
                              const IterationSchedule& schedule, const CascadeOptions& opts,
                              const std::string& method) {
  const auto t_start = Clock::now();
  RestorationReport report;
  report.method = method;
  report.smoother = smoother;
  report.sigma = sigma;
  report.levels = levels;
  report.schedule = schedule;
  report.pm = pm;
  report.residual_histories.resize(static_cast<std::size_t>(levels));

  const GridHierarchy h = build_hierarchy(g, sigma, levels, opts.psf_radius, opts.coarse_cap);

  // level 1: exact solve of the unfolded coarsest system
  auto t_level = Clock::now();
  const Operator6 t1 = build_toeplitz_from_kernel(h.psf_at(1), h.dims_at(1), opts.coarse_cap);
  ImageTensor f_prev = direct_solve(t1, h.data_at(1));
  {
    const double gn = fro_norm(h.data_at(1));
    LevelStats ls;
    ls.level = 1;
    ls.dims = h.dims_at(1);
    ls.rel_residual =
        fro_norm(subtract(einstein_product(t1, f_prev), h.data_at(1))) / (gn > 0 ? gn : 1.0);
    ls.seconds = seconds_since(t_level);
    report.level_stats.push_back(std::move(ls));
  }

  ImageTensor f_prev_prev;
  for (int l = 2; l <= levels; ++l) {
    t_level = Clock::now();
    ImageTensor guess =
        (l == 2) ? prolong_first(f_prev) : prolong_quadratic(f_prev, f_prev_prev);
    guess = pm_denoise(guess, pm);

    const int m = schedule.counts(l, levels);
    SolveOutcome sm = smooth(smoother, make_operator_action(h.psf_at(l)), h.data_at(l), guess,
                             SolveControl::fixed_count(m, opts.record_history));

    LevelStats ls;
    ls.level = l;
    ls.dims = h.dims_at(l);
    ls.iterations = sm.iters_done;
    ls.rel_residual = sm.final_rel_residual;
    ls.operator_applies = sm.operator_applies;
    ls.seconds = seconds_since(t_level);
    ls.breakdown = sm.breakdown;
    report.level_stats.push_back(std::move(ls));
    report.residual_histories[static_cast<std::size_t>(l - 1)] = std::move(sm.residual_history);

    f_prev_prev = std::move(f_prev);
    f_prev = std::move(sm.solution);
  }

  report.restored = std::move(f_prev);
  report.wall_seconds = seconds_since(t_start);
  return report;
}

}  // namespace

RestorationReport ctmg_restore(const ImageTensor& g, double sigma, int levels, SmootherKind smoother,
                       const PmParams& pm, const IterationSchedule& schedule,
                       const CascadeOptions& opts) {
  if (schedule.kind != IterationSchedule::Kind::classic)
    throw parameter_error("ctmg: schedule kind must be classic");
  return run_cascade(g, sigma, levels, smoother, pm, schedule, opts, "ctmg");
}

RestorationReport ectmg_restore(const ImageTensor& g, double sigma, int levels, SmootherKind smoother,
                        const PmParams& pm, const IterationSchedule& schedule,
                        const CascadeOptions& opts) {
  if (schedule.kind != IterationSchedule::Kind::economic)
    throw parameter_error("ectmg: schedule kind must be economic");
  return run_cascade(g, sigma, levels, smoother, pm, schedule, opts, "ectmg");
}

RestorationReport baseline_restore(const ImageTensor& g, double sigma, SmootherKind smoother,
                                   const SolveControl& control, const CascadeOptions& opts) {
  const auto t_start = Clock::now();
  RestorationReport report;
  report.method = "baseline";
  report.smoother = smoother;
  report.sigma = sigma;
  report.levels = 1;
  report.residual_histories.resize(1);

  const GaussianPsf psf =
      opts.psf_radius > 0 ? gaussian_psf(sigma, opts.psf_radius) : gaussian_psf(sigma);
  SolveControl ctl = control;
  ctl.record_history = control.record_history || opts.record_history;
  SolveOutcome sm = smooth(smoother, make_operator_action(psf), g, g, ctl);

  LevelStats ls;
  ls.level = 1;
  ls.dims = g.dims();
  ls.iterations = sm.iters_done;
  ls.rel_residual = sm.final_rel_residual;
  ls.operator_applies = sm.operator_applies;
  ls.seconds = seconds_since(t_start);
  ls.breakdown = sm.breakdown;
  report.level_stats.push_back(std::move(ls));
  report.residual_histories[0] = std::move(sm.residual_history);

  report.restored = std::move(sm.solution);
  report.wall_seconds = seconds_since(t_start);
  return report;
}

}  // namespace ctmg
