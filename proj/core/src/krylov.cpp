//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ctmg/krylov.hpp"

#include <cmath>
#include <limits>

namespace ctmg {

std::string_view to_string(SmootherKind kind) {
  switch (kind) {
    case SmootherKind::bicg: return "bicg";
    case SmootherKind::cgs: return "cgs";
    case SmootherKind::cr: return "cr";
  }
  return "?";
}

std::optional<SmootherKind> parse_smoother(std::string_view name) {
  if (name == "bicg") return SmootherKind::bicg;
  if (name == "cgs") return SmootherKind::cgs;
  if (name == "cr") return SmootherKind::cr;
  return std::nullopt;
}

OperatorAction make_operator_action(const GaussianPsf& psf) {
  return [psf](const ImageTensor& x) { return apply_blur(psf, x); };
}

namespace {

constexpr double kBreakdownRel = 1e-14;
constexpr double kResidualFloor = 1e-15;  // machine-level stop for fixed-count runs
constexpr int kRecomputeEvery = 25;

// A recurrence denominator <a, b> has genuinely broken down when it is
// negligible against ||a|| ||b||; measuring the angle keeps the test
// meaningful at every residual scale.
bool negligible(double value, const ImageTensor& a, const ImageTensor& b) {
  const double scale = fro_norm(a) * fro_norm(b);
  return !std::isfinite(value) || std::abs(value) <= kBreakdownRel * scale ||
         scale < std::numeric_limits<double>::min();
}

struct Run {
  const OperatorAction& action;
  const ImageTensor& g;
  double denom;  // ||g|| or 1 when g = 0
  int applies = 0;

  ImageTensor apply(const ImageTensor& v) {
    ++applies;
    return action(v);
  }
  ImageTensor residual_of(const ImageTensor& f) { return subtract(g, apply(f)); }
  double rel(const ImageTensor& r) const { return fro_norm(r) / denom; }
};

struct Best {
  ImageTensor f;
  double res = std::numeric_limits<double>::infinity();

  void consider(const ImageTensor& cand, double r) {
    if (r < res) {
      res = r;
      f = cand;
    }
  }
};

}  // namespace

SolveOutcome smooth(SmootherKind kind, const OperatorAction& apply_t, const ImageTensor& g,
                    const ImageTensor& f0, const SolveControl& control) {
  if (!(g.dims() == f0.dims()))
    throw dimension_error("smooth: data dims " + to_string(g.dims()) +
                          " do not match initial guess dims " + to_string(f0.dims()));
  if (control.max_iters < 0) throw parameter_error("smooth: max_iters must be >= 0");
  if (control.rel_tol < 0.0) throw parameter_error("smooth: rel_tol must be >= 0");
  if (control.rel_tol == 0.0 && control.max_iters == std::numeric_limits<int>::max())
    throw parameter_error("smooth: neither max_iters nor rel_tol is binding");

  const double gn = fro_norm(g);
  Run run{apply_t, g, gn > 0.0 ? gn : 1.0};

  SolveOutcome out;
  out.solution = f0;
  ImageTensor r = run.residual_of(out.solution);
  double res = run.rel(r);
  if (control.record_history) out.residual_history.push_back(res);
  Best best;
  best.consider(out.solution, res);

  const double stop_tol = std::max(control.rel_tol, kResidualFloor);

  auto finish = [&](std::optional<std::string> why) {
    if (why) {
      out.breakdown = std::move(why);
      out.solution = best.f;
    } else if (kind == SmootherKind::cr && res > best.res) {
      // CR minimizes the residual norm on symmetric systems; never hand back
      // an iterate worse than one already seen.
      out.solution = best.f;
    }
    out.final_rel_residual = run.rel(run.residual_of(out.solution));
    out.operator_applies = run.applies;
    return out;
  };

  if (res <= stop_tol || control.max_iters == 0) return finish(std::nullopt);

  switch (kind) {
    case SmootherKind::cr: {
      ImageTensor ar = run.apply(r);
      ImageTensor p = r;
      ImageTensor ap = ar;
      double rho = inner(r, ar);
      for (int k = 1; k <= control.max_iters; ++k) {
        const double pap = inner(ap, ap);
        if (!std::isfinite(pap) || pap < std::numeric_limits<double>::min())
          return finish("cr: <T*P, T*P> vanished");
        const double alpha = rho / pap;
        add_scaled(out.solution, alpha, p);
        add_scaled(r, -alpha, ap);
        out.iters_done = k;
        if (k % kRecomputeEvery == 0) r = run.residual_of(out.solution);
        ar = run.apply(r);
        const double rho_next = inner(r, ar);
        res = run.rel(r);
        if (!std::isfinite(res)) return finish("cr: non-finite residual");
        if (control.record_history) out.residual_history.push_back(res);
        best.consider(out.solution, res);
        if (res <= stop_tol) break;
        if (negligible(rho, r, ar)) return finish("cr: <R, T*R> vanished");
        const double beta = rho_next / rho;
        scale_then_add(p, beta, r);
        scale_then_add(ap, beta, ar);
        rho = rho_next;
      }
      return finish(std::nullopt);
    }

    case SmootherKind::bicg: {
      ImageTensor rt = r;  // shadow residual, seeded with R0
      ImageTensor p = r;
      ImageTensor pt = rt;
      double rho = inner(rt, r);
      for (int k = 1; k <= control.max_iters; ++k) {
        if (negligible(rho, rt, r)) return finish("bicg: <Rt, R> vanished");
        ImageTensor q = run.apply(p);
        ImageTensor qt = run.apply(pt);  // transpose action; symmetric operator
        const double den = inner(pt, q);
        if (negligible(den, pt, q)) return finish("bicg: <Pt, T*P> vanished");
        const double alpha = rho / den;
        add_scaled(out.solution, alpha, p);
        add_scaled(r, -alpha, q);
        add_scaled(rt, -alpha, qt);
        out.iters_done = k;
        if (k % kRecomputeEvery == 0) r = run.residual_of(out.solution);
        res = run.rel(r);
        if (!std::isfinite(res)) return finish("bicg: non-finite residual");
        if (control.record_history) out.residual_history.push_back(res);
        best.consider(out.solution, res);
        if (res <= stop_tol) break;
        const double rho_next = inner(rt, r);
        const double beta = rho_next / rho;
        scale_then_add(p, beta, r);
        scale_then_add(pt, beta, rt);
        rho = rho_next;
      }
      return finish(std::nullopt);
    }

    case SmootherKind::cgs: {
      const ImageTensor rt = r;  // fixed shadow residual
      ImageTensor p = r;
      ImageTensor u = r;
      double rho = inner(rt, r);
      for (int k = 1; k <= control.max_iters; ++k) {
        if (negligible(rho, rt, r)) return finish("cgs: <Rt, R> vanished");
        ImageTensor v = run.apply(p);
        const double den = inner(rt, v);
        if (negligible(den, rt, v)) return finish("cgs: <Rt, T*P> vanished");
        const double alpha = rho / den;
        ImageTensor q = u;
        add_scaled(q, -alpha, v);
        ImageTensor uq = u;
        add_scaled(uq, 1.0, q);
        add_scaled(out.solution, alpha, uq);
        ImageTensor w = run.apply(uq);
        add_scaled(r, -alpha, w);
        out.iters_done = k;
        if (k % kRecomputeEvery == 0) r = run.residual_of(out.solution);
        res = run.rel(r);
        if (!std::isfinite(res)) return finish("cgs: non-finite residual");
        if (control.record_history) out.residual_history.push_back(res);
        best.consider(out.solution, res);
        if (res <= stop_tol) break;
        const double rho_next = inner(rt, r);
        const double beta = rho_next / rho;
        u = r;
        add_scaled(u, beta, q);
        // P = U + beta (Q + beta P)
        scale_then_add(p, beta, q);
        scale_then_add(p, beta, u);
        rho = rho_next;
      }
      return finish(std::nullopt);
    }
  }
  throw parameter_error("smooth: unknown smoother kind");
}

}  // namespace ctmg
