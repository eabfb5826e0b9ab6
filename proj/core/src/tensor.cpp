//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "ctmg/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ctmg {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw dimension_error(what);
}

}  // namespace

std::string to_string(const Dims3& d) {
  std::ostringstream os;
  os << "(" << d.n1 << ", " << d.n2 << ", " << d.n3 << ")";
  return os.str();
}

ImageTensor::ImageTensor(Dims3 dims) : dims_(dims) {
  if (!dims.positive()) throw dimension_error("ImageTensor: dims must be positive, got " + to_string(dims));
  values_.assign(static_cast<std::size_t>(dims.count()), 0.0);
}

ImageTensor::ImageTensor(Dims3 dims, std::vector<double> values) : dims_(dims), values_(std::move(values)) {
  if (!dims.positive()) throw dimension_error("ImageTensor: dims must be positive, got " + to_string(dims));
  if (static_cast<index_t>(values_.size()) != dims.count())
    throw dimension_error("ImageTensor: value count " + std::to_string(values_.size()) +
                          " does not match dims " + to_string(dims));
}

ImageTensor ImageTensor::constant(Dims3 dims, double value) {
  ImageTensor t(dims);
  std::fill(t.values_.begin(), t.values_.end(), value);
  return t;
}

Operator6::Operator6(Dims3 dims) : dims_(dims) {
  if (!dims.positive()) throw dimension_error("Operator6: dims must be positive, got " + to_string(dims));
  values_.assign(static_cast<std::size_t>(dims.count() * dims.count()), 0.0);
}

Operator6::Operator6(Dims3 dims, std::vector<double> values) : dims_(dims), values_(std::move(values)) {
  if (!dims.positive()) throw dimension_error("Operator6: dims must be positive, got " + to_string(dims));
  if (static_cast<index_t>(values_.size()) != dims.count() * dims.count())
    throw dimension_error("Operator6: value count does not match dims " + to_string(dims));
}

Operator6 Operator6::identity(Dims3 dims) {
  Operator6 t(dims);
  const index_t n = dims.count();
  for (index_t i = 0; i < n; ++i) t.values_[static_cast<std::size_t>(i * n + i)] = 1.0;
  return t;
}

ImageTensor einstein_product(const Operator6& t, const ImageTensor& x) {
  require(t.dims() == x.dims(), "einstein_product: operator dims " + to_string(t.dims()) +
                                    " do not match tensor dims " + to_string(x.dims()));
  const index_t n = t.rows();
  ImageTensor y(t.dims());
  const double* tv = t.values().data();
  const double* xv = x.values().data();
  double* yv = y.values().data();
  for (index_t r = 0; r < n; ++r) {
    const double* row = tv + r * n;
    double acc = 0.0;
    for (index_t c = 0; c < n; ++c) acc += row[c] * xv[c];
    yv[r] = acc;
  }
  return y;
}

double inner(const ImageTensor& a, const ImageTensor& b) {
  require(a.dims() == b.dims(), "inner: dims " + to_string(a.dims()) + " vs " + to_string(b.dims()));
  double acc = 0.0;
  const double* av = a.values().data();
  const double* bv = b.values().data();
  const index_t n = a.size();
  for (index_t i = 0; i < n; ++i) acc += av[i] * bv[i];
  return acc;
}

double fro_norm(const ImageTensor& a) { return std::sqrt(inner(a, a)); }

double max_value(const ImageTensor& a) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : a.values()) m = std::max(m, v);
  return m;
}

bool all_finite(const ImageTensor& a) {
  for (double v : a.values())
    if (!std::isfinite(v)) return false;
  return true;
}

void add_scaled(ImageTensor& y, double alpha, const ImageTensor& x) {
  require(y.dims() == x.dims(), "add_scaled: dims mismatch");
  double* yv = y.values().data();
  const double* xv = x.values().data();
  const index_t n = y.size();
  for (index_t i = 0; i < n; ++i) yv[i] += alpha * xv[i];
}

void scale_then_add(ImageTensor& y, double beta, const ImageTensor& x) {
  require(y.dims() == x.dims(), "scale_then_add: dims mismatch");
  double* yv = y.values().data();
  const double* xv = x.values().data();
  const index_t n = y.size();
  for (index_t i = 0; i < n; ++i) yv[i] = xv[i] + beta * yv[i];
}

ImageTensor subtract(const ImageTensor& a, const ImageTensor& b) {
  require(a.dims() == b.dims(), "subtract: dims mismatch");
  ImageTensor out(a.dims());
  double* ov = out.values().data();
  const double* av = a.values().data();
  const double* bv = b.values().data();
  const index_t n = a.size();
  for (index_t i = 0; i < n; ++i) ov[i] = av[i] - bv[i];
  return out;
}

DenseMatrix unfold_operator(const Operator6& t) {
  const index_t n = t.rows();
  DenseMatrix m(static_cast<int>(n), static_cast<int>(n));
  std::copy(t.values().begin(), t.values().end(), m.values.begin());
  return m;
}

std::vector<double> unfold_tensor(const ImageTensor& x) {
  return std::vector<double>(x.values().begin(), x.values().end());
}

ImageTensor refold(std::span<const double> v, Dims3 dims) {
  if (static_cast<index_t>(v.size()) != dims.count())
    throw dimension_error("refold: vector length " + std::to_string(v.size()) +
                          " does not match dims " + to_string(dims));
  return ImageTensor(dims, std::vector<double>(v.begin(), v.end()));
}

namespace {

// Partially pivoted LU; forward-eliminates the right-hand side in place and
// back-substitutes. Throws when a pivot is negligible relative to the
// largest matrix entry.
void lu_solve_in_place(DenseMatrix& a, std::vector<double>& x) {
  const int n = a.rows;
  double max_entry = 0.0;
  for (double v : a.values) max_entry = std::max(max_entry, std::abs(v));
  if (max_entry == 0.0) throw numeric_error("direct_solve: operator is identically zero");
  const double pivot_floor = max_entry * n * std::numeric_limits<double>::epsilon();

  double min_pivot = std::numeric_limits<double>::infinity();
  double max_pivot = 0.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(a(k, k));
    for (int r = k + 1; r < n; ++r) {
      const double v = std::abs(a(r, k));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best <= pivot_floor) {
      std::ostringstream os;
      os << "direct_solve: singular system at elimination step " << k << "/" << n
         << " (|pivot| = " << best << ", largest entry = " << max_entry
         << ", estimated condition >= " << (max_pivot > 0 ? max_pivot / std::max(best, pivot_floor) : 0.0)
         << ")";
      throw numeric_error(os.str());
    }
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      std::swap(x[static_cast<std::size_t>(k)], x[static_cast<std::size_t>(piv)]);
    }
    min_pivot = std::min(min_pivot, best);
    max_pivot = std::max(max_pivot, best);
    const double inv = 1.0 / a(k, k);
    for (int r = k + 1; r < n; ++r) {
      const double f = a(r, k) * inv;
      if (f == 0.0) continue;
      for (int c = k + 1; c < n; ++c) a(r, c) -= f * a(k, c);
      x[static_cast<std::size_t>(r)] -= f * x[static_cast<std::size_t>(k)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = x[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c) s -= a(r, c) * x[static_cast<std::size_t>(c)];
    x[static_cast<std::size_t>(r)] = s / a(r, r);
  }
}

}  // namespace

ImageTensor direct_solve(const Operator6& t, const ImageTensor& g, const DirectSolveOptions& opts) {
  require(t.dims() == g.dims(), "direct_solve: operator dims " + to_string(t.dims()) +
                                    " do not match data dims " + to_string(g.dims()));
  const index_t n = t.rows();
  if (n > opts.cap)
    throw parameter_error("direct_solve: unfolded dimension " + std::to_string(n) +
                          " exceeds cap " + std::to_string(opts.cap) +
                          " (misconfigured hierarchy?)");

  DenseMatrix a = unfold_operator(t);
  std::vector<double> rhs = unfold_tensor(g);
  lu_solve_in_place(a, rhs);
  ImageTensor f = refold(rhs, g.dims());

  const double gn = fro_norm(g);
  const double resid = fro_norm(subtract(einstein_product(t, f), g)) / (gn > 0 ? gn : 1.0);
  if (!(resid <= opts.residual_tol) || !all_finite(f)) {
    std::ostringstream os;
    os << "direct_solve: verified relative residual " << resid << " exceeds " << opts.residual_tol
       << " (ill-conditioned system)";
    throw numeric_error(os.str());
  }
  return f;
}

}  // namespace ctmg
