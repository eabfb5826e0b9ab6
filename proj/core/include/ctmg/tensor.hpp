//
// Copyright (c) 2026 The ctmg authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CTMG_TENSOR_HPP
#define CTMG_TENSOR_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctmg/error.hpp"

namespace ctmg {

using index_t = std::int64_t;

/// Shape of an order-3 tensor: n1 rows, n2 columns, n3 channels.
struct Dims3 {
  int n1 = 0;
  int n2 = 0;
  int n3 = 0;

  friend bool operator==(const Dims3&, const Dims3&) = default;

  index_t count() const { return index_t{1} * n1 * n2 * n3; }
  bool positive() const { return n1 > 0 && n2 > 0 && n3 > 0; }
};

std::string to_string(const Dims3& d);

/// Dense order-3 tensor of doubles in row-major order with the channel
/// index fastest: (i1, i2, i3) maps to flat index (i1*n2 + i2)*n3 + i3.
/// Indices are 0-based everywhere in code.
class ImageTensor {
 public:
  ImageTensor() = default;
  explicit ImageTensor(Dims3 dims);
  ImageTensor(Dims3 dims, std::vector<double> values);

  static ImageTensor constant(Dims3 dims, double value);

  const Dims3& dims() const { return dims_; }
  index_t size() const { return static_cast<index_t>(values_.size()); }

  index_t flat(int i1, int i2, int i3) const {
    return (static_cast<index_t>(i1) * dims_.n2 + i2) * dims_.n3 + i3;
  }

  double operator()(int i1, int i2, int i3) const { return values_[flat(i1, i2, i3)]; }
  double& operator()(int i1, int i2, int i3) { return values_[flat(i1, i2, i3)]; }

  // spans must not outlive the tensor; forbid taking one from a temporary
  std::span<const double> values() const& { return values_; }
  std::span<double> values() & { return values_; }
  std::span<const double> values() const&& = delete;
  std::span<double> values() && = delete;

 private:
  Dims3 dims_{};
  std::vector<double> values_;
};

/// Dense order-6 operator mapping order-3 tensors to order-3 tensors of the
/// same shape (square in the Einstein sense). Entry (i1,i2,i3,j1,j2,j3) is
/// stored row-major with j3 fastest, so the flat layout coincides with the
/// row-major layout of the unfolded matrix.
class Operator6 {
 public:
  Operator6() = default;
  explicit Operator6(Dims3 dims);
  Operator6(Dims3 dims, std::vector<double> values);

  static Operator6 identity(Dims3 dims);

  const Dims3& dims() const { return dims_; }
  index_t rows() const { return dims_.count(); }

  index_t flat(int i1, int i2, int i3, int j1, int j2, int j3) const {
    const index_t row = (static_cast<index_t>(i1) * dims_.n2 + i2) * dims_.n3 + i3;
    const index_t col = (static_cast<index_t>(j1) * dims_.n2 + j2) * dims_.n3 + j3;
    return row * rows() + col;
  }

  double operator()(int i1, int i2, int i3, int j1, int j2, int j3) const {
    return values_[flat(i1, i2, i3, j1, j2, j3)];
  }
  double& operator()(int i1, int i2, int i3, int j1, int j2, int j3) {
    return values_[flat(i1, i2, i3, j1, j2, j3)];
  }

  std::span<const double> values() const& { return values_; }
  std::span<double> values() & { return values_; }
  std::span<const double> values() const&& = delete;
  std::span<double> values() && = delete;

 private:
  Dims3 dims_{};
  std::vector<double> values_;
};

/// Einstein product T *_3 X: contracts the trailing three indices of T
/// against all indices of X. Dimensions must match exactly.
ImageTensor einstein_product(const Operator6& t, const ImageTensor& x);

/// Sum of elementwise products. Dimensions must match.
double inner(const ImageTensor& a, const ImageTensor& b);

/// Frobenius norm, sqrt(inner(a, a)).
double fro_norm(const ImageTensor& a);

/// Largest entry (not largest magnitude).
double max_value(const ImageTensor& a);

bool all_finite(const ImageTensor& a);

/// y += alpha * x
void add_scaled(ImageTensor& y, double alpha, const ImageTensor& x);

/// y = x + beta * y
void scale_then_add(ImageTensor& y, double beta, const ImageTensor& x);

/// a - b
ImageTensor subtract(const ImageTensor& a, const ImageTensor& b);

/// Plain row-major dense matrix used by the unfolding isomorphism and the
/// coarsest-level direct solver.
struct DenseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;

  DenseMatrix() = default;
  DenseMatrix(int r, int c) : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, 0.0) {}

  double operator()(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
  double& operator()(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
};

/// Matricization of an order-6 operator under the multi-index flattening
/// (i1,i2,i3) -> (i1*n2 + i2)*n3 + i3. Satisfies
/// unfold_tensor(einstein_product(T, X)) = unfold_operator(T) * unfold_tensor(X).
DenseMatrix unfold_operator(const Operator6& t);
std::vector<double> unfold_tensor(const ImageTensor& x);
ImageTensor refold(std::span<const double> v, Dims3 dims);

inline constexpr index_t kDefaultDirectSolveCap = 4096;

struct DirectSolveOptions {
  index_t cap = kDefaultDirectSolveCap;  // largest unfolded dimension accepted
  double residual_tol = 1e-10;           // post-solve verification threshold
};

/// Solves T *_3 F = G by unfolding to a dense system and running a
/// partially pivoted LU factorization. Refuses systems above the cap and
/// throws numeric_error with a condition diagnostic when the factorization
/// meets a negligible pivot or the verified residual exceeds the tolerance.
ImageTensor direct_solve(const Operator6& t, const ImageTensor& g,
                         const DirectSolveOptions& opts = {});

}  // namespace ctmg

#endif  // CTMG_TENSOR_HPP
